#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qeuclid/omega.hpp"

namespace qeuclid {

enum class SChoice { qR, qRinv };
enum class Calculus { unbarred, barred, enlarged };

struct Connection {
    SChoice sigma = SChoice::qR;
    Calculus calculus = Calculus::unbarred;
};

std::string to_string(SChoice s);
std::string to_string(Calculus c);

// q R or (q R)^-1.
Matrix s_matrix(const Algebra& alg, SChoice s);
// Flip on the six frame letters: S on theta theta, S-bar on bar theta bar theta,
// V = q R^-1 and V-bar = q^-1 R on the mixed blocks. S-bar is S^-1 in the enlarged
// calculus and S otherwise.
Matrix frame_flip_matrix(const Algebra& alg, const Connection& conn);

// 3x3 matrices of algebra elements, entry [3*row + col].
using ElementMatrix = std::array<Element, 9>;

Element substitute_alpha(const Element& a, const Scalar& alpha);
// Inverse of a single invertible monomial; throws std::domain_error otherwise.
Element invert_monomial(const Algebra& alg, const Element& m);
// Left inverse of a triangular matrix with invertible monomial diagonal.
ElementMatrix left_inverse_triangular(const Algebra& alg, const ElementMatrix& m);

class Geometry {
public:
    explicit Geometry(const Algebra& alg, std::optional<Scalar> alpha = std::nullopt);

    const Algebra& algebra() const { return *alg_; }
    const InvariantForms& forms() const { return forms_; }
    const std::optional<Scalar>& alpha() const { return alpha_; }
    // alpha^k, symbolic or concrete.
    Element alpha_power(int k) const;
    Element fix_alpha(const Element& a) const;

    // theta^-, theta^0, theta^+, bar theta^-, bar theta^0, bar theta^+.
    const std::array<Element, 6>& frame() const { return frame_; }
    // lambda_a followed by bar lambda_a.
    const std::array<Element, 6>& lambda() const { return lambda_; }
    // theta^a_i from Lam theta^a = theta^a_i xi^i, and bar theta^a_i from
    // Lam^-1 bar theta^a = bar theta^a_i bar xi^i; rows are frame indices.
    const ElementMatrix& theta_coefficients(bool barred) const { return barred ? tbar_ : t_; }
    // e^i_a = q^-1 Lam^-1 [lambda_a, x^i], stored with row a and column i.
    const ElementMatrix& vielbein() const { return e_; }
    // Closed-form e^i_a entries, rows i and columns a.
    ElementMatrix vielbein_display() const;

    // omega^i = sum_a A^i_a Theta^a and Theta^a = sum_k C^a_k omega^k, 6x6 entries [6*row + col].
    const std::array<Element, 36>& to_frame_matrix() const { return a_; }
    const std::array<Element, 36>& from_frame_matrix() const { return c_; }

    // Frame components xi_a of a 1-form.
    std::array<Element, 6> frame_components(const Element& one_form) const;
    Element from_frame_components(const std::array<Element, 6>& comps) const;
    // A tensor in the coordinate basis rewritten with respect to Theta^a (x) Theta^b, and back.
    TensorBi to_frame(const TensorBi& t) const;
    TensorBi from_frame(const TensorBi& f) const;

    // g(Theta^a (x) Theta^b) = g^{ab} on every block, pulled back to the coordinate letters.
    MetricTable metric() const;

    // e_a f = [lambda_a, f] for a function f; a in 0..5.
    Element frame_derivative(int a, const Element& f) const;

private:
    const Algebra* alg_;
    std::optional<Scalar> alpha_;
    InvariantForms forms_;
    std::array<Element, 6> frame_;
    std::array<Element, 6> lambda_;
    ElementMatrix t_;
    ElementMatrix tbar_;
    ElementMatrix e_;
    std::array<Element, 36> a_;
    std::array<Element, 36> c_;
    // Products A^i_a A^j_b, index [36*(6i+j) + 6a+b].
    std::vector<Element> aa_;
    // Coordinate expansion of Theta^a (x) Theta^b.
    std::array<TensorBi, 36> frame_basis_;
};

// The 81 coefficient equations R^{ab}_{cd} t^d_j t^c_i = t^b_l t^a_k R^{kl}_{ij} for the frame
// coefficients. Rows (b,a) and columns (i,j) ordered lexicographically make both sides products
// of lower-triangular matrices, so the equations above the diagonal hold trivially.
struct BasicRelations {
    int total = 0;
    int triangular = 0;   // equations above the diagonal, verified to vanish on both sides
    int checked = 0;      // the remaining equations, compared after normalization
    int failures = 0;
    bool lower_triangular = false;  // R^{kl}_{ij} = R^{lk}_{ij} and t^a_i are lower triangular
    std::vector<std::string> failing;
};
BasicRelations check_basic_relations(const Geometry& geo);

// M with theta^a bar theta^b = M^{ab}_{cd} bar theta^c theta^d, read off from the algebra;
// throws std::domain_error if a coefficient is not a constant.
Matrix mixed_frame_relation(const Geometry& geo);

// The right partial derivative in d f = xi^i (partial_i f), read off from the conjugate of bar d f^*.
Element partial(const Algebra& alg, const InvariantForms& forms, int i, const Element& f);

// Numeric flips on frame tensors; coefficients are functions and commute with the frame.
TensorBi apply_frame_matrix(const Matrix& m, const TensorBi& f);
TensorTri apply_frame_matrix12(const Matrix& m, const TensorTri& f);
TensorTri apply_frame_matrix23(const Matrix& m, const TensorTri& f);

class LinearConnection {
public:
    LinearConnection(const Geometry& geo, Connection conn);
    // Same, with the frame flip supplied directly.
    LinearConnection(const Geometry& geo, Connection conn, Matrix frame_flip);

    const Connection& connection() const { return conn_; }
    const Matrix& frame_matrix() const { return frame_m_; }
    const Sigma& sigma() const { return sigma_; }

    // Which derivatives the calculus provides.
    bool allows(Which w) const;
    // D xi = -theta (x) xi + sigma(xi (x) theta); throws std::invalid_argument
    // if xi or w does not belong to the calculus.
    TensorBi derivative(const Element& one_form, Which w = Which::d) const;
    // D(xi (x) eta) = D xi (x) eta + sigma_12(xi (x) D eta).
    TensorTri derivative2(const TensorBi& t, Which w = Which::d) const;

    // pi_12 D_2 D, with the last slot in the coordinate basis.
    TwoFormTensor curvature_direct(const Element& one_form, Which w = Which::d) const;
    // xi_a theta^2 (x) Theta^a + pi_12 sigma_12 sigma_23 sigma_12 (xi (x) theta (x) theta),
    // with the last slot in the frame basis.
    TwoFormTensor curvature_frame(const Element& one_form, Which w = Which::d) const;
    // Ric(xi) = -g_23 of the lifted curvature tensor, as frame components.
    std::array<Element, 6> ricci(const Element& one_form, Which w = Which::d) const;
    // d theta^a - pi D theta^a for the frame letter a (0..5).
    Element torsion(int frame_letter) const;

private:
    const Geometry* geo_;
    Connection conn_;
    Matrix frame_m_;
    Sigma sigma_;
    std::array<TensorBi, 6> d_letter_;
    std::array<TensorBi, 6> dbar_letter_;

    Which letter_calculus(int letter) const;
    void check_form(const Element& one_form, Which w) const;
    TensorBi derivative_unchecked(const Element& one_form, Which w) const;
    TensorTri frame_curvature_tensor(const Element& one_form, Which w) const;
};

// X^{acb}_d = S1^{ae}_{df} g^{fg} S2^{cb}_{eg}; returns kappa with X = kappa g^{ac} delta^b_d,
// or nothing if X is not of that form.
std::optional<Scalar> compatibility_factor(const Matrix& s1, const Matrix& s2, const IsoMetric& g);

}  // namespace qeuclid
