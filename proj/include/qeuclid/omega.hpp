#pragma once

#include <array>
#include <string>

#include "qeuclid/ncalg.hpp"

namespace qeuclid {

// Tensors over the six coordinate letters xi^-, xi^0, xi^+, bxi^-, bxi^0, bxi^+,
// with coefficient functions written on the left of the basis tensors.
struct TensorBi {
    std::array<Element, 36> c;

    Element& at(int i, int j) { return c[static_cast<std::size_t>(6 * i + j)]; }
    const Element& at(int i, int j) const { return c[static_cast<std::size_t>(6 * i + j)]; }
    static TensorBi basis(int i, int j);

    bool is_zero() const;
    TensorBi& operator+=(const TensorBi& b);
    TensorBi& operator-=(const TensorBi& b);
    friend TensorBi operator+(TensorBi a, const TensorBi& b) { return a += b; }
    friend TensorBi operator-(TensorBi a, const TensorBi& b) { return a -= b; }
    friend TensorBi operator*(const Scalar& k, const TensorBi& t);
    friend bool operator==(const TensorBi&, const TensorBi&) = default;
    std::string to_string() const;
};

struct TensorTri {
    std::array<Element, 216> c;

    Element& at(int i, int j, int k) { return c[static_cast<std::size_t>(36 * i + 6 * j + k)]; }
    const Element& at(int i, int j, int k) const { return c[static_cast<std::size_t>(36 * i + 6 * j + k)]; }

    bool is_zero() const;
    TensorTri& operator+=(const TensorTri& b);
    TensorTri& operator-=(const TensorTri& b);
    friend bool operator==(const TensorTri&, const TensorTri&) = default;
};

// A 2-form in the first two slots tensored with a basis letter in the last one;
// entry k is the 2-form multiplying (x) omega^k.
using TwoFormTensor = std::array<Element, 6>;
bool is_zero(const TwoFormTensor& t);

Element form_letter(int letter);
// Coefficients a_i of a 1-form a = sum a_i omega^i; throws if a has terms of another degree.
std::array<Element, 6> split_one_form(const Element& a);

enum class Which { d, dbar };

struct InvariantForms {
    Element eta;
    Element bar_eta;
    Element theta;
    Element bar_theta;

    static InvariantForms build(const Algebra& alg);
    const Element& dirac(Which w) const { return w == Which::d ? theta : bar_theta; }
};

// d a = -(theta a - (-1)^p a theta) on each homogeneous component of form degree p.
Element differential(const Algebra& alg, const InvariantForms& inv, const Element& a, Which w = Which::d);

// omega^i f = sum_m w_m omega^m for a function f.
std::array<Element, 6> move_past_letter(const Algebra& alg, int letter, const Element& f);

TensorBi tensor(const Algebra& alg, const Element& a, const Element& b);
TensorTri tensor(const Algebra& alg, const Element& a, const TensorBi& t);
TensorTri tensor(const Algebra& alg, const TensorBi& t, const Element& b);
TensorBi left_multiply(const Algebra& alg, const Element& f, const TensorBi& t);
TensorTri left_multiply(const Algebra& alg, const Element& f, const TensorTri& t);

Element pi_project(const Algebra& alg, const TensorBi& t);
TwoFormTensor pi12(const Algebra& alg, const TensorTri& t);

// A bilinear flip, stored through its values on the 36 basis tensors.
class Sigma {
public:
    Sigma() = default;
    // m is 36x36 with rows and columns indexed by 6*i + j.
    static Sigma from_matrix(const Matrix& m);
    static Sigma from_images(std::array<TensorBi, 36> images);

    const TensorBi& image(int i, int j) const { return images_[static_cast<std::size_t>(6 * i + j)]; }
    TensorBi apply(const Algebra& alg, const TensorBi& t) const;
    TensorTri apply12(const Algebra& alg, const TensorTri& t) const;
    TensorTri apply23(const Algebra& alg, const TensorTri& t) const;

private:
    std::array<TensorBi, 36> images_;
};

// Block matrix on the six letters: [xi xi] -> a, [bxi bxi] -> b,
// [xi bxi] -> c into (bxi, xi), [bxi xi] -> d into (xi, bxi). Each block is 9x9.
Matrix block_flip_matrix(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d);

// Values g(omega^i (x) omega^j); g(f omega^i (x) omega^j) = f g(omega^i (x) omega^j).
struct MetricTable {
    std::array<Element, 36> values;

    const Element& at(int i, int j) const { return values[static_cast<std::size_t>(6 * i + j)]; }
    Element eval(const Algebra& alg, const TensorBi& t) const;
    // 1-form from contracting the last two slots of a 3-tensor.
    Element contract23(const Algebra& alg, const TensorTri& t) const;
};

// g(xi^i (x) xi^j) = g^{ij} alpha^2 q^-1 r^2 Lam^2 and the barred analogue
// with q^3 r^2 Lam^-2; mixed entries are left empty.
MetricTable coordinate_metric(const Algebra& alg);

// (f omega^i (x) omega^j)^* = sigma((omega^j)^* (x) (omega^i)^* f^*).
TensorBi tensor_involution(const Algebra& alg, const Sigma& sigma, const TensorBi& t);

}  // namespace qeuclid
