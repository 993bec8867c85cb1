#pragma once

#include <array>
#include <string>
#include <vector>

#include "qeuclid/scalar.hpp"

namespace qeuclid {

// Index values for {-, 0, +}.
inline constexpr int kMinus = 0;
inline constexpr int kZero = 1;
inline constexpr int kPlus = 2;

inline constexpr int pair_index(int i, int j) { return 3 * i + j; }
inline constexpr int index_degree(int i) { return i - 1; }
std::string index_name(int i);

class Matrix {
public:
    Matrix() = default;
    explicit Matrix(int n) : n_(n), a_(static_cast<std::size_t>(n * n)) {}
    static Matrix identity(int n);

    int size() const { return n_; }
    Scalar& operator()(int r, int c) { return a_[static_cast<std::size_t>(r * n_ + c)]; }
    const Scalar& operator()(int r, int c) const { return a_[static_cast<std::size_t>(r * n_ + c)]; }

    Matrix operator*(const Matrix& b) const;
    Matrix operator+(const Matrix& b) const;
    Matrix operator-(const Matrix& b) const;
    Matrix scaled(const Scalar& k) const;
    bool is_zero() const;
    friend bool operator==(const Matrix& a, const Matrix& b) = default;

    // Gauss-Jordan over Q(s); throws std::domain_error if singular.
    Matrix inverse() const;
    int rank() const;

private:
    int n_ = 0;
    std::vector<Scalar> a_;
};

Matrix kron(const Matrix& a, const Matrix& b);

// Entry M^{ij}_{kl} of a 9x9 matrix acting on index pairs.
inline const Scalar& entry(const Matrix& m, int i, int j, int k, int l) {
    return m(pair_index(i, j), pair_index(k, l));
}

struct IsoMetric {
    Matrix lower;  // g_ij
    Matrix upper;  // g^ij
    static IsoMetric standard();
    Scalar trace_normalizer() const;  // g^{mn} g_{mn}
};

// One explicit commutation relation x^i xi^j = sum coeff xi^k x^l.
struct XXiRelation {
    int i;
    int j;
    struct Term {
        Scalar coeff;
        int k;
        int l;
    };
    std::vector<Term> rhs;
};

const std::vector<XXiRelation>& explicit_x_xi_relations();

// R-hat rebuilt from the explicit relations, with R^{ij}_{kl} = coeff / q.
// Throws std::logic_error if the data assign an entry twice inconsistently
// or violate the degree selection rule.
Matrix build_rhat();

struct ProjectorTrio {
    Matrix ps;
    Matrix pa;
    Matrix pt;
};

ProjectorTrio build_projectors(const Matrix& rhat, const IsoMetric& g);
// q^{-1} P_s - q P_a + q^2 P_t
Matrix rhat_inverse_from_projectors(const ProjectorTrio& p);

bool satisfies_braid(const Matrix& m);
bool satisfies_selection_rule(const Matrix& m);

// The four index placements of g R^{+-1} = R^{-+1} g; returns the
// names of the placements that fail.
std::vector<std::string> metric_compatibility_failures(const Matrix& rhat, const Matrix& rhat_inv,
                                                       const IsoMetric& g);

// Row space of the explicit relations equals row space of P_a on x x.
bool algebra_relations_match_projector(const ProjectorTrio& p);

// The nine monomials x^k x^l are identified with pair indices; rows are relation vectors.
Matrix row_echelon(Matrix m);

}  // namespace qeuclid
