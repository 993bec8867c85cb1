#pragma once

#include <array>
#include <compare>
#include <map>
#include <string>

#include "qeuclid/geom.hpp"

namespace qeuclid {

// alpha^a r^k (x0)^m (x-)^e (x+)^f times an ordered product of dx-, dx0, dx+ (bit mask).
struct ClassicalMonomial {
    int alpha = 0;
    int rad = 0;
    int x0 = 0;
    int xm = 0;
    int xp = 0;
    int dx = 0;

    std::string to_string() const;
    auto operator<=>(const ClassicalMonomial&) const = default;
};

class ClassicalExpr {
public:
    using Terms = std::map<ClassicalMonomial, Rational>;

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add_term(const ClassicalMonomial& m, const Rational& c);
    Rational coefficient(const ClassicalMonomial& m) const;

    ClassicalExpr& operator+=(const ClassicalExpr& b);
    ClassicalExpr& operator-=(const ClassicalExpr& b);
    friend ClassicalExpr operator+(ClassicalExpr a, const ClassicalExpr& b) { return a += b; }
    friend ClassicalExpr operator-(ClassicalExpr a, const ClassicalExpr& b) { return a -= b; }
    friend bool operator==(const ClassicalExpr&, const ClassicalExpr&) = default;
    std::string to_string() const;

private:
    Terms terms_;
};

// Lam -> 1, xi and bar xi -> dx, coefficients expanded in t = s - 1 and summed per classical monomial.
std::map<ClassicalMonomial, Series> classical_series(const Element& a, int order);
std::string series_to_string(const std::map<ClassicalMonomial, Series>& s);
// Order-zero part; throws PoleError if a merged coefficient diverges at q = 1.
ClassicalExpr classical_limit(const Element& a);

// q -> 1 values of g(xi^i (x) xi^j), entry [3i + j].
std::array<ClassicalExpr, 9> line_element_limit(const Geometry& geo);

// (a + b sqrt2) + i (c + d sqrt2).
struct QuadComplex {
    Rational a, b, c, d;

    static QuadComplex real(const Rational& x) { return {x, 0, 0, 0}; }
    static QuadComplex imag(const Rational& x) { return {0, 0, x, 0}; }
    static QuadComplex inv_sqrt2() { return {0, Rational(1, 2), 0, 0}; }
    bool is_zero() const { return a == 0 && b == 0 && c == 0 && d == 0; }
    QuadComplex conj() const { return {a, b, -c, -d}; }
    QuadComplex& operator+=(const QuadComplex& o);
    QuadComplex& operator-=(const QuadComplex& o);
    friend QuadComplex operator*(const QuadComplex& x, const QuadComplex& y);
    friend bool operator==(const QuadComplex&, const QuadComplex&) = default;
    std::string to_string() const;
};

// alpha^a r^k y^m x^e z^f times an ordered product of dx, dy, dz (bit mask).
struct RealMonomial {
    int alpha = 0;
    int rad = 0;
    int y = 0;
    int x = 0;
    int z = 0;
    int d = 0;

    std::string to_string() const;
    auto operator<=>(const RealMonomial&) const = default;
};

class RealExpr {
public:
    using Terms = std::map<RealMonomial, QuadComplex>;

    static RealExpr constant(const QuadComplex& c);
    static RealExpr variable(char name, int power = 1);  // 'x', 'y', 'z', 'r' or 'a' for alpha
    static RealExpr differential(char name);              // dx, dy, dz, or dr = (x dx + y dy + z dz)/r

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add_term(const RealMonomial& m, const QuadComplex& c);

    RealExpr& operator+=(const RealExpr& b);
    RealExpr& operator-=(const RealExpr& b);
    friend RealExpr operator+(RealExpr a, const RealExpr& b) { return a += b; }
    friend RealExpr operator-(RealExpr a, const RealExpr& b) { return a -= b; }
    friend RealExpr operator*(const RealExpr& a, const RealExpr& b);
    friend RealExpr operator*(const QuadComplex& k, const RealExpr& a);
    friend bool operator==(const RealExpr&, const RealExpr&) = default;
    RealExpr conj() const;
    // Nonnegative powers of r reduced with r^2 = x^2 + y^2 + z^2 after clearing r from the denominator.
    RealExpr reduced() const;
    std::string to_string() const;

private:
    Terms terms_;
};

bool equivalent(const RealExpr& a, const RealExpr& b);

// x- = (x - i z)/sqrt2, x0 = y, x+ = (x + i z)/sqrt2, and the same for the differentials.
RealExpr to_real(const ClassicalExpr& e);

// theta^1 = (theta^- + theta^+)/sqrt2, theta^2 = theta^0, theta^3 = i (theta^- - theta^+)/sqrt2 at q = 1.
std::array<RealExpr, 3> real_coordinate_frame(const Geometry& geo);
// The closed forms (alpha y r)^-1 (r dx - x dr + i z dr), (alpha y r)^-1 (r dr - i x dz + i z dx),
// (alpha y r)^-1 (r dz - i x dr - z dr).
std::array<RealExpr, 3> reference_real_frame();

}  // namespace qeuclid
