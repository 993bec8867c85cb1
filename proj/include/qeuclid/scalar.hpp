#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace qeuclid {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Laurent polynomial in s with machine-size integer coefficients.
// c_[k] multiplies s^(low_ + k); an empty vector is the zero polynomial.
class Poly {
public:
    Poly() = default;
    static Poly constant(std::int64_t c);
    static Poly monomial(std::int64_t c, int power);
    static Poly from_coeffs(int low, std::vector<std::int64_t> coeffs);

    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return low_ == 0 && c_.size() == 1 && c_[0] == 1; }
    int low() const { return low_; }
    int high() const { return low_ + static_cast<int>(c_.size()) - 1; }
    int term_count() const;
    std::int64_t coeff(int power) const;
    std::int64_t leading() const { return c_.back(); }
    const std::vector<std::int64_t>& coeffs() const { return c_; }

    std::int64_t content() const;
    Poly shifted(int k) const;
    Poly scaled(std::int64_t k) const;
    Poly divided_by_integer(std::int64_t k) const;

    Poly operator-() const;
    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend bool operator==(const Poly& a, const Poly& b) = default;

    std::size_t hash() const;

private:
    int low_ = 0;
    std::vector<std::int64_t> c_;
    void trim();
};

// Greatest common divisor in Z[s] of the polynomial parts (powers of s stripped),
// normalized to a positive leading coefficient.
Poly poly_gcd(const Poly& a, const Poly& b);
// Exact quotient a/b; throws std::domain_error when b does not divide a.
Poly exact_div(const Poly& a, const Poly& b);

class PoleError : public std::domain_error {
public:
    explicit PoleError(int order);
    int order() const { return order_; }

private:
    int order_;
};

// Element of Q(s), s^2 = q. Stored as num/den with den a polynomial whose
// constant term is nonzero, leading coefficient positive, gcd(num, den) = 1
// and joint integer content 1; num may carry negative powers of s.
class Scalar {
public:
    Scalar() : num_(), den_(Poly::constant(1)) {}
    Scalar(std::int64_t c) : num_(Poly::constant(c)), den_(Poly::constant(1)) {}
    static Scalar fraction(std::int64_t n, std::int64_t d);
    static Scalar from_parts(Poly num, Poly den);
    static Scalar s_pow(int n);
    static Scalar q_pow(int n) { return s_pow(2 * n); }
    static Scalar sqrtq() { return s_pow(1); }
    static Scalar q() { return s_pow(2); }
    static Scalar h();

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_polynomial() const { return den_.is_one(); }
    bool is_monomial() const { return den_.is_one() && num_.term_count() == 1; }
    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    Scalar operator-() const;
    Scalar inverse() const;
    Scalar pow(int n) const;
    Scalar& operator+=(const Scalar& b);
    Scalar& operator-=(const Scalar& b);
    Scalar& operator*=(const Scalar& b);
    Scalar& operator/=(const Scalar& b);
    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }
    friend bool operator==(const Scalar& a, const Scalar& b) = default;

    std::size_t hash() const { return num_.hash() * 31u + den_.hash(); }
    std::string to_string() const;

private:
    Poly num_;
    Poly den_;
};

// Laurent expansion in t = s - 1. coeffs[k] multiplies t^(valuation + k) and the
// expansion is complete through t^order.
struct Series {
    int valuation = 0;
    int order = 0;
    std::vector<Rational> coeffs;

    int pole_order() const { return valuation < 0 ? -valuation : 0; }
    Rational coefficient(int power) const;
    std::string to_string() const;
};

Series expand_at_one(const Scalar& a, int order);
Series series_product(const Series& a, const Series& b, int order);
Rational eval_limit(const Scalar& a);

std::string rational_to_string(const Rational& r);

}  // namespace qeuclid

template <>
struct std::hash<qeuclid::Scalar> {
    std::size_t operator()(const qeuclid::Scalar& s) const noexcept { return s.hash(); }
};
