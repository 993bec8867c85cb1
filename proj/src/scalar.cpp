#include "qeuclid/scalar.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

namespace qeuclid {

namespace {

std::int64_t add_checked(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("scalar coefficient overflow");
    return r;
}

std::int64_t mul_checked(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("scalar coefficient overflow");
    return r;
}

std::int64_t abs_gcd(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

// Plain polynomial helpers on coefficient vectors, index = power of s.
using Vec = std::vector<std::int64_t>;

void trim_top(Vec& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}

std::int64_t vec_content(const Vec& v) {
    std::int64_t g = 0;
    for (auto c : v) g = abs_gcd(g, c);
    return g;
}

void make_primitive(Vec& v) {
    std::int64_t g = vec_content(v);
    if (g > 1)
        for (auto& c : v) c /= g;
    if (!v.empty() && v.back() < 0)
        for (auto& c : v) c = -c;
}

// a <- a mod b up to a nonzero integer factor; b is primitive and nonzero.
void pseudo_reduce(Vec& a, const Vec& b) {
    const std::size_t db = b.size() - 1;
    while (!a.empty() && a.size() - 1 >= db) {
        const std::int64_t la = a.back();
        const std::int64_t lb = b.back();
        const std::int64_t g = abs_gcd(la, lb);
        const std::int64_t fa = lb / g;
        const std::int64_t fb = la / g;
        const std::size_t shift = a.size() - 1 - db;
        for (auto& c : a) c = mul_checked(c, fa);
        for (std::size_t i = 0; i < b.size(); ++i)
            a[i + shift] = add_checked(a[i + shift], -mul_checked(fb, b[i]));
        trim_top(a);
        make_primitive(a);
    }
}

using BigVec = std::vector<BigInt>;

void big_primitive(BigVec& v) {
    BigInt g = 0;
    for (const auto& c : v) g = boost::multiprecision::gcd(g, c);
    if (g > 1)
        for (auto& c : v) c /= g;
    if (!v.empty() && v.back() < 0)
        for (auto& c : v) c = -c;
}

Vec big_primitive_gcd(const Vec& a, const Vec& b) {
    BigVec x(a.begin(), a.end());
    BigVec y(b.begin(), b.end());
    if (x.size() < y.size()) std::swap(x, y);
    while (!y.empty()) {
        if (y.size() == 1) return {1};
        const std::size_t db = y.size() - 1;
        while (!x.empty() && x.size() - 1 >= db) {
            const BigInt g = boost::multiprecision::gcd(x.back(), y.back());
            const BigInt fa = y.back() / g;
            const BigInt fb = x.back() / g;
            const std::size_t shift = x.size() - 1 - db;
            for (auto& c : x) c *= fa;
            for (std::size_t i = 0; i < y.size(); ++i) x[i + shift] -= fb * y[i];
            while (!x.empty() && x.back() == 0) x.pop_back();
            big_primitive(x);
        }
        std::swap(x, y);
    }
    big_primitive(x);
    Vec out;
    for (const auto& c : x) {
        if (c > std::numeric_limits<std::int64_t>::max() || c < std::numeric_limits<std::int64_t>::min())
            throw std::overflow_error("scalar coefficient overflow");
        out.push_back(static_cast<std::int64_t>(c));
    }
    return out;
}

}  // namespace

Poly Poly::constant(std::int64_t c) { return monomial(c, 0); }

Poly Poly::monomial(std::int64_t c, int power) {
    Poly p;
    if (c != 0) {
        p.low_ = power;
        p.c_.push_back(c);
    }
    return p;
}

Poly Poly::from_coeffs(int low, std::vector<std::int64_t> coeffs) {
    Poly p;
    p.low_ = low;
    p.c_ = std::move(coeffs);
    p.trim();
    return p;
}

void Poly::trim() {
    trim_top(c_);
    std::size_t lead = 0;
    while (lead < c_.size() && c_[lead] == 0) ++lead;
    if (lead > 0) {
        c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
        low_ += static_cast<int>(lead);
    }
    if (c_.empty()) low_ = 0;
}

int Poly::term_count() const {
    return static_cast<int>(std::count_if(c_.begin(), c_.end(), [](auto c) { return c != 0; }));
}

std::int64_t Poly::coeff(int power) const {
    const int k = power - low_;
    if (k < 0 || k >= static_cast<int>(c_.size())) return 0;
    return c_[static_cast<std::size_t>(k)];
}

std::int64_t Poly::content() const { return vec_content(c_); }

Poly Poly::shifted(int k) const {
    Poly p = *this;
    if (!p.c_.empty()) p.low_ += k;
    return p;
}

Poly Poly::scaled(std::int64_t k) const {
    if (k == 0) return Poly();
    Poly p = *this;
    for (auto& c : p.c_) c = mul_checked(c, k);
    return p;
}

Poly Poly::divided_by_integer(std::int64_t k) const {
    Poly p = *this;
    for (auto& c : p.c_) {
        if (c % k != 0) throw std::domain_error("inexact integer division");
        c /= k;
    }
    return p;
}

Poly Poly::operator-() const { return scaled(-1); }

Poly operator+(const Poly& a, const Poly& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const int lo = std::min(a.low_, b.low_);
    const int hi = std::max(a.high(), b.high());
    Vec r(static_cast<std::size_t>(hi - lo + 1), 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i + static_cast<std::size_t>(a.low_ - lo)] = a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) {
        auto& slot = r[i + static_cast<std::size_t>(b.low_ - lo)];
        slot = add_checked(slot, b.c_[i]);
    }
    return Poly::from_coeffs(lo, std::move(r));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    Vec r(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            r[i + j] = add_checked(r[i + j], mul_checked(a.c_[i], b.c_[j]));
    }
    return Poly::from_coeffs(a.low_ + b.low_, std::move(r));
}

std::size_t Poly::hash() const {
    std::size_t h = std::hash<int>{}(low_);
    for (auto c : c_) h = h * 1000003u ^ std::hash<std::int64_t>{}(c);
    return h;
}

Poly poly_gcd(const Poly& a, const Poly& b) {
    if (a.is_zero() && b.is_zero()) return Poly();
    if (a.is_zero()) return poly_gcd(b, b);
    if (b.is_zero()) return poly_gcd(a, a);
    Vec x = a.coeffs();
    Vec y = b.coeffs();
    const std::int64_t cg = abs_gcd(vec_content(x), vec_content(y));
    make_primitive(x);
    make_primitive(y);
    try {
        Vec u = x;
        Vec v = y;
        if (u.size() < v.size()) std::swap(u, v);
        while (!v.empty()) {
            if (v.size() == 1) {
                u = {1};
                break;
            }
            pseudo_reduce(u, v);
            std::swap(u, v);
        }
        x = std::move(u);
    } catch (const std::overflow_error&) {
        x = big_primitive_gcd(x, y);
    }
    make_primitive(x);
    for (auto& c : x) c = mul_checked(c, cg);
    return Poly::from_coeffs(0, std::move(x));
}

Poly exact_div(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("division by zero polynomial");
    if (a.is_zero()) return Poly();
    Vec r = a.coeffs();
    const Vec& d = b.coeffs();
    if (r.size() < d.size()) throw std::domain_error("inexact polynomial division");
    Vec quot(r.size() - d.size() + 1, 0);
    for (std::size_t k = quot.size(); k-- > 0;) {
        const std::int64_t top = r[k + d.size() - 1];
        if (top % d.back() != 0) throw std::domain_error("inexact polynomial division");
        const std::int64_t qk = top / d.back();
        quot[k] = qk;
        if (qk == 0) continue;
        for (std::size_t i = 0; i < d.size(); ++i) r[k + i] = add_checked(r[k + i], -mul_checked(qk, d[i]));
    }
    if (std::any_of(r.begin(), r.end(), [](auto c) { return c != 0; }))
        throw std::domain_error("inexact polynomial division");
    return Poly::from_coeffs(a.low() - b.low(), std::move(quot));
}

PoleError::PoleError(int order)
    : std::domain_error("pole of order " + std::to_string(order) + " at q = 1"), order_(order) {}

Scalar Scalar::fraction(std::int64_t n, std::int64_t d) {
    return from_parts(Poly::constant(n), Poly::constant(d));
}

Scalar Scalar::from_parts(Poly num, Poly den) {
    if (den.is_zero()) throw std::domain_error("division by zero");
    Scalar r;
    if (num.is_zero()) return r;
    const int k = num.low() - den.low();
    Poly n = num.shifted(-num.low());
    Poly d = den.shifted(-den.low());
    if (!d.is_one()) {
        Poly g = poly_gcd(n, d);
        if (!g.is_one()) {
            n = exact_div(n, g);
            d = exact_div(d, g);
        }
    }
    if (d.leading() < 0) {
        n = -n;
        d = -d;
    }
    const std::int64_t c = abs_gcd(n.content(), d.content());
    if (c > 1) {
        n = n.divided_by_integer(c);
        d = d.divided_by_integer(c);
    }
    r.num_ = n.shifted(k);
    r.den_ = std::move(d);
    return r;
}

Scalar Scalar::s_pow(int n) {
    Scalar r;
    r.num_ = Poly::monomial(1, n);
    return r;
}

Scalar Scalar::h() {
    Scalar r;
    r.num_ = Poly::from_coeffs(-1, {-1, 0, 1});
    return r;
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    r.num_ = -r.num_;
    return r;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero scalar");
    return from_parts(den_, num_);
}

Scalar Scalar::pow(int n) const {
    if (n < 0) return inverse().pow(-n);
    Scalar result(1);
    Scalar base = *this;
    while (n > 0) {
        if (n & 1) result *= base;
        n >>= 1;
        if (n > 0) base *= base;
    }
    return result;
}

Scalar& Scalar::operator+=(const Scalar& b) {
    if (b.is_zero()) return *this;
    if (is_zero()) return *this = b;
    if (den_.is_one() && b.den_.is_one()) {
        num_ = num_ + b.num_;
        return *this;
    }
    if (den_ == b.den_) return *this = from_parts(num_ + b.num_, den_);
    return *this = from_parts(num_ * b.den_ + b.num_ * den_, den_ * b.den_);
}

Scalar& Scalar::operator-=(const Scalar& b) { return *this += -b; }

Scalar& Scalar::operator*=(const Scalar& b) { return *this = *this * b; }

Scalar& Scalar::operator/=(const Scalar& b) { return *this = *this / b; }

Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.is_zero() || b.is_zero()) return Scalar();
    if (a.den_.is_one() && b.den_.is_one()) {
        Scalar r;
        r.num_ = a.num_ * b.num_;
        return r;
    }
    return Scalar::from_parts(a.num_ * b.num_, a.den_ * b.den_);
}

namespace {

std::string power_word(int n) {
    const int k = (n >= 0) ? n / 2 : -((-n + 1) / 2);
    const bool odd = (n - 2 * k) != 0;
    std::string q;
    if (k == 1)
        q = "q";
    else if (k != 0)
        q = "q^" + std::to_string(k);
    if (!odd) return q;
    return q.empty() ? "sqrtq" : q + "*sqrtq";
}

std::string poly_string(const Poly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (int n = p.high(); n >= p.low(); --n) {
        const std::int64_t c = p.coeff(n);
        if (c == 0) continue;
        const std::string word = power_word(n);
        const std::int64_t mag = c < 0 ? -c : c;
        if (c < 0)
            out += "-";
        else if (!first)
            out += "+";
        if (word.empty())
            out += std::to_string(mag);
        else if (mag == 1)
            out += word;
        else
            out += std::to_string(mag) + "*" + word;
        first = false;
    }
    return out;
}

}  // namespace

std::string Scalar::to_string() const {
    static const Scalar hbar = h();
    if (*this == hbar) return "h";
    if (*this == -hbar) return "-h";
    if (den_.is_one()) return poly_string(num_);
    std::string n = poly_string(num_);
    if (num_.term_count() > 1) n = "(" + n + ")";
    if (den_.low() == 0 && den_.high() == 0) return n + "/" + poly_string(den_);
    return n + "/(" + poly_string(den_) + ")";
}

std::string rational_to_string(const Rational& r) {
    std::ostringstream os;
    os << boost::multiprecision::numerator(r);
    if (boost::multiprecision::denominator(r) != 1) os << "/" << boost::multiprecision::denominator(r);
    return os.str();
}

Rational Series::coefficient(int power) const {
    if (power > order) throw std::out_of_range("series coefficient beyond truncation order");
    const int k = power - valuation;
    if (k < 0 || k >= static_cast<int>(coeffs.size())) return Rational(0);
    return coeffs[static_cast<std::size_t>(k)];
}

std::string Series::to_string() const {
    std::string out;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (coeffs[k] == 0) continue;
        const int p = valuation + static_cast<int>(k);
        const Rational mag = coeffs[k] < 0 ? Rational(-coeffs[k]) : coeffs[k];
        if (out.empty())
            out = coeffs[k] < 0 ? "-" : "";
        else
            out += coeffs[k] < 0 ? " - " : " + ";
        const std::string t = p == 1 ? "t" : "t^" + std::to_string(p);
        if (p == 0)
            out += rational_to_string(mag);
        else
            out += mag == 1 ? t : rational_to_string(mag) + "*" + t;
    }
    if (out.empty()) out = "0";
    return out + " + O(t^" + std::to_string(order + 1) + ")";
}

namespace {

// Coefficients of P(1 + t) for a polynomial P with nonnegative powers.
std::vector<BigInt> taylor_at_one(const Poly& p) {
    const int deg = p.high();
    std::vector<BigInt> out(static_cast<std::size_t>(deg + 1), 0);
    for (int j = p.low(); j <= deg; ++j) {
        const std::int64_t c = p.coeff(j);
        if (c == 0) continue;
        BigInt binom = 1;
        for (int i = 0; i <= j; ++i) {
            out[static_cast<std::size_t>(i)] += binom * c;
            binom = binom * (j - i) / (i + 1);
        }
    }
    return out;
}

std::size_t first_nonzero(const std::vector<BigInt>& v) {
    std::size_t i = 0;
    while (v[i] == 0) ++i;
    return i;
}

}  // namespace

Series expand_at_one(const Scalar& a, int order) {
    Series out;
    out.order = order;
    if (a.is_zero()) {
        out.valuation = order + 1;
        return out;
    }
    Poly n = a.num();
    Poly d = a.den();
    if (n.low() < 0) {
        d = d.shifted(-n.low());
        n = n.shifted(-n.low());
    }
    const auto tn = taylor_at_one(n);
    const auto td = taylor_at_one(d);
    const std::size_t vn = first_nonzero(tn);
    const std::size_t vd = first_nonzero(td);
    out.valuation = static_cast<int>(vn) - static_cast<int>(vd);
    const int count = order - out.valuation + 1;
    if (count <= 0) return out;
    auto at = [](const std::vector<BigInt>& v, std::size_t i) -> Rational {
        return i < v.size() ? Rational(v[i]) : Rational(0);
    };
    const Rational b0 = at(td, vd);
    out.coeffs.reserve(static_cast<std::size_t>(count));
    for (int m = 0; m < count; ++m) {
        Rational acc = at(tn, vn + static_cast<std::size_t>(m));
        for (int j = 1; j <= m; ++j)
            acc -= at(td, vd + static_cast<std::size_t>(j)) * out.coeffs[static_cast<std::size_t>(m - j)];
        out.coeffs.push_back(acc / b0);
    }
    return out;
}

Series series_product(const Series& a, const Series& b, int order) {
    Series out;
    out.order = order;
    out.valuation = a.valuation + b.valuation;
    const int count = order - out.valuation + 1;
    if (count <= 0) return out;
    out.coeffs.assign(static_cast<std::size_t>(count), Rational(0));
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs.size(); ++j)
            if (i + j < out.coeffs.size()) out.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
    return out;
}

Rational eval_limit(const Scalar& a) {
    if (a.is_zero()) return Rational(0);
    std::int64_t dsum = 0;
    for (auto c : a.den().coeffs()) dsum += c;
    if (dsum != 0) {
        BigInt nsum = 0;
        for (auto c : a.num().coeffs()) nsum += c;
        return Rational(nsum) / Rational(dsum);
    }
    const Series s = expand_at_one(a, 0);
    if (s.valuation < 0) throw PoleError(-s.valuation);
    return s.coefficient(0);
}

}  // namespace qeuclid
