#include "qeuclid/climit.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace qeuclid {

namespace {

std::string power_factor(const std::string& name, int p) {
    return p == 1 ? name : name + "^" + std::to_string(p);
}

std::string join_factors(const std::vector<std::string>& f) {
    if (f.empty()) return "1";
    std::string out = f[0];
    for (std::size_t i = 1; i < f.size(); ++i) out += " * " + f[i];
    return out;
}

// Sign of the wedge of two ordered masks, 0 if they overlap.
int wedge_sign(int a, int b) {
    if (a & b) return 0;
    int swaps = 0;
    for (int bit = 0; bit < 8; ++bit)
        if (b & (1 << bit)) swaps += std::popcount(static_cast<unsigned>(a) >> (bit + 1));
    return swaps % 2 ? -1 : 1;
}

Series series_sum(const Series& a, const Series& b) {
    Series out;
    out.order = std::min(a.order, b.order);
    out.valuation = std::min(a.valuation, b.valuation);
    const int count = out.order - out.valuation + 1;
    if (count <= 0) return out;
    out.coeffs.assign(static_cast<std::size_t>(count), Rational(0));
    for (int p = out.valuation; p <= out.order; ++p) {
        Rational v = 0;
        if (p >= a.valuation) v += a.coefficient(p);
        if (p >= b.valuation) v += b.coefficient(p);
        out.coeffs[static_cast<std::size_t>(p - out.valuation)] = v;
    }
    return out;
}

bool series_is_zero(const Series& s) {
    return std::all_of(s.coeffs.begin(), s.coeffs.end(), [](const Rational& c) { return c == 0; });
}

std::string quad_part(const Rational& a, const Rational& b) {
    std::string out;
    if (a != 0) out = rational_to_string(a);
    if (b != 0) {
        if (!out.empty()) out += b > 0 ? "+" : "";
        out += rational_to_string(b) + "*sqrt2";
    }
    return out;
}

}  // namespace

std::string ClassicalMonomial::to_string() const {
    std::vector<std::string> f;
    if (alpha) f.push_back(power_factor("alpha", alpha));
    if (rad) f.push_back(power_factor("r", rad));
    if (x0) f.push_back(power_factor("xz", x0));
    if (xm) f.push_back(power_factor("xm", xm));
    if (xp) f.push_back(power_factor("xp", xp));
    static const char* names[] = {"dxm", "dxz", "dxp"};
    std::string word;
    for (int l = 0; l < 3; ++l)
        if (dx & (1 << l)) word += (word.empty() ? "" : "^") + std::string(names[l]);
    if (!word.empty()) f.push_back(word);
    return join_factors(f);
}

void ClassicalExpr::add_term(const ClassicalMonomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(m, c);
    if (fresh) return;
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

Rational ClassicalExpr::coefficient(const ClassicalMonomial& m) const {
    const auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

ClassicalExpr& ClassicalExpr::operator+=(const ClassicalExpr& b) {
    for (const auto& [m, c] : b.terms_) add_term(m, c);
    return *this;
}

ClassicalExpr& ClassicalExpr::operator-=(const ClassicalExpr& b) {
    for (const auto& [m, c] : b.terms_) add_term(m, -c);
    return *this;
}

std::string ClassicalExpr::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : terms_) {
        const std::string mono = m.to_string();
        const Rational mag = c < 0 ? Rational(-c) : c;
        const std::string num = rational_to_string(mag);
        std::string piece = mono == "1" ? num : mag == 1 ? mono : num + " * " + mono;
        if (out.empty())
            out = c < 0 ? "-" + piece : piece;
        else
            out += (c < 0 ? " - " : " + ") + piece;
    }
    return out;
}

std::map<ClassicalMonomial, Series> classical_series(const Element& a, int order) {
    std::map<ClassicalMonomial, Series> out;
    for (const auto& [m, c] : a.terms()) {
        ClassicalMonomial cm;
        cm.alpha = m.alpha;
        cm.rad = m.rad;
        cm.x0 = m.x0;
        cm.xm = m.xm;
        cm.xp = m.xp;
        int sign = 1;
        for (int l = 0; l < kFormLetters; ++l) {
            if (!(m.form_mask() & (1 << l))) continue;
            const int bit = 1 << (l % 3);
            sign *= wedge_sign(cm.dx, bit);
            cm.dx |= bit;
        }
        if (sign == 0) continue;
        Series s = expand_at_one(sign > 0 ? c : -c, order);
        auto it = out.find(cm);
        if (it == out.end())
            out.emplace(cm, std::move(s));
        else
            it->second = series_sum(it->second, s);
    }
    std::erase_if(out, [](const auto& kv) { return series_is_zero(kv.second); });
    return out;
}

std::string series_to_string(const std::map<ClassicalMonomial, Series>& s) {
    if (s.empty()) return "0";
    std::string out;
    for (const auto& [m, series] : s) {
        if (!out.empty()) out += "\n";
        out += "(" + series.to_string() + ") * " + m.to_string();
    }
    return out;
}

ClassicalExpr classical_limit(const Element& a) {
    ClassicalExpr out;
    for (const auto& [m, s] : classical_series(a, 0)) {
        for (int p = s.valuation; p < 0; ++p)
            if (s.coefficient(p) != 0) throw PoleError(-p);
        out.add_term(m, s.coefficient(0));
    }
    return out;
}

std::array<ClassicalExpr, 9> line_element_limit(const Geometry& geo) {
    const MetricTable g = geo.metric();
    std::array<ClassicalExpr, 9> out;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out[static_cast<std::size_t>(3 * i + j)] = classical_limit(g.at(i, j));
    return out;
}

QuadComplex& QuadComplex::operator+=(const QuadComplex& o) {
    a += o.a;
    b += o.b;
    c += o.c;
    d += o.d;
    return *this;
}

QuadComplex& QuadComplex::operator-=(const QuadComplex& o) {
    a -= o.a;
    b -= o.b;
    c -= o.c;
    d -= o.d;
    return *this;
}

QuadComplex operator*(const QuadComplex& x, const QuadComplex& y) {
    // (p + i u)(r + i v) with p, u, r, v in Q(sqrt2).
    auto mul = [](const Rational& p0, const Rational& p1, const Rational& r0, const Rational& r1) {
        return std::pair<Rational, Rational>{p0 * r0 + 2 * p1 * r1, p0 * r1 + p1 * r0};
    };
    const auto pr = mul(x.a, x.b, y.a, y.b);
    const auto uv = mul(x.c, x.d, y.c, y.d);
    const auto pv = mul(x.a, x.b, y.c, y.d);
    const auto ur = mul(x.c, x.d, y.a, y.b);
    return {pr.first - uv.first, pr.second - uv.second, pv.first + ur.first, pv.second + ur.second};
}

std::string QuadComplex::to_string() const {
    const std::string re = quad_part(a, b);
    std::string im = quad_part(c, d);
    if (im.empty()) return re.empty() ? "0" : re;
    if (im == "1" || im == "-1")
        im.pop_back();
    else
        im = (c != 0 && d != 0 ? "(" + im + ")" : im) + "*";
    const std::string imag = im + "i";
    if (re.empty()) return imag;
    return "(" + re + " + " + imag + ")";
}

std::string RealMonomial::to_string() const {
    std::vector<std::string> f;
    if (alpha) f.push_back(power_factor("alpha", alpha));
    if (rad) f.push_back(power_factor("r", rad));
    if (y) f.push_back(power_factor("y", y));
    if (x) f.push_back(power_factor("x", x));
    if (z) f.push_back(power_factor("z", z));
    static const char* names[] = {"dx", "dy", "dz"};
    std::string word;
    for (int l = 0; l < 3; ++l)
        if (d & (1 << l)) word += (word.empty() ? "" : "^") + std::string(names[l]);
    if (!word.empty()) f.push_back(word);
    return join_factors(f);
}

RealExpr RealExpr::constant(const QuadComplex& c) {
    RealExpr e;
    e.add_term(RealMonomial{}, c);
    return e;
}

RealExpr RealExpr::variable(char name, int power) {
    RealMonomial m;
    switch (name) {
        case 'x': m.x = power; break;
        case 'y': m.y = power; break;
        case 'z': m.z = power; break;
        case 'r': m.rad = power; break;
        case 'a': m.alpha = power; break;
        default: throw std::invalid_argument(std::string("unknown real variable ") + name);
    }
    RealExpr e;
    e.add_term(m, QuadComplex::real(1));
    return e;
}

RealExpr RealExpr::differential(char name) {
    auto basic = [](int bit) {
        RealMonomial m;
        m.d = bit;
        RealExpr e;
        e.add_term(m, QuadComplex::real(1));
        return e;
    };
    switch (name) {
        case 'x': return basic(1);
        case 'y': return basic(2);
        case 'z': return basic(4);
        case 'r':
            return variable('r', -1) * (variable('x') * basic(1) + variable('y') * basic(2) + variable('z') * basic(4));
        default: throw std::invalid_argument(std::string("unknown differential d") + name);
    }
}

void RealExpr::add_term(const RealMonomial& m, const QuadComplex& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.emplace(m, c);
    if (fresh) return;
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

RealExpr& RealExpr::operator+=(const RealExpr& b) {
    for (const auto& [m, c] : b.terms_) add_term(m, c);
    return *this;
}

RealExpr& RealExpr::operator-=(const RealExpr& b) {
    for (const auto& [m, c] : b.terms_) add_term(m, QuadComplex::real(-1) * c);
    return *this;
}

RealExpr operator*(const RealExpr& a, const RealExpr& b) {
    RealExpr out;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) {
            const int sign = wedge_sign(ma.d, mb.d);
            if (sign == 0) continue;
            RealMonomial m{ma.alpha + mb.alpha, ma.rad + mb.rad, ma.y + mb.y, ma.x + mb.x, ma.z + mb.z, ma.d | mb.d};
            out.add_term(m, QuadComplex::real(sign) * ca * cb);
        }
    return out;
}

RealExpr operator*(const QuadComplex& k, const RealExpr& a) {
    RealExpr out;
    for (const auto& [m, c] : a.terms_) out.add_term(m, k * c);
    return out;
}

RealExpr RealExpr::conj() const {
    RealExpr out;
    for (const auto& [m, c] : terms_) out.add_term(m, c.conj());
    return out;
}

RealExpr RealExpr::reduced() const {
    int low = 0;
    for (const auto& [m, c] : terms_) low = std::min(low, m.rad);
    RealExpr work;
    for (const auto& [m, c] : terms_) {
        RealMonomial shifted = m;
        shifted.rad -= low;
        work.add_term(shifted, c);
    }
    const RealExpr r2 = RealExpr::variable('x', 2) + RealExpr::variable('y', 2) + RealExpr::variable('z', 2);
    for (;;) {
        RealExpr next;
        bool changed = false;
        for (const auto& [m, c] : work.terms_) {
            if (m.rad < 2) {
                next.add_term(m, c);
                continue;
            }
            RealMonomial rest = m;
            rest.rad -= 2;
            RealExpr piece;
            piece.add_term(rest, c);
            next += piece * r2;
            changed = true;
        }
        work = std::move(next);
        if (!changed) return work;
    }
}

std::string RealExpr::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : terms_) {
        const Rational& lead = c.a != 0 ? c.a : c.b != 0 ? c.b : c.c != 0 ? c.c : c.d;
        const bool negative = lead < 0;
        const QuadComplex mag = negative ? QuadComplex::real(-1) * c : c;
        const std::string mono = m.to_string();
        const std::string coef = mag.to_string();
        const std::string piece = mono == "1" ? coef : coef == "1" ? mono : coef + " * " + mono;
        if (out.empty())
            out = negative ? "-" + piece : piece;
        else
            out += (negative ? " - " : " + ") + piece;
    }
    return out;
}

bool equivalent(const RealExpr& a, const RealExpr& b) { return (a - b).reduced().is_zero(); }

RealExpr to_real(const ClassicalExpr& e) {
    const QuadComplex h = QuadComplex::inv_sqrt2();
    const QuadComplex i = QuadComplex::imag(1);
    const RealExpr x = RealExpr::variable('x');
    const RealExpr z = RealExpr::variable('z');
    const RealExpr xm = h * (x - i * z);
    const RealExpr xp = h * (x + i * z);
    const RealExpr dx = RealExpr::differential('x');
    const RealExpr dz = RealExpr::differential('z');
    const std::array<RealExpr, 3> d = {h * (dx - i * dz), RealExpr::differential('y'), h * (dx + i * dz)};
    RealExpr out;
    for (const auto& [m, c] : e.terms()) {
        RealMonomial base;
        base.alpha = m.alpha;
        base.rad = m.rad;
        base.y = m.x0;
        RealExpr term;
        term.add_term(base, QuadComplex::real(c));
        for (int k = 0; k < m.xm; ++k) term = term * xm;
        for (int k = 0; k < m.xp; ++k) term = term * xp;
        for (int l = 0; l < 3; ++l)
            if (m.dx & (1 << l)) term = term * d[static_cast<std::size_t>(l)];
        out += term;
    }
    return out;
}

std::array<RealExpr, 3> real_coordinate_frame(const Geometry& geo) {
    const QuadComplex h = QuadComplex::inv_sqrt2();
    const QuadComplex i = QuadComplex::imag(1);
    std::array<RealExpr, 3> f;
    for (int a = 0; a < 3; ++a) f[static_cast<std::size_t>(a)] = to_real(classical_limit(geo.frame()[static_cast<std::size_t>(a)]));
    return {h * (f[0] + f[2]), f[1], (i * h) * (f[0] - f[2])};
}

std::array<RealExpr, 3> reference_real_frame() {
    const QuadComplex i = QuadComplex::imag(1);
    const RealExpr x = RealExpr::variable('x');
    const RealExpr z = RealExpr::variable('z');
    const RealExpr r = RealExpr::variable('r');
    const RealExpr dx = RealExpr::differential('x');
    const RealExpr dz = RealExpr::differential('z');
    const RealExpr dr = RealExpr::differential('r');
    RealMonomial pre_m;
    pre_m.alpha = -1;
    pre_m.y = -1;
    pre_m.rad = -1;
    RealExpr pre;
    pre.add_term(pre_m, QuadComplex::real(1));
    return {pre * (r * dx - x * dr + i * (z * dr)), pre * (r * dr - i * (x * dz) + i * (z * dx)),
            pre * (r * dz - i * (x * dr) - z * dr)};
}

}  // namespace qeuclid
