#include "qeuclid/ncalg.hpp"

#include <bit>
#include <functional>
#include <tuple>

namespace qeuclid {

namespace {

const std::array<GeneratorInfo, kGeneratorCount> kGenerators = {{
    {Gen::Lam, "Lam", 0, 0, false, true},
    {Gen::LamInv, "Laminv", 0, 0, false, true},
    {Gen::R, "r", 0, 0, false, true},
    {Gen::RInv, "rinv", 0, 0, false, true},
    {Gen::X0, "xz", 0, 0, false, true},
    {Gen::X0Inv, "xzinv", 0, 0, false, true},
    {Gen::Xm, "xm", -1, 0, false, false},
    {Gen::Xp, "xp", 1, 0, false, false},
    {Gen::Xim, "xim", -1, 1, false, false},
    {Gen::Xiz, "xiz", 0, 1, false, false},
    {Gen::Xip, "xip", 1, 1, false, false},
    {Gen::BXim, "bxim", -1, 1, true, false},
    {Gen::BXiz, "bxiz", 0, 1, true, false},
    {Gen::BXip, "bxip", 1, 1, true, false},
    {Gen::Alpha, "alpha", 0, 0, false, true},
    {Gen::AlphaInv, "alphainv", 0, 0, false, true},
}};

const char* kLetterTokens[kFormLetters] = {"xim", "xiz", "xip", "bxim", "bxiz", "bxip"};

Monomial x_gen(int i) {
    Monomial m;
    if (i == kMinus) m.xm = 1;
    if (i == kZero) m.x0 = 1;
    if (i == kPlus) m.xp = 1;
    return m;
}

Monomial with_mask(Monomial m, int mask) {
    m.xi = static_cast<std::uint8_t>(mask & 7);
    m.bxi = static_cast<std::uint8_t>((mask >> 3) & 7);
    return m;
}

void accumulate(Element::Terms& out, const Monomial& m, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = out.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) out.erase(it);
    }
}

TermList to_list(const Element::Terms& t) {
    TermList out;
    for (const auto& [m, c] : t)
        if (!c.is_zero()) out.emplace_back(m, c);
    return out;
}

std::string power_factor(const char* name, int e) {
    if (e == 1) return name;
    return std::string(name) + "^" + std::to_string(e);
}

}  // namespace

const GeneratorInfo& generator_info(Gen g) { return kGenerators[static_cast<std::size_t>(g)]; }

const std::array<GeneratorInfo, kGeneratorCount>& all_generators() { return kGenerators; }

Gen form_letter_gen(int letter) { return static_cast<Gen>(static_cast<int>(Gen::Xim) + letter); }

int form_letter_of(Gen g) {
    const int k = static_cast<int>(g) - static_cast<int>(Gen::Xim);
    return (k >= 0 && k < kFormLetters) ? k : -1;
}

Monomial Monomial::of(Gen g) {
    Monomial m;
    switch (g) {
        case Gen::Lam: m.lam = 1; break;
        case Gen::LamInv: m.lam = -1; break;
        case Gen::R: m.rad = 1; break;
        case Gen::RInv: m.rad = -1; break;
        case Gen::X0: m.x0 = 1; break;
        case Gen::X0Inv: m.x0 = -1; break;
        case Gen::Xm: m.xm = 1; break;
        case Gen::Xp: m.xp = 1; break;
        case Gen::Alpha: m.alpha = 1; break;
        case Gen::AlphaInv: m.alpha = -1; break;
        default: {
            const int l = form_letter_of(g);
            m = forms(1 << l);
        }
    }
    return m;
}

int Monomial::form_degree() const { return std::popcount(xi) + std::popcount(bxi); }

int Monomial::grading() const {
    int g = static_cast<int>(xp) - static_cast<int>(xm);
    for (int i = 0; i < 3; ++i) {
        if (xi & (1 << i)) g += index_degree(i);
        if (bxi & (1 << i)) g += index_degree(i);
    }
    return g;
}

std::string Monomial::to_string() const {
    std::vector<std::string> f;
    if (alpha) f.push_back(power_factor("alpha", alpha));
    if (lam) f.push_back(power_factor("Lam", lam));
    if (rad) f.push_back(power_factor("r", rad));
    if (x0) f.push_back(power_factor("xz", x0));
    if (xm) f.push_back(power_factor("xm", xm));
    if (xp) f.push_back(power_factor("xp", xp));
    std::string word;
    for (int l = 0; l < kFormLetters; ++l)
        if (form_mask() & (1 << l)) word += (word.empty() ? "" : "*") + std::string(kLetterTokens[l]);
    if (!word.empty()) f.push_back(word);
    if (f.empty()) return "1";
    std::string out = f[0];
    for (std::size_t i = 1; i < f.size(); ++i) out += " * " + f[i];
    return out;
}

Element::Element(const Scalar& c) {
    if (!c.is_zero()) terms_.emplace(Monomial{}, c);
}

Element Element::monomial(const Monomial& m, const Scalar& c) {
    Element e;
    e.add_term(m, c);
    return e;
}

Element Element::from_terms(Terms terms) {
    Element e;
    for (auto it = terms.begin(); it != terms.end();)
        it = it->second.is_zero() ? terms.erase(it) : std::next(it);
    e.terms_ = std::move(terms);
    return e;
}

void Element::add_term(const Monomial& m, const Scalar& c) { accumulate(terms_, m, c); }

Scalar Element::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar() : it->second;
}

Element& Element::operator+=(const Element& b) {
    for (const auto& [m, c] : b.terms_) accumulate(terms_, m, c);
    return *this;
}

Element& Element::operator-=(const Element& b) {
    for (const auto& [m, c] : b.terms_) accumulate(terms_, m, -c);
    return *this;
}

Element Element::operator-() const {
    Element r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

Element operator*(const Scalar& k, const Element& a) {
    if (k.is_zero()) return Element();
    Element r = a;
    for (auto& [m, c] : r.terms_) c *= k;
    return r;
}

int Element::max_form_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m.form_degree());
    return d;
}

bool Element::is_function() const { return max_form_degree() <= 0; }

Element Element::letter_coefficient(int letter) const { return mask_coefficient(1 << letter); }

Element Element::mask_coefficient(int mask) const {
    Element r;
    for (const auto& [m, c] : terms_)
        if (m.form_mask() == mask) r.terms_.emplace(m.function_part(), c);
    return r;
}

Element Element::form_degree_part(int degree) const {
    Element r;
    for (const auto& [m, c] : terms_)
        if (m.form_degree() == degree) r.terms_.emplace(m, c);
    return r;
}

std::string Element::to_string() const {
    if (terms_.empty()) return "0";
    if (terms_.size() == 1 && terms_.begin()->first.is_identity()) return terms_.begin()->second.to_string();
    std::string out;
    for (const auto& [m, c] : terms_) {
        std::string coef = c.to_string();
        const std::string mono = m.to_string();
        std::string term;
        const bool compound = !c.is_monomial() && coef != "h" && coef != "-h";
        if (m.is_identity())
            term = compound ? "(" + coef + ")" : coef;
        else if (coef == "1")
            term = mono;
        else if (coef == "-1")
            term = "-" + mono;
        else
            term = (compound ? "(" + coef + ")" : coef) + " * " + mono;
        if (out.empty())
            out = term;
        else if (term[0] == '-')
            out += " - " + term.substr(1);
        else
            out += " + " + term;
    }
    return out;
}

ConfluenceError::ConfluenceError(Gen a, Gen b, Gen c)
    : std::logic_error(std::string("associativity fails on ") + generator_info(a).token + " " +
                       generator_info(b).token + " " + generator_info(c).token),
      triple{a, b, c} {}

Algebra::Algebra(AlgebraOptions opts) : opts_(opts) {
    metric_ = IsoMetric::standard();
    rhat_ = build_rhat();
    proj_ = build_projectors(rhat_, metric_);
    rhat_inv_ = rhat_inverse_from_projectors(proj_);
    const Scalar s = Scalar::sqrtq();
    radius_a_ = (s + s.inverse()).inverse();
    radius_b_plus_ = -Scalar::q_pow(-1) * radius_a_;
    radius_b_minus_ = -Scalar::q() * radius_a_;
    build_form_table();
    build_single_letter_rules();
    build_word_rules();
    if (!opts_.skip_confluence_check) verify_confluence();
}

void Algebra::normalize_word(std::vector<int>& word, const Scalar& c, std::map<int, Scalar>& out) const {
    if (c.is_zero()) return;
    for (std::size_t i = 0; i + 1 < word.size(); ++i) {
        const int a = word[i];
        const int b = word[i + 1];
        if (a < b) continue;
        std::vector<std::pair<Scalar, std::array<int, 2>>> repl;
        if (a / 3 == b / 3) {
            const int base = 3 * (a / 3);
            const int ia = a % 3;
            const int ib = b % 3;
            if (ia == ib) {
                if (ia == kZero) repl.push_back({Scalar::h(), {base + kMinus, base + kPlus}});
            } else if (ia == kZero) {
                repl.push_back({-Scalar::q(), {base + kMinus, base + kZero}});
            } else if (ib == kZero) {
                repl.push_back({-Scalar::q(), {base + kZero, base + kPlus}});
            } else {
                repl.push_back({Scalar(-1), {base + kMinus, base + kPlus}});
            }
        } else {
            // bar xi^a xi^b = -q R^{ab}_{ij} xi^i bar xi^j
            const int ia = a - 3;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    const Scalar& r = entry(rhat_, ia, b, i, j);
                    if (!r.is_zero()) repl.push_back({-Scalar::q() * r, {i, 3 + j}});
                }
        }
        for (const auto& [k, pair] : repl) {
            std::vector<int> w(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(i));
            w.push_back(pair[0]);
            w.push_back(pair[1]);
            w.insert(w.end(), word.begin() + static_cast<std::ptrdiff_t>(i + 2), word.end());
            normalize_word(w, c * k, out);
        }
        return;
    }
    int mask = 0;
    for (int l : word) mask |= 1 << l;
    auto [it, inserted] = out.try_emplace(mask, c);
    if (!inserted) it->second += c;
}

void Algebra::build_form_table() {
    forms_.assign(64, std::vector<TermList>(64));
    for (int a = 0; a < 64; ++a)
        for (int b = 0; b < 64; ++b) {
            std::vector<int> word;
            for (int l = 0; l < kFormLetters; ++l)
                if (a & (1 << l)) word.push_back(l);
            for (int l = 0; l < kFormLetters; ++l)
                if (b & (1 << l)) word.push_back(l);
            std::map<int, Scalar> out;
            normalize_word(word, Scalar(1), out);
            for (const auto& [mask, c] : out)
                if (!c.is_zero()) forms_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)].emplace_back(Monomial::forms(mask), c);
        }
}

void Algebra::build_single_letter_rules() {
    push_.assign(64, {});
    const Scalar q = Scalar::q();
    const Scalar qinv = Scalar::q_pow(-1);
    const int slot_of_index[3] = {2, 0, 3};
    for (int letter = 0; letter < kFormLetters; ++letter) {
        const bool barred = letter >= 3;
        const int k = letter % 3;
        for (int l = 0; l < 3; ++l) {
            Element::Terms t;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    // xi^k x^l = q^-1 Rinv^{kl}_{ij} x^i xi^j ; bar xi^k x^l = q R^{kl}_{ij} x^i bar xi^j
                    const Scalar c = barred ? q * entry(rhat_, k, l, i, j) : qinv * entry(rhat_inv_, k, l, i, j);
                    accumulate(t, with_mask(x_gen(i), 1 << ((barred ? 3 : 0) + j)), c);
                }
            push_[static_cast<std::size_t>(1 << letter)][static_cast<std::size_t>(slot_of_index[l])] = to_list(t);
        }
    }

    // omega^t x0^-1 = Y_t with Y_t x0 = omega^t. Writing omega^t x0 = a_t x0 omega^t + sum f omega^u,
    // Y_t = a_t^-1 x0^-1 (omega^t - sum f Y_u).
    std::array<int, kFormLetters> state{};
    const Monomial x0inv = Monomial::of(Gen::X0Inv);
    std::function<void(int)> solve = [&](int letter) {
        if (state[static_cast<std::size_t>(letter)] == 2) return;
        if (state[static_cast<std::size_t>(letter)] == 1) throw std::logic_error("cyclic dependency in inverse x0 rules");
        state[static_cast<std::size_t>(letter)] = 1;
        const int mask = 1 << letter;
        Scalar diag;
        std::vector<std::tuple<Monomial, int, Scalar>> off;
        for (const auto& [m, c] : push_[static_cast<std::size_t>(mask)][0]) {
            if (m.form_mask() == mask && m.function_part() == Monomial::of(Gen::X0))
                diag = c;
            else
                off.emplace_back(m.function_part(), std::countr_zero(static_cast<unsigned>(m.form_mask())), c);
        }
        if (diag.is_zero()) throw std::logic_error("x0 rule without diagonal term");
        const Scalar dinv = diag.inverse();
        Element::Terms acc;
        accumulate(acc, with_mask(x0inv, mask), dinv);
        for (const auto& [g, u, c] : off) {
            solve(u);
            Element::Terms lead;
            function_product(x0inv, g, -dinv * c, lead);
            for (const auto& [hm, hc] : lead)
                for (const auto& [ym, yc] : push_[static_cast<std::size_t>(1 << u)][1])
                    function_product(hm, ym.function_part(), hc * yc, acc, ym.form_mask());
        }
        push_[static_cast<std::size_t>(mask)][1] = to_list(acc);
        state[static_cast<std::size_t>(letter)] = 2;
    };
    for (int letter = 0; letter < kFormLetters; ++letter) solve(letter);
}

void Algebra::build_word_rules() {
    for (int weight = 2; weight <= kFormLetters; ++weight)
        for (int mask = 1; mask < 64; ++mask) {
            if (std::popcount(static_cast<unsigned>(mask)) != weight) continue;
            const int first = std::countr_zero(static_cast<unsigned>(mask));
            const int rest = mask & ~(1 << first);
            for (int slot = 0; slot < 4; ++slot) {
                Element::Terms acc;
                for (const auto& [pm, pc] : push_[static_cast<std::size_t>(rest)][static_cast<std::size_t>(slot)]) {
                    const Element::Terms moved = push_word(1 << first, pm.function_part());
                    for (const auto& [mm, mc] : moved)
                        for (const auto& [fm, fc] : forms_[static_cast<std::size_t>(mm.form_mask())][static_cast<std::size_t>(pm.form_mask())])
                            accumulate(acc, with_mask(mm.function_part(), fm.form_mask()), pc * mc * fc);
                }
                push_[static_cast<std::size_t>(mask)][static_cast<std::size_t>(slot)] = to_list(acc);
            }
        }
}

void Algebra::step_xm(const Monomial& f, const Scalar& c, Element::Terms& out) const {
    if (f.xp == 0) {
        Monomial g = f;
        ++g.xm;
        accumulate(out, g, c);
        return;
    }
    const int p = f.xp;
    if (opts_.radius_reduction) {
        Monomial g1 = f;
        g1.xp = static_cast<std::uint16_t>(p - 1);
        g1.rad += 2;
        accumulate(out, g1, c * radius_a_);
        Monomial g2 = f;
        g2.xp = static_cast<std::uint16_t>(p - 1);
        g2.x0 += 2;
        accumulate(out, g2, c * radius_b_plus_ * Scalar::q_pow(-2 * (p - 1)));
        return;
    }
    Monomial g1 = f;
    ++g1.xm;
    accumulate(out, g1, c);
    Scalar bracket;
    for (int j = 0; j < p; ++j) bracket += Scalar::q_pow(-2 * j);
    Monomial g2 = f;
    g2.x0 += 2;
    --g2.xp;
    accumulate(out, g2, c * Scalar::h() * bracket * Scalar::q_pow(2 * f.xm));
}

void Algebra::step_xp(const Monomial& f, const Scalar& c, Element::Terms& out) const {
    if (f.xm == 0 || !opts_.radius_reduction) {
        Monomial g = f;
        ++g.xp;
        accumulate(out, g, c);
        return;
    }
    const int m = f.xm;
    Monomial g1 = f;
    g1.xm = static_cast<std::uint16_t>(m - 1);
    g1.rad += 2;
    accumulate(out, g1, c * radius_a_);
    Monomial g2 = f;
    g2.xm = static_cast<std::uint16_t>(m - 1);
    g2.x0 += 2;
    accumulate(out, g2, c * radius_b_minus_ * Scalar::q_pow(2 * (m - 1)));
}

void Algebra::function_product(const Monomial& a, const Monomial& b, const Scalar& c, Element::Terms& out,
                               int mask) const {
    if (c.is_zero()) return;
    Monomial base = a.function_part();
    const int e = b.lam * (a.rad + a.x0 + a.xm + a.xp) + b.x0 * (a.xm - a.xp);
    base.lam += b.lam;
    base.rad += b.rad;
    base.alpha += b.alpha;
    base.x0 += b.x0;
    const Scalar coeff = e == 0 ? c : c * Scalar::q_pow(e);
    if (b.xm == 0 && b.xp == 0) {
        accumulate(out, with_mask(base, mask), coeff);
        return;
    }
    Element::Terms cur{{base, coeff}};
    for (int k = 0; k < b.xm; ++k) {
        Element::Terms next;
        for (const auto& [m, v] : cur) step_xm(m, v, next);
        cur.swap(next);
    }
    for (int k = 0; k < b.xp; ++k) {
        Element::Terms next;
        for (const auto& [m, v] : cur) step_xp(m, v, next);
        cur.swap(next);
    }
    for (const auto& [m, v] : cur) accumulate(out, with_mask(m, mask), v);
}

Element::Terms Algebra::push_through(const Element::Terms& items, int slot) const {
    static const Monomial slot_gen[4] = {Monomial::of(Gen::X0), Monomial::of(Gen::X0Inv), Monomial::of(Gen::Xm),
                                         Monomial::of(Gen::Xp)};
    Element::Terms out;
    for (const auto& [m, c] : items) {
        const int mask = m.form_mask();
        const Monomial g = m.function_part();
        if (mask == 0) {
            function_product(g, slot_gen[slot], c, out);
            continue;
        }
        for (const auto& [rm, rc] : push_[static_cast<std::size_t>(mask)][static_cast<std::size_t>(slot)])
            function_product(g, rm.function_part(), c * rc, out, rm.form_mask());
    }
    return out;
}

Element::Terms Algebra::push_word(int mask, const Monomial& f) const {
    const int nx = std::popcount(static_cast<unsigned>(mask & 7));
    const int nb = std::popcount(static_cast<unsigned>(mask >> 3));
    int e = f.rad * (nb - nx);
    if (!opts_.lambda_commutes_with_forms) e += f.lam * (nx + nb);
    Monomial start = Monomial::forms(mask);
    start.lam = f.lam;
    start.rad = f.rad;
    start.alpha = f.alpha;
    Element::Terms cur{{start, Scalar::q_pow(e)}};
    for (int k = 0; k < std::abs(f.x0); ++k) cur = push_through(cur, f.x0 > 0 ? 0 : 1);
    for (int k = 0; k < f.xm; ++k) cur = push_through(cur, 2);
    for (int k = 0; k < f.xp; ++k) cur = push_through(cur, 3);
    return cur;
}

Element Algebra::mul(const Element& a, const Element& b) const {
    Element::Terms out;
    for (const auto& [m1, c1] : a.terms()) {
        const Monomial f1 = m1.function_part();
        const int w1 = m1.form_mask();
        for (const auto& [m2, c2] : b.terms()) {
            const Monomial f2 = m2.function_part();
            const int w2 = m2.form_mask();
            const Scalar c = c1 * c2;
            Element::Terms moved;
            if (w1 == 0)
                moved.emplace(f2, Scalar(1));
            else
                moved = push_word(w1, f2);
            for (const auto& [pm, pc] : moved) {
                const TermList& fr = forms_[static_cast<std::size_t>(pm.form_mask())][static_cast<std::size_t>(w2)];
                if (fr.empty()) continue;
                Element::Terms funcs;
                function_product(f1, pm.function_part(), c * pc, funcs);
                for (const auto& [hm, hc] : funcs)
                    for (const auto& [fm, fc] : fr) accumulate(out, with_mask(hm, fm.form_mask()), hc * fc);
            }
        }
    }
    return Element::from_terms(std::move(out));
}

Element Algebra::normalize(const std::vector<Gen>& word, const Scalar& prefactor) const {
    Element e(prefactor);
    for (Gen g : word) e = mul(e, Element::generator(g));
    return e;
}

Element Algebra::power(const Element& a, int n) const {
    if (n < 0) {
        if (a.size() != 1) throw std::domain_error("negative power of a non-monomial element");
        const auto& [m, c] = *a.terms().begin();
        if (!m.is_function() || m.xm != 0 || m.xp != 0) throw std::domain_error("element is not invertible");
        Monomial lam, rad, x0, al;
        lam.lam = static_cast<std::int16_t>(-m.lam);
        rad.rad = static_cast<std::int16_t>(-m.rad);
        x0.x0 = static_cast<std::int16_t>(-m.x0);
        al.alpha = static_cast<std::int16_t>(-m.alpha);
        const Element inv = mul(Element::monomial(x0), Element::monomial(rad), Element::monomial(lam),
                                Element::monomial(al, c.inverse()));
        return power(inv, -n);
    }
    Element r(1);
    for (int k = 0; k < n; ++k) r = mul(r, a);
    return r;
}

Element Algebra::star_monomial(const Monomial& m) const {
    // letter -> (starred letter, scalar): xi^- -> s bxi^+, xi^0 -> bxi^0, xi^+ -> s^-1 bxi^-.
    static const int star_letter[kFormLetters] = {5, 4, 3, 2, 1, 0};
    static const int star_power[kFormLetters] = {1, 0, -1, 1, 0, -1};
    std::vector<int> word;
    int spow = static_cast<int>(m.xm) - static_cast<int>(m.xp);
    for (int l = kFormLetters - 1; l >= 0; --l)
        if (m.form_mask() & (1 << l)) {
            word.push_back(star_letter[l]);
            spow += star_power[l];
        }
    std::map<int, Scalar> fw;
    normalize_word(word, Scalar::s_pow(spow), fw);
    Element forms;
    for (const auto& [mask, c] : fw) forms.add_term(Monomial::forms(mask), c);

    Monomial xm;
    xm.xm = m.xp;
    Monomial xp;
    xp.xp = m.xm;
    Monomial rest;
    rest.x0 = m.x0;
    Monomial rad;
    rad.rad = m.rad;
    Monomial lam;
    lam.lam = static_cast<std::int16_t>(-m.lam);
    lam.alpha = m.alpha;
    const Element func = mul(Element::monomial(xm), Element::monomial(xp), Element::monomial(rest),
                             Element::monomial(rad), Element::monomial(lam));
    return mul(forms, func);
}

Element Algebra::involution(const Element& a) const {
    Element r;
    for (const auto& [m, c] : a.terms()) r += c * star_monomial(m);
    return r;
}

bool Algebra::associative_on(Gen a, Gen b, Gen c) const {
    const Element x = Element::generator(a);
    const Element y = Element::generator(b);
    const Element z = Element::generator(c);
    return mul(mul(x, y), z) == mul(x, mul(y, z));
}

namespace {
constexpr Gen kNonCentral[] = {Gen::Lam, Gen::LamInv, Gen::R,   Gen::RInv, Gen::X0,   Gen::X0Inv, Gen::Xm,
                               Gen::Xp,  Gen::Xim,    Gen::Xiz, Gen::Xip,  Gen::BXim, Gen::BXiz,  Gen::BXip};
}

std::vector<std::array<Gen, 3>> Algebra::associativity_failures() const {
    std::vector<std::array<Gen, 3>> bad;
    for (Gen a : kNonCentral)
        for (Gen b : kNonCentral)
            for (Gen c : kNonCentral)
                if (!associative_on(a, b, c)) bad.push_back({a, b, c});
    return bad;
}

void Algebra::verify_confluence() const {
    for (Gen a : kNonCentral)
        for (Gen b : kNonCentral)
            for (Gen c : kNonCentral)
                if (!associative_on(a, b, c)) throw ConfluenceError(a, b, c);
}

std::map<std::pair<int, int>, Element> grade_split(const Element& a) {
    std::map<std::pair<int, int>, Element> out;
    for (const auto& [m, c] : a.terms()) out[{m.grading(), m.form_degree()}].add_term(m, c);
    return out;
}

}  // namespace qeuclid
