#include "qeuclid/omega.hpp"

#include <bit>
#include <stdexcept>

namespace qeuclid {

namespace {

bool is_plain_scalar(const Element& e, Scalar& value) {
    if (e.size() != 1) return false;
    const auto& [m, c] = *e.terms().begin();
    if (!m.is_identity()) return false;
    value = c;
    return true;
}

Element times(const Algebra& alg, const Element& a, const Element& b) {
    if (a.is_zero() || b.is_zero()) return {};
    Scalar k;
    if (is_plain_scalar(a, k)) return k * b;
    if (is_plain_scalar(b, k)) return k * a;
    return alg.mul(a, b);
}

const char* const kLetterTokens[6] = {"xim", "xiz", "xip", "bxim", "bxiz", "bxip"};

}  // namespace

TensorBi TensorBi::basis(int i, int j) {
    TensorBi t;
    t.at(i, j) = Element(1);
    return t;
}

bool TensorBi::is_zero() const {
    for (const auto& e : c)
        if (!e.is_zero()) return false;
    return true;
}

TensorBi& TensorBi::operator+=(const TensorBi& b) {
    for (std::size_t k = 0; k < c.size(); ++k) c[k] += b.c[k];
    return *this;
}

TensorBi& TensorBi::operator-=(const TensorBi& b) {
    for (std::size_t k = 0; k < c.size(); ++k) c[k] -= b.c[k];
    return *this;
}

TensorBi operator*(const Scalar& k, const TensorBi& t) {
    TensorBi r;
    for (std::size_t n = 0; n < t.c.size(); ++n) r.c[n] = k * t.c[n];
    return r;
}

std::string TensorBi::to_string() const {
    std::string out;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            const Element& e = at(i, j);
            if (e.is_zero()) continue;
            if (!out.empty()) out += " + ";
            out += "(" + e.to_string() + ") (*) " + kLetterTokens[i] + " (x) " + kLetterTokens[j];
        }
    return out.empty() ? "0" : out;
}

bool TensorTri::is_zero() const {
    for (const auto& e : c)
        if (!e.is_zero()) return false;
    return true;
}

TensorTri& TensorTri::operator+=(const TensorTri& b) {
    for (std::size_t k = 0; k < c.size(); ++k) c[k] += b.c[k];
    return *this;
}

TensorTri& TensorTri::operator-=(const TensorTri& b) {
    for (std::size_t k = 0; k < c.size(); ++k) c[k] -= b.c[k];
    return *this;
}

bool is_zero(const TwoFormTensor& t) {
    for (const auto& e : t)
        if (!e.is_zero()) return false;
    return true;
}

Element form_letter(int letter) { return Element::generator(form_letter_gen(letter)); }

std::array<Element, 6> split_one_form(const Element& a) {
    std::array<Element, 6> out;
    for (const auto& [m, c] : a.terms()) {
        if (m.form_degree() != 1) throw std::invalid_argument("expected a 1-form: " + a.to_string());
        const int mask = m.form_mask();
        const int letter = std::countr_zero(static_cast<unsigned>(mask));
        out[static_cast<std::size_t>(letter)].add_term(m.function_part(), c);
    }
    return out;
}

InvariantForms InvariantForms::build(const Algebra& alg) {
    static const Gen xs[] = {Gen::Xm, Gen::X0, Gen::Xp};
    const Scalar q = Scalar::q();
    InvariantForms f;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const Scalar& g = alg.metric().lower(i, j);
            if (g.is_zero()) continue;
            f.eta += g * alg.mul(Element::generator(xs[i]), form_letter(j));
            f.bar_eta += g * alg.mul(Element::generator(xs[i]), form_letter(3 + j));
        }
    const Element rinv2 = alg.power(Element::generator(Gen::RInv), 2);
    f.theta = ((q - Scalar(1)).inverse() * q * q) * alg.mul(rinv2, f.eta);
    f.bar_theta = ((q.inverse() - Scalar(1)).inverse() * q.pow(-2)) * alg.mul(rinv2, f.bar_eta);
    return f;
}

Element differential(const Algebra& alg, const InvariantForms& inv, const Element& a, Which w) {
    const Element& th = inv.dirac(w);
    Element out;
    for (const auto& [key, part] : grade_split(a)) {
        const int p = key.second;
        const Element left = alg.mul(th, part);
        const Element right = alg.mul(part, th);
        out -= (p % 2 == 0) ? left - right : left + right;
    }
    return out;
}

std::array<Element, 6> move_past_letter(const Algebra& alg, int letter, const Element& f) {
    Scalar k;
    if (is_plain_scalar(f, k)) {
        std::array<Element, 6> out;
        out[static_cast<std::size_t>(letter)] = Element(k);
        return out;
    }
    return split_one_form(alg.mul(form_letter(letter), f));
}

TensorBi tensor(const Algebra& alg, const Element& a, const Element& b) {
    const auto ac = split_one_form(a);
    const auto bc = split_one_form(b);
    TensorBi t;
    for (int i = 0; i < 6; ++i) {
        if (ac[static_cast<std::size_t>(i)].is_zero()) continue;
        for (int j = 0; j < 6; ++j) {
            if (bc[static_cast<std::size_t>(j)].is_zero()) continue;
            const auto w = move_past_letter(alg, i, bc[static_cast<std::size_t>(j)]);
            for (int m = 0; m < 6; ++m)
                if (!w[static_cast<std::size_t>(m)].is_zero())
                    t.at(m, j) += times(alg, ac[static_cast<std::size_t>(i)], w[static_cast<std::size_t>(m)]);
        }
    }
    return t;
}

TensorTri tensor(const Algebra& alg, const Element& a, const TensorBi& u) {
    const auto ac = split_one_form(a);
    TensorTri t;
    for (int i = 0; i < 6; ++i) {
        if (ac[static_cast<std::size_t>(i)].is_zero()) continue;
        for (int k = 0; k < 6; ++k)
            for (int l = 0; l < 6; ++l) {
                const Element& ukl = u.at(k, l);
                if (ukl.is_zero()) continue;
                const auto w = move_past_letter(alg, i, ukl);
                for (int m = 0; m < 6; ++m)
                    if (!w[static_cast<std::size_t>(m)].is_zero())
                        t.at(m, k, l) += times(alg, ac[static_cast<std::size_t>(i)], w[static_cast<std::size_t>(m)]);
            }
    }
    return t;
}

TensorTri tensor(const Algebra& alg, const TensorBi& u, const Element& b) {
    const auto bc = split_one_form(b);
    TensorTri t;
    for (int l = 0; l < 6; ++l) {
        const Element& bl = bc[static_cast<std::size_t>(l)];
        if (bl.is_zero()) continue;
        for (int j = 0; j < 6; ++j) {
            const auto wj = move_past_letter(alg, j, bl);
            for (int m = 0; m < 6; ++m) {
                const Element& wm = wj[static_cast<std::size_t>(m)];
                if (wm.is_zero()) continue;
                for (int i = 0; i < 6; ++i) {
                    const Element& uij = u.at(i, j);
                    if (uij.is_zero()) continue;
                    const auto wi = move_past_letter(alg, i, wm);
                    for (int n = 0; n < 6; ++n)
                        if (!wi[static_cast<std::size_t>(n)].is_zero())
                            t.at(n, m, l) += times(alg, uij, wi[static_cast<std::size_t>(n)]);
                }
            }
        }
    }
    return t;
}

TensorBi left_multiply(const Algebra& alg, const Element& f, const TensorBi& t) {
    TensorBi r;
    for (std::size_t n = 0; n < t.c.size(); ++n) r.c[n] = times(alg, f, t.c[n]);
    return r;
}

TensorTri left_multiply(const Algebra& alg, const Element& f, const TensorTri& t) {
    TensorTri r;
    for (std::size_t n = 0; n < t.c.size(); ++n) r.c[n] = times(alg, f, t.c[n]);
    return r;
}

namespace {

const std::array<Element, 36>& wedge_table(const Algebra& alg) {
    // Products of two letters, cached per algebra.
    thread_local const Algebra* owner = nullptr;
    thread_local std::array<Element, 36> table;
    if (owner != &alg) {
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j)
                table[static_cast<std::size_t>(6 * i + j)] = alg.mul(form_letter(i), form_letter(j));
        owner = &alg;
    }
    return table;
}

}  // namespace

Element pi_project(const Algebra& alg, const TensorBi& t) {
    const auto& w = wedge_table(alg);
    Element out;
    for (std::size_t n = 0; n < 36; ++n)
        if (!t.c[n].is_zero()) out += times(alg, t.c[n], w[n]);
    return out;
}

TwoFormTensor pi12(const Algebra& alg, const TensorTri& t) {
    const auto& w = wedge_table(alg);
    TwoFormTensor out;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            for (int k = 0; k < 6; ++k) {
                const Element& e = t.at(i, j, k);
                if (!e.is_zero()) out[static_cast<std::size_t>(k)] += times(alg, e, w[static_cast<std::size_t>(6 * i + j)]);
            }
    return out;
}

Sigma Sigma::from_matrix(const Matrix& m) {
    if (m.size() != 36) throw std::invalid_argument("flip matrix must be 36x36");
    Sigma s;
    for (int r = 0; r < 36; ++r)
        for (int c = 0; c < 36; ++c)
            if (!m(r, c).is_zero()) s.images_[static_cast<std::size_t>(r)].c[static_cast<std::size_t>(c)] = Element(m(r, c));
    return s;
}

Sigma Sigma::from_images(std::array<TensorBi, 36> images) {
    Sigma s;
    s.images_ = std::move(images);
    return s;
}

TensorBi Sigma::apply(const Algebra& alg, const TensorBi& t) const {
    TensorBi r;
    for (std::size_t n = 0; n < 36; ++n) {
        if (t.c[n].is_zero()) continue;
        const TensorBi& img = images_[n];
        for (std::size_t k = 0; k < 36; ++k)
            if (!img.c[k].is_zero()) r.c[k] += times(alg, t.c[n], img.c[k]);
    }
    return r;
}

TensorTri Sigma::apply12(const Algebra& alg, const TensorTri& t) const {
    TensorTri r;
    for (int ij = 0; ij < 36; ++ij)
        for (int k = 0; k < 6; ++k) {
            const Element& e = t.c[static_cast<std::size_t>(6 * ij + k)];
            if (e.is_zero()) continue;
            const TensorBi& img = images_[static_cast<std::size_t>(ij)];
            for (int pr = 0; pr < 36; ++pr)
                if (!img.c[static_cast<std::size_t>(pr)].is_zero())
                    r.c[static_cast<std::size_t>(6 * pr + k)] += times(alg, e, img.c[static_cast<std::size_t>(pr)]);
        }
    return r;
}

TensorTri Sigma::apply23(const Algebra& alg, const TensorTri& t) const {
    TensorTri r;
    for (int i = 0; i < 6; ++i)
        for (int jk = 0; jk < 36; ++jk) {
            const Element& e = t.c[static_cast<std::size_t>(36 * i + jk)];
            if (e.is_zero()) continue;
            const TensorBi& img = images_[static_cast<std::size_t>(jk)];
            for (int pr = 0; pr < 36; ++pr) {
                const Element& c = img.c[static_cast<std::size_t>(pr)];
                if (c.is_zero()) continue;
                const auto w = move_past_letter(alg, i, c);
                for (int m = 0; m < 6; ++m)
                    if (!w[static_cast<std::size_t>(m)].is_zero())
                        r.c[static_cast<std::size_t>(36 * m + pr)] += times(alg, e, w[static_cast<std::size_t>(m)]);
            }
        }
    return r;
}

Matrix block_flip_matrix(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d) {
    Matrix m(36);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l) {
                    const int src = pair_index(i, j);
                    const int dst = pair_index(k, l);
                    if (a.size()) m(6 * i + j, 6 * k + l) = a(src, dst);
                    if (b.size()) m(6 * (3 + i) + 3 + j, 6 * (3 + k) + 3 + l) = b(src, dst);
                    if (c.size()) m(6 * i + 3 + j, 6 * (3 + k) + l) = c(src, dst);
                    if (d.size()) m(6 * (3 + i) + j, 6 * k + 3 + l) = d(src, dst);
                }
    return m;
}

Element MetricTable::eval(const Algebra& alg, const TensorBi& t) const {
    Element out;
    for (std::size_t n = 0; n < 36; ++n)
        if (!t.c[n].is_zero() && !values[n].is_zero()) out += times(alg, t.c[n], values[n]);
    return out;
}

Element MetricTable::contract23(const Algebra& alg, const TensorTri& t) const {
    Element out;
    for (int i = 0; i < 6; ++i)
        for (int jk = 0; jk < 36; ++jk) {
            const Element& e = t.c[static_cast<std::size_t>(36 * i + jk)];
            const Element& g = values[static_cast<std::size_t>(jk)];
            if (e.is_zero() || g.is_zero()) continue;
            // f omega^i g(omega^j (x) omega^k): move the value left of the letter.
            const auto w = move_past_letter(alg, i, g);
            for (int m = 0; m < 6; ++m)
                if (!w[static_cast<std::size_t>(m)].is_zero())
                    out += times(alg, times(alg, e, w[static_cast<std::size_t>(m)]), form_letter(m));
        }
    return out;
}

MetricTable coordinate_metric(const Algebra& alg) {
    const Scalar q = Scalar::q();
    Monomial a2;
    a2.alpha = 2;
    const Element alpha2 = Element::monomial(a2);
    const Element r2 = alg.power(Element::generator(Gen::R), 2);
    const Element lam2 = alg.power(Element::generator(Gen::Lam), 2);
    const Element laminv2 = alg.power(Element::generator(Gen::LamInv), 2);
    const Element plain = q.inverse() * alg.mul(alpha2, r2, lam2);
    const Element barred = q.pow(3) * alg.mul(alpha2, r2, laminv2);
    MetricTable t;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const Scalar& g = alg.metric().upper(i, j);
            if (g.is_zero()) continue;
            t.values[static_cast<std::size_t>(6 * i + j)] = g * plain;
            t.values[static_cast<std::size_t>(6 * (3 + i) + 3 + j)] = g * barred;
        }
    return t;
}

TensorBi tensor_involution(const Algebra& alg, const Sigma& sigma, const TensorBi& t) {
    std::array<Element, 6> star;
    for (int l = 0; l < 6; ++l) star[static_cast<std::size_t>(l)] = alg.involution(form_letter(l));
    TensorBi pre;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            const Element& f = t.at(i, j);
            if (f.is_zero()) continue;
            const Element right = alg.mul(star[static_cast<std::size_t>(i)], alg.involution(f));
            pre += tensor(alg, star[static_cast<std::size_t>(j)], right);
        }
    return sigma.apply(alg, pre);
}

}  // namespace qeuclid
