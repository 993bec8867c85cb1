#include "qeuclid/geom.hpp"

#include <stdexcept>

namespace qeuclid {

namespace {

Element gen(Gen g) { return Element::generator(g); }

Element mono(int lam, int rad, int x0, int xm = 0, int xp = 0) {
    Monomial m;
    m.lam = static_cast<std::int16_t>(lam);
    m.rad = static_cast<std::int16_t>(rad);
    m.x0 = static_cast<std::int16_t>(x0);
    m.xm = static_cast<std::uint16_t>(xm);
    m.xp = static_cast<std::uint16_t>(xp);
    return Element::monomial(m);
}

Element symbolic_alpha(int k) {
    Monomial m;
    m.alpha = static_cast<std::int16_t>(k);
    return Element::monomial(m);
}

Element times(const Algebra& alg, const Element& a, const Element& b) {
    if (a.is_zero() || b.is_zero()) return {};
    return alg.mul(a, b);
}

bool same_block(int a, int b) { return (a < 3) == (b < 3); }

}  // namespace

std::string to_string(SChoice s) { return s == SChoice::qR ? "qR" : "qRinv"; }

std::string to_string(Calculus c) {
    switch (c) {
        case Calculus::unbarred: return "unbarred";
        case Calculus::barred: return "barred";
        case Calculus::enlarged: return "enlarged";
    }
    return "";
}

Matrix s_matrix(const Algebra& alg, SChoice s) {
    const Scalar q = Scalar::q();
    return s == SChoice::qR ? alg.rhat().scaled(q) : alg.rhat_inv().scaled(q.inverse());
}

Matrix frame_flip_matrix(const Algebra& alg, const Connection& conn) {
    const Scalar q = Scalar::q();
    const Matrix s = s_matrix(alg, conn.sigma);
    const SChoice other = conn.sigma == SChoice::qR ? SChoice::qRinv : SChoice::qR;
    const Matrix sbar = conn.calculus == Calculus::enlarged ? s_matrix(alg, other) : s;
    return block_flip_matrix(s, sbar, alg.rhat_inv().scaled(q), alg.rhat().scaled(q.inverse()));
}

Element substitute_alpha(const Element& a, const Scalar& alpha) {
    Element out;
    for (const auto& [m, c] : a.terms()) {
        Monomial f = m;
        const int k = f.alpha;
        f.alpha = 0;
        out.add_term(f, c * alpha.pow(k));
    }
    return out;
}

Element invert_monomial(const Algebra& alg, const Element& m) {
    if (m.size() != 1) throw std::domain_error("not a monomial: " + m.to_string());
    const auto& [mon, c] = *m.terms().begin();
    if (!mon.is_function() || mon.xm != 0 || mon.xp != 0)
        throw std::domain_error("monomial is not invertible: " + m.to_string());
    Monomial a;
    a.alpha = static_cast<std::int16_t>(-mon.alpha);
    return c.inverse() * alg.mul(mono(0, 0, -mon.x0), mono(0, -mon.rad, 0), mono(-mon.lam, 0, 0), Element::monomial(a));
}

ElementMatrix left_inverse_triangular(const Algebra& alg, const ElementMatrix& m) {
    auto at = [&](int r, int c) -> const Element& { return m[static_cast<std::size_t>(3 * r + c)]; };
    bool lower = true;
    bool upper = true;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            if (c > r && !at(r, c).is_zero()) lower = false;
            if (c < r && !at(r, c).is_zero()) upper = false;
        }
    if (!lower && !upper) throw std::domain_error("matrix is not triangular");
    ElementMatrix n;
    std::array<Element, 3> diag_inv;
    for (int j = 0; j < 3; ++j) diag_inv[static_cast<std::size_t>(j)] = invert_monomial(alg, at(j, j));
    for (int i = 0; i < 3; ++i)
        for (int step = 0; step < 3; ++step) {
            const int j = lower ? 2 - step : step;
            Element acc = i == j ? Element(1) : Element();
            for (int a = 0; a < 3; ++a) {
                if (lower ? a <= j : a >= j) continue;
                acc -= times(alg, n[static_cast<std::size_t>(3 * i + a)], at(a, j));
            }
            n[static_cast<std::size_t>(3 * i + j)] = times(alg, acc, diag_inv[static_cast<std::size_t>(j)]);
        }
    return n;
}

Geometry::Geometry(const Algebra& alg, std::optional<Scalar> alpha) : alg_(&alg), alpha_(std::move(alpha)) {
    const Scalar q = Scalar::q();
    const Scalar s = Scalar::sqrtq();
    const Scalar one(1);
    forms_ = InvariantForms::build(alg);

    auto xi = [](int i) { return form_letter(i); };
    const Element pre = alg.mul(symbolic_alpha(-1), mono(-1, 0, 0));
    frame_[0] = alg.mul(pre, mono(0, 0, -1), xi(0));
    frame_[1] = alg.mul(pre, mono(0, -1, 0),
                        (s * (q + one)) * alg.mul(mono(0, 0, -1, 0, 1), xi(0)) + xi(1));
    frame_[2] = alg.mul(pre, mono(0, -2, 0),
                        -(s * q * (q + one)) * alg.mul(mono(0, 0, -1, 0, 2), xi(0)) -
                            (q + one) * alg.mul(gen(Gen::Xp), xi(1)) + alg.mul(gen(Gen::X0), xi(2)));
    const Element bpre = q.inverse() * alg.mul(symbolic_alpha(-1), mono(1, 0, 0));
    const Scalar qi1 = q.inverse() + one;
    frame_[3] = alg.mul(bpre, mono(0, -2, 0),
                        alg.mul(gen(Gen::X0), xi(3)) - qi1 * alg.mul(gen(Gen::Xm), xi(4)) -
                            (s.inverse() * q.inverse() * qi1) * alg.mul(mono(0, 0, -1, 2, 0), xi(5)));
    frame_[4] = alg.mul(bpre, mono(0, -1, 0), xi(4) + (s.inverse() * qi1) * alg.mul(mono(0, 0, -1, 1, 0), xi(5)));
    frame_[5] = alg.mul(bpre, mono(0, 0, -1), xi(5));

    const Scalar hinv = Scalar::h().inverse();
    const Element la = alg.mul(mono(1, 0, 0), symbolic_alpha(1));
    lambda_[0] = (hinv * q) * alg.mul(la, mono(0, 0, -1, 0, 1));
    lambda_[1] = -(hinv * s) * alg.mul(la, mono(0, 1, -1));
    lambda_[2] = -hinv * alg.mul(la, mono(0, 0, -1, 1, 0));
    const Element laminv2 = mono(-2, 0, 0);
    lambda_[3] = alg.mul(laminv2, lambda_[0]);
    lambda_[4] = -alg.mul(laminv2, lambda_[1]);
    lambda_[5] = alg.mul(laminv2, lambda_[2]);

    for (auto& f : frame_) f = fix_alpha(f);
    for (auto& l : lambda_) l = fix_alpha(l);

    for (int a = 0; a < 3; ++a) {
        const Element lt = alg.mul(gen(Gen::Lam), frame_[static_cast<std::size_t>(a)]);
        const Element lbt = alg.mul(gen(Gen::LamInv), frame_[static_cast<std::size_t>(3 + a)]);
        for (int i = 0; i < 3; ++i) {
            t_[static_cast<std::size_t>(3 * a + i)] = lt.letter_coefficient(i);
            tbar_[static_cast<std::size_t>(3 * a + i)] = lbt.letter_coefficient(3 + i);
        }
    }

    static const Gen xs[] = {Gen::Xm, Gen::X0, Gen::Xp};
    const Element pre_e = q.inverse() * gen(Gen::LamInv);
    for (int a = 0; a < 3; ++a)
        for (int i = 0; i < 3; ++i)
            e_[static_cast<std::size_t>(3 * a + i)] =
                alg.mul(pre_e, alg.commutator(lambda_[static_cast<std::size_t>(a)], gen(xs[i])));

    const ElementMatrix inv = left_inverse_triangular(alg, t_);
    const ElementMatrix binv = left_inverse_triangular(alg, tbar_);
    for (int i = 0; i < 3; ++i)
        for (int a = 0; a < 3; ++a) {
            a_[static_cast<std::size_t>(6 * i + a)] = times(alg, inv[static_cast<std::size_t>(3 * i + a)], gen(Gen::Lam));
            a_[static_cast<std::size_t>(6 * (3 + i) + 3 + a)] =
                times(alg, binv[static_cast<std::size_t>(3 * i + a)], gen(Gen::LamInv));
        }
    for (int a = 0; a < 6; ++a)
        for (int k = 0; k < 6; ++k)
            c_[static_cast<std::size_t>(6 * a + k)] = frame_[static_cast<std::size_t>(a)].letter_coefficient(k);

    aa_.resize(36 * 36);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            for (int a = 0; a < 6; ++a)
                for (int b = 0; b < 6; ++b)
                    aa_[static_cast<std::size_t>(36 * (6 * i + j) + 6 * a + b)] =
                        times(alg, a_[static_cast<std::size_t>(6 * i + a)], a_[static_cast<std::size_t>(6 * j + b)]);
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b)
            frame_basis_[static_cast<std::size_t>(6 * a + b)] =
                tensor(alg, frame_[static_cast<std::size_t>(a)], frame_[static_cast<std::size_t>(b)]);
}

Element Geometry::alpha_power(int k) const {
    if (alpha_) return Element(alpha_->pow(k));
    return symbolic_alpha(k);
}

Element Geometry::fix_alpha(const Element& a) const { return alpha_ ? substitute_alpha(a, *alpha_) : a; }

ElementMatrix Geometry::vielbein_display() const {
    const Algebra& alg = *alg_;
    const Scalar q = Scalar::q();
    const Scalar s = Scalar::sqrtq();
    const Scalar one(1);
    ElementMatrix m;
    m[0] = gen(Gen::X0);
    m[3] = -(s + s.inverse()) * gen(Gen::Xp);
    m[4] = gen(Gen::R);
    m[6] = -(s * (q + one)) * mono(0, 0, -1, 0, 2);
    m[7] = (q + one) * alg.mul(gen(Gen::R), mono(0, 0, -1), gen(Gen::Xp));
    m[8] = alg.mul(mono(0, 2, 0), mono(0, 0, -1));
    const Element a = alpha_power(1);
    ElementMatrix out;
    for (int i = 0; i < 3; ++i)
        for (int b = 0; b < 3; ++b) {
            const Element& e = m[static_cast<std::size_t>(3 * i + b)];
            if (!e.is_zero()) out[static_cast<std::size_t>(3 * b + i)] = alg.mul(a, e);
        }
    return out;
}

Element Geometry::frame_derivative(int a, const Element& f) const {
    return alg_->commutator(lambda_.at(static_cast<std::size_t>(a)), f);
}

BasicRelations check_basic_relations(const Geometry& geo) {
    const Algebra& alg = geo.algebra();
    const Matrix& r = alg.rhat();
    const ElementMatrix& t = geo.theta_coefficients(false);
    auto coef = [&](int a, int i) -> const Element& { return t[static_cast<std::size_t>(3 * a + i)]; };
    BasicRelations out;
    out.lower_triangular = true;
    for (int a = 0; a < 3; ++a)
        for (int i = a + 1; i < 3; ++i)
            if (!coef(a, i).is_zero()) out.lower_triangular = false;
    for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    if (pair_index(i, j) > pair_index(k, l) && !r(pair_index(l, k), pair_index(i, j)).is_zero())
                        out.lower_triangular = false;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    Element lhs;
                    Element rhs;
                    for (int c = 0; c < 3; ++c)
                        for (int d = 0; d < 3; ++d) {
                            const Scalar& x = r(pair_index(a, b), pair_index(c, d));
                            if (!x.is_zero() && !coef(d, j).is_zero() && !coef(c, i).is_zero())
                                lhs += x * alg.mul(coef(d, j), coef(c, i));
                            const Scalar& y = r(pair_index(c, d), pair_index(i, j));
                            if (!y.is_zero() && !coef(b, d).is_zero() && !coef(a, c).is_zero())
                                rhs += y * alg.mul(coef(b, d), coef(a, c));
                        }
                    ++out.total;
                    const bool above = pair_index(i, j) > pair_index(b, a);
                    if (above) {
                        ++out.triangular;
                        if (lhs.is_zero() && rhs.is_zero()) continue;
                    } else {
                        ++out.checked;
                        if (lhs == rhs) continue;
                    }
                    ++out.failures;
                    out.failing.push_back("(" + std::to_string(a) + std::to_string(b) + "|" + std::to_string(i) +
                                          std::to_string(j) + ") " + (lhs - rhs).to_string());
                }
    return out;
}

Matrix mixed_frame_relation(const Geometry& geo) {
    const Algebra& alg = geo.algebra();
    const auto& fr = geo.frame();
    const auto& a = geo.to_frame_matrix();
    // bar theta^c theta^d = N^{cd}_{ab} theta^a bar theta^b, then M = N^-1.
    Matrix n(9);
    for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) {
            const Element w = alg.mul(fr[static_cast<std::size_t>(3 + c)], fr[static_cast<std::size_t>(d)]);
            for (int e = 0; e < 3; ++e)
                for (int f = 0; f < 3; ++f) {
                    Element k;
                    for (int i = 0; i < 3; ++i)
                        for (int j = 0; j < 3; ++j) {
                            const Element part = w.mask_coefficient((1 << i) | (1 << (3 + j)));
                            if (part.is_zero()) continue;
                            k += alg.mul(part, a[static_cast<std::size_t>(6 * i + e)],
                                         a[static_cast<std::size_t>(6 * (3 + j) + 3 + f)]);
                        }
                    k = geo.fix_alpha(k);
                    const Scalar value = k.coefficient(Monomial{});
                    if (!(k == Element(value))) throw std::domain_error("mixed frame relation is not constant");
                    n(pair_index(c, d), pair_index(e, f)) = value;
                }
        }
    return n.inverse();
}

Element partial(const Algebra& alg, const InvariantForms& forms, int i, const Element& f) {
    const Element h = differential(alg, forms, alg.involution(f), Which::dbar).letter_coefficient(3 + 2 - i);
    return alg.metric().lower(2 - i, i).inverse() * alg.involution(h);
}

std::array<Element, 6> Geometry::frame_components(const Element& one_form) const {
    const auto parts = split_one_form(one_form);
    std::array<Element, 6> out;
    for (int i = 0; i < 6; ++i) {
        if (parts[static_cast<std::size_t>(i)].is_zero()) continue;
        for (int a = 0; a < 6; ++a)
            out[static_cast<std::size_t>(a)] +=
                times(*alg_, parts[static_cast<std::size_t>(i)], a_[static_cast<std::size_t>(6 * i + a)]);
    }
    return out;
}

Element Geometry::from_frame_components(const std::array<Element, 6>& comps) const {
    Element out;
    for (int a = 0; a < 6; ++a)
        out += times(*alg_, comps[static_cast<std::size_t>(a)], frame_[static_cast<std::size_t>(a)]);
    return out;
}

TensorBi Geometry::to_frame(const TensorBi& t) const {
    TensorBi f;
    for (int ij = 0; ij < 36; ++ij) {
        const Element& c = t.c[static_cast<std::size_t>(ij)];
        if (c.is_zero()) continue;
        for (int ab = 0; ab < 36; ++ab) {
            const Element& p = aa_[static_cast<std::size_t>(36 * ij + ab)];
            if (!p.is_zero()) f.c[static_cast<std::size_t>(ab)] += alg_->mul(c, p);
        }
    }
    return f;
}

TensorBi Geometry::from_frame(const TensorBi& f) const {
    TensorBi t;
    for (int ab = 0; ab < 36; ++ab) {
        const Element& c = f.c[static_cast<std::size_t>(ab)];
        if (!c.is_zero()) t += left_multiply(*alg_, c, frame_basis_[static_cast<std::size_t>(ab)]);
    }
    return t;
}

MetricTable Geometry::metric() const {
    const IsoMetric& g = alg_->metric();
    MetricTable m;
    for (int ij = 0; ij < 36; ++ij)
        for (int a = 0; a < 6; ++a)
            for (int b = 0; b < 6; ++b) {
                const Scalar& gab = g.upper(a % 3, b % 3);
                const Element& p = aa_[static_cast<std::size_t>(36 * ij + 6 * a + b)];
                if (!gab.is_zero() && !p.is_zero()) m.values[static_cast<std::size_t>(ij)] += gab * p;
            }
    return m;
}

TensorBi apply_frame_matrix(const Matrix& m, const TensorBi& f) {
    TensorBi out;
    for (int ab = 0; ab < 36; ++ab) {
        const Element& c = f.c[static_cast<std::size_t>(ab)];
        if (c.is_zero()) continue;
        for (int cd = 0; cd < 36; ++cd)
            if (!m(ab, cd).is_zero()) out.c[static_cast<std::size_t>(cd)] += m(ab, cd) * c;
    }
    return out;
}

TensorTri apply_frame_matrix12(const Matrix& m, const TensorTri& f) {
    TensorTri out;
    for (int ab = 0; ab < 36; ++ab)
        for (int k = 0; k < 6; ++k) {
            const Element& c = f.c[static_cast<std::size_t>(6 * ab + k)];
            if (c.is_zero()) continue;
            for (int cd = 0; cd < 36; ++cd)
                if (!m(ab, cd).is_zero()) out.c[static_cast<std::size_t>(6 * cd + k)] += m(ab, cd) * c;
        }
    return out;
}

TensorTri apply_frame_matrix23(const Matrix& m, const TensorTri& f) {
    TensorTri out;
    for (int i = 0; i < 6; ++i)
        for (int ab = 0; ab < 36; ++ab) {
            const Element& c = f.c[static_cast<std::size_t>(36 * i + ab)];
            if (c.is_zero()) continue;
            for (int cd = 0; cd < 36; ++cd)
                if (!m(ab, cd).is_zero()) out.c[static_cast<std::size_t>(36 * i + cd)] += m(ab, cd) * c;
        }
    return out;
}

LinearConnection::LinearConnection(const Geometry& geo, Connection conn)
    : LinearConnection(geo, conn, frame_flip_matrix(geo.algebra(), conn)) {}

LinearConnection::LinearConnection(const Geometry& geo, Connection conn, Matrix frame_flip)
    : geo_(&geo), conn_(conn), frame_m_(std::move(frame_flip)) {
    std::array<TensorBi, 36> images;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            images[static_cast<std::size_t>(6 * i + j)] =
                geo.from_frame(apply_frame_matrix(frame_m_, geo.to_frame(TensorBi::basis(i, j))));
    sigma_ = Sigma::from_images(std::move(images));
    for (int l = 0; l < 6; ++l) {
        if (allows(Which::d)) d_letter_[static_cast<std::size_t>(l)] = derivative_unchecked(form_letter(l), Which::d);
        if (allows(Which::dbar))
            dbar_letter_[static_cast<std::size_t>(l)] = derivative_unchecked(form_letter(l), Which::dbar);
    }
}

bool LinearConnection::allows(Which w) const {
    switch (conn_.calculus) {
        case Calculus::unbarred: return w == Which::d;
        case Calculus::barred: return w == Which::dbar;
        case Calculus::enlarged: return true;
    }
    return false;
}

Which LinearConnection::letter_calculus(int letter) const { return letter < 3 ? Which::d : Which::dbar; }

void LinearConnection::check_form(const Element& one_form, Which w) const {
    if (!allows(w)) throw std::invalid_argument("derivative not available in the " + to_string(conn_.calculus) + " calculus");
    if (conn_.calculus == Calculus::enlarged) return;
    const auto parts = split_one_form(one_form);
    for (int l = 0; l < 6; ++l)
        if (!parts[static_cast<std::size_t>(l)].is_zero() && letter_calculus(l) != w)
            throw std::invalid_argument("form mixes calculi: " + one_form.to_string());
}

TensorBi LinearConnection::derivative_unchecked(const Element& one_form, Which w) const {
    const Algebra& alg = geo_->algebra();
    const Element& th = geo_->forms().dirac(w);
    return sigma_.apply(alg, tensor(alg, one_form, th)) - tensor(alg, th, one_form);
}

TensorBi LinearConnection::derivative(const Element& one_form, Which w) const {
    check_form(one_form, w);
    return derivative_unchecked(one_form, w);
}

TensorTri LinearConnection::derivative2(const TensorBi& t, Which w) const {
    if (!allows(w)) throw std::invalid_argument("derivative not available in the " + to_string(conn_.calculus) + " calculus");
    const Algebra& alg = geo_->algebra();
    const auto& dl = w == Which::d ? d_letter_ : dbar_letter_;
    TensorTri out;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            const Element& f = t.at(i, j);
            if (f.is_zero()) continue;
            const Element fw = alg.mul(f, form_letter(i));
            const TensorBi first = derivative_unchecked(fw, w);
            for (int k = 0; k < 6; ++k)
                for (int l = 0; l < 6; ++l)
                    if (!first.at(k, l).is_zero()) out.at(k, l, j) += first.at(k, l);
            const TensorBi& dj = dl[static_cast<std::size_t>(j)];
            if (!dj.is_zero()) out += sigma_.apply12(alg, tensor(alg, fw, dj));
        }
    return out;
}

TwoFormTensor LinearConnection::curvature_direct(const Element& one_form, Which w) const {
    return pi12(geo_->algebra(), derivative2(derivative(one_form, w), w));
}

TensorTri LinearConnection::frame_curvature_tensor(const Element& one_form, Which w) const {
    check_form(one_form, w);
    const Algebra& alg = geo_->algebra();
    const auto comps = geo_->frame_components(one_form);
    const int base = w == Which::d ? 0 : 3;
    const auto& lam = geo_->lambda();
    TensorTri x;
    for (int a = 0; a < 6; ++a) {
        const Element& xa = comps[static_cast<std::size_t>(a)];
        if (xa.is_zero()) continue;
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c)
                x.at(a, base + b, base + c) =
                    alg.mul(xa, lam[static_cast<std::size_t>(base + b)], lam[static_cast<std::size_t>(base + c)]);
    }
    return apply_frame_matrix12(frame_m_, apply_frame_matrix23(frame_m_, apply_frame_matrix12(frame_m_, x)));
}

TwoFormTensor LinearConnection::curvature_frame(const Element& one_form, Which w) const {
    const Algebra& alg = geo_->algebra();
    const auto& fr = geo_->frame();
    const TensorTri x = frame_curvature_tensor(one_form, w);
    TwoFormTensor out;
    for (int d = 0; d < 6; ++d)
        for (int e = 0; e < 6; ++e) {
            Element wedge;
            for (int f = 0; f < 6; ++f) {
                const Element& c = x.at(d, e, f);
                if (c.is_zero()) continue;
                if (wedge.is_zero()) wedge = alg.mul(fr[static_cast<std::size_t>(d)], fr[static_cast<std::size_t>(e)]);
                out[static_cast<std::size_t>(f)] += times(alg, c, wedge);
            }
        }
    const Element& th = geo_->forms().dirac(w);
    const Element th2 = alg.mul(th, th);
    if (!th2.is_zero()) {
        const auto comps = geo_->frame_components(one_form);
        for (int a = 0; a < 6; ++a) out[static_cast<std::size_t>(a)] += times(alg, comps[static_cast<std::size_t>(a)], th2);
    }
    return out;
}

std::array<Element, 6> LinearConnection::ricci(const Element& one_form, Which w) const {
    const Algebra& alg = geo_->algebra();
    const TensorTri x = frame_curvature_tensor(one_form, w);
    const Matrix& pa = alg.projectors().pa;
    const Scalar half = Scalar::fraction(1, 2);
    // Lift of the 2-form slots: P_a on the pure blocks, (1 - sigma)/2 on the mixed ones.
    TensorTri lift;
    for (int c = 0; c < 6; ++c)
        for (int d = 0; d < 6; ++d)
            for (int k = 0; k < 6; ++k) {
                const Element& v = x.at(c, d, k);
                if (v.is_zero()) continue;
                const int cd = 6 * c + d;
                if (same_block(c, d)) {
                    const int off = c < 3 ? 0 : 3;
                    for (int e = 0; e < 3; ++e)
                        for (int f = 0; f < 3; ++f) {
                            const Scalar& p = pa(pair_index(c - off, d - off), pair_index(e, f));
                            if (!p.is_zero()) lift.at(off + e, off + f, k) += p * v;
                        }
                } else {
                    lift.at(c, d, k) += half * v;
                    for (int ef = 0; ef < 36; ++ef)
                        if (!frame_m_(cd, ef).is_zero()) lift.c[static_cast<std::size_t>(6 * ef + k)] -= (half * frame_m_(cd, ef)) * v;
                }
            }
    const IsoMetric& g = alg.metric();
    std::array<Element, 6> out;
    for (int c = 0; c < 6; ++c)
        for (int d = 0; d < 6; ++d)
            for (int b = 0; b < 6; ++b) {
                const Scalar& gdb = g.upper(d % 3, b % 3);
                const Element& v = lift.at(c, d, b);
                if (!gdb.is_zero() && !v.is_zero()) out[static_cast<std::size_t>(c)] -= gdb * v;
            }
    return out;
}

Element LinearConnection::torsion(int frame_letter) const {
    const Which w = letter_calculus(frame_letter);
    const Algebra& alg = geo_->algebra();
    const Element& th = geo_->frame()[static_cast<std::size_t>(frame_letter)];
    return differential(alg, geo_->forms(), th, w) - pi_project(alg, derivative(th, w));
}

std::optional<Scalar> compatibility_factor(const Matrix& s1, const Matrix& s2, const IsoMetric& g) {
    std::optional<Scalar> kappa;
    for (int a = 0; a < 3; ++a)
        for (int c = 0; c < 3; ++c)
            for (int b = 0; b < 3; ++b)
                for (int d = 0; d < 3; ++d) {
                    Scalar x;
                    for (int e = 0; e < 3; ++e)
                        for (int f = 0; f < 3; ++f)
                            for (int h = 0; h < 3; ++h) {
                                const Scalar& u = s1(pair_index(a, e), pair_index(d, f));
                                const Scalar& v = s2(pair_index(c, b), pair_index(e, h));
                                if (u.is_zero() || v.is_zero() || g.upper(f, h).is_zero()) continue;
                                x += u * g.upper(f, h) * v;
                            }
                    const Scalar target = b == d ? g.upper(a, c) : Scalar();
                    if (target.is_zero()) {
                        if (!x.is_zero()) return std::nullopt;
                        continue;
                    }
                    const Scalar k = x / target;
                    if (kappa && !(*kappa == k)) return std::nullopt;
                    kappa = k;
                }
    return kappa;
}

}  // namespace qeuclid
