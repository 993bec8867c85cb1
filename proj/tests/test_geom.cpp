#include <doctest.h>

#include "qeuclid/geom.hpp"

using namespace qeuclid;

namespace {

const Scalar q = Scalar::q();
const Scalar s = Scalar::sqrtq();
const Scalar h = Scalar::h();
const Scalar one(1);

const Algebra& alg() {
    static const Algebra a;
    return a;
}

const Geometry& geo() {
    static const Geometry g(alg());
    return g;
}

Element g(Gen x) { return Element::generator(x); }

Element x(int i) {
    static const Gen gens[] = {Gen::Xm, Gen::X0, Gen::Xp};
    return g(gens[i]);
}

Element xi(int i) { return form_letter(i); }
Element bxi(int i) { return form_letter(3 + i); }

template <typename... T>
Element mul(const T&... a) {
    return alg().mul(a...);
}

Element pw(Gen x, int n) { return alg().power(g(x), n); }

Element d(const Element& a) { return differential(alg(), geo().forms(), a); }
Element dbar(const Element& a) { return differential(alg(), geo().forms(), a, Which::dbar); }

Element theta_coef(int a, int i) { return geo().theta_coefficients(false)[static_cast<std::size_t>(3 * a + i)]; }
Element e(int i, int a) { return geo().vielbein()[static_cast<std::size_t>(3 * a + i)]; }

const std::vector<Connection>& configurations() {
    static const std::vector<Connection> all = [] {
        std::vector<Connection> v;
        for (SChoice sc : {SChoice::qR, SChoice::qRinv})
            for (Calculus c : {Calculus::unbarred, Calculus::barred, Calculus::enlarged}) v.push_back({sc, c});
        return v;
    }();
    return all;
}

std::vector<Which> derivatives(const LinearConnection& lc) {
    std::vector<Which> out;
    for (Which w : {Which::d, Which::dbar})
        if (lc.allows(w)) out.push_back(w);
    return out;
}

Element letter_for(Which w, int i) { return w == Which::d ? xi(i) : bxi(i); }

}  // namespace

TEST_CASE("frame forms match the closed expressions") {
    const Element pre = mul(g(Gen::AlphaInv), g(Gen::LamInv));
    const Element th_m = mul(pre, g(Gen::X0Inv), xi(0));
    const Element th_0 =
        mul(pre, g(Gen::RInv), (s * (q + one)) * mul(g(Gen::X0Inv), x(2), xi(0)) + xi(1));
    const Element th_p = mul(pre, pw(Gen::RInv, 2),
                             -(s * q * (q + one)) * mul(g(Gen::X0Inv), pw(Gen::Xp, 2), xi(0)) -
                                 (q + one) * mul(x(2), xi(1)) + mul(x(1), xi(2)));
    CHECK(geo().frame()[0] == th_m);
    CHECK(geo().frame()[1] == th_0);
    CHECK(geo().frame()[2] == th_p);

    const Element bpre = q.inverse() * mul(g(Gen::AlphaInv), g(Gen::Lam));
    const Element bth_m = mul(bpre, pw(Gen::RInv, 2),
                              mul(x(1), bxi(0)) - (q.inverse() + one) * mul(x(0), bxi(1)) -
                                  (s.inverse() * q.inverse() * (q.inverse() + one)) *
                                      mul(g(Gen::X0Inv), pw(Gen::Xm, 2), bxi(2)));
    const Element bth_0 =
        mul(bpre, g(Gen::RInv), bxi(1) + (s.inverse() * (q.inverse() + one)) * mul(g(Gen::X0Inv), x(0), bxi(2)));
    const Element bth_p = mul(bpre, g(Gen::X0Inv), bxi(2));
    CHECK(geo().frame()[3] == bth_m);
    CHECK(geo().frame()[4] == bth_0);
    CHECK(geo().frame()[5] == bth_p);
}

TEST_CASE("lambda elements match the closed expressions") {
    const Element la = mul(g(Gen::Lam), g(Gen::Alpha), g(Gen::X0Inv));
    const Element lm = (h.inverse() * q) * mul(la, x(2));
    const Element l0 = -(h.inverse() * s) * mul(la, g(Gen::R));
    const Element lp = -h.inverse() * mul(la, x(0));
    CHECK(geo().lambda()[0] == lm);
    CHECK(geo().lambda()[1] == l0);
    CHECK(geo().lambda()[2] == lp);
    const Element lam2 = pw(Gen::LamInv, 2);
    CHECK(geo().lambda()[3] == mul(lam2, lm));
    CHECK(geo().lambda()[4] == -mul(lam2, l0));
    CHECK(geo().lambda()[5] == mul(lam2, lp));
}

TEST_CASE("frame forms commute with coordinates, radius and dilatator") {
    std::vector<Element> fs = {x(0), x(1), x(2), g(Gen::R), g(Gen::RInv), g(Gen::X0Inv), g(Gen::Lam), g(Gen::LamInv)};
    int checked = 0;
    for (const Element& th : geo().frame())
        for (const Element& f : fs) {
            CHECK(alg().commutator(th, f).is_zero());
            ++checked;
        }
    CHECK(checked == 48);
}

TEST_CASE("Dirac forms decompose along the frame") {
    Element th;
    Element bth;
    for (int a = 0; a < 3; ++a) {
        th -= mul(geo().lambda()[static_cast<std::size_t>(a)], geo().frame()[static_cast<std::size_t>(a)]);
        bth -= mul(geo().lambda()[static_cast<std::size_t>(3 + a)], geo().frame()[static_cast<std::size_t>(3 + a)]);
    }
    CHECK(th == geo().forms().theta);
    CHECK(bth == geo().forms().bar_theta);
    const Element eta = geo().forms().eta;
    CHECK(th == ((q - one).inverse() * q * q) * mul(pw(Gen::RInv, 2), eta));
}

TEST_CASE("coefficient equations of the frame") {
    const BasicRelations b = check_basic_relations(geo());
    CHECK(b.lower_triangular);
    CHECK(b.total == 81);
    CHECK(b.triangular == 36);
    CHECK(b.checked == 45);
    CHECK(b.failures == 0);
}

TEST_CASE("vielbein is the inverse of the frame coefficients") {
    const ElementMatrix shown = geo().vielbein_display();
    for (int k = 0; k < 9; ++k) CHECK(shown[static_cast<std::size_t>(k)] == geo().vielbein()[static_cast<std::size_t>(k)]);
    for (int a = 0; a < 3; ++a)
        for (int i = 0; i < 3; ++i)
            CHECK(alg().commutator(geo().lambda()[static_cast<std::size_t>(a)], x(i)) == q * mul(g(Gen::Lam), e(i, a)));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Element left;
            for (int a = 0; a < 3; ++a) left += mul(e(i, a), theta_coef(a, j));
            CHECK(left == (i == j ? Element(one) : Element()));
        }
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            Element right;
            for (int j = 0; j < 3; ++j) right += mul(theta_coef(a, j), e(j, b));
            CHECK(right == (a == b ? Element(one) : Element()));
        }
}

TEST_CASE("lambda relations") {
    const auto& l = geo().lambda();
    CHECK(mul(l[0], l[1]) == q * mul(l[1], l[0]));
    CHECK(mul(l[2], l[1]) == q.inverse() * mul(l[1], l[2]));
    CHECK(alg().commutator(l[2], l[0]) == h * mul(l[1], l[1]));

    const Matrix& pa = alg().projectors().pa;
    const IsoMetric& gm = alg().metric();
    Element norm;
    for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
            Element pl;
            for (int c = 0; c < 3; ++c)
                for (int dd = 0; dd < 3; ++dd)
                    if (!pa(pair_index(c, dd), pair_index(a, b)).is_zero())
                        pl += pa(pair_index(c, dd), pair_index(a, b)) * mul(l[static_cast<std::size_t>(c)], l[static_cast<std::size_t>(dd)]);
            CHECK(pl.is_zero());
            if (!gm.upper(a, b).is_zero()) norm += gm.upper(a, b) * mul(l[static_cast<std::size_t>(a)], l[static_cast<std::size_t>(b)]);
        }
    }
    CHECK(norm == (q * h.inverse() * h.inverse()) * mul(pw(Gen::Lam, 2), pw(Gen::Alpha, 2)));
}

TEST_CASE("lambda adjoints") {
    const auto& l = geo().lambda();
    const IsoMetric& gm = alg().metric();
    for (int a = 0; a < 3; ++a) {
        Element rhs;
        for (int b = 0; b < 3; ++b)
            if (!gm.upper(a, b).is_zero()) rhs -= gm.upper(a, b) * l[static_cast<std::size_t>(3 + b)];
        CHECK(alg().involution(l[static_cast<std::size_t>(a)]) == rhs);
    }
}

TEST_CASE("vielbein obeys the RTT and gTT relations") {
    const Matrix& r = alg().rhat();
    const IsoMetric& gm = alg().metric();
    const Element r2a2 = mul(pw(Gen::R, 2), pw(Gen::Alpha, 2));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b) {
                    Element lhs;
                    Element rhs;
                    for (int k = 0; k < 3; ++k)
                        for (int l = 0; l < 3; ++l) {
                            if (!r(pair_index(i, j), pair_index(k, l)).is_zero())
                                lhs += r(pair_index(i, j), pair_index(k, l)) * mul(e(k, a), e(l, b));
                            if (!r(pair_index(k, l), pair_index(a, b)).is_zero())
                                rhs += r(pair_index(k, l), pair_index(a, b)) * mul(e(i, k), e(j, l));
                        }
                    CHECK(lhs == rhs);
                }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Element up;
            Element down;
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b) {
                    if (!gm.upper(a, b).is_zero()) up += gm.upper(a, b) * mul(e(i, a), e(j, b));
                    if (!gm.lower(a, b).is_zero()) down += gm.lower(a, b) * mul(e(a, i), e(b, j));
                }
            CHECK(up == gm.upper(i, j) * r2a2);
            CHECK(down == gm.lower(i, j) * r2a2);
        }
}

TEST_CASE("frame coefficients preserve the metric up to a factor") {
    const IsoMetric& gm = alg().metric();
    const Element kappa = mul(pw(Gen::RInv, 2), pw(Gen::AlphaInv, 2));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Element low;
            Element up;
            for (int c = 0; c < 3; ++c)
                for (int dd = 0; dd < 3; ++dd) {
                    if (!gm.lower(c, dd).is_zero()) low += gm.lower(c, dd) * mul(theta_coef(dd, j), theta_coef(c, i));
                    if (!gm.upper(c, dd).is_zero()) up += gm.upper(c, dd) * mul(theta_coef(j, dd), theta_coef(i, c));
                }
            CHECK(low == gm.lower(i, j) * kappa);
            CHECK(up == gm.upper(i, j) * kappa);
        }
}

TEST_CASE("frame forms anticommute like the coordinate forms") {
    const ProjectorTrio& p = alg().projectors();
    for (int off : {0, 3})
        for (const Matrix* m : {&p.ps, &p.pt})
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b) {
                    Element sum;
                    for (int c = 0; c < 3; ++c)
                        for (int dd = 0; dd < 3; ++dd) {
                            const Scalar& k = (*m)(pair_index(a, b), pair_index(c, dd));
                            if (!k.is_zero())
                                sum += k * mul(geo().frame()[static_cast<std::size_t>(off + c)],
                                               geo().frame()[static_cast<std::size_t>(off + dd)]);
                        }
                    CHECK(sum.is_zero());
                }
}

TEST_CASE("structure equations of the frame") {
    const Matrix& pa = alg().projectors().pa;
    const auto& fr = geo().frame();
    const auto& l = geo().lambda();
    for (int a = 0; a < 3; ++a) {
        Element rhs;
        for (int dd = 0; dd < 3; ++dd)
            for (int b = 0; b < 3; ++b)
                for (int c = 0; c < 3; ++c) {
                    const Scalar k = pa(pair_index(dd, a), pair_index(b, c)) + pa(pair_index(a, dd), pair_index(b, c));
                    if (!k.is_zero())
                        rhs += k * mul(l[static_cast<std::size_t>(dd)], fr[static_cast<std::size_t>(b)], fr[static_cast<std::size_t>(c)]);
                }
        CHECK(d(fr[static_cast<std::size_t>(a)]) == rhs);
    }
    const Element th = geo().forms().theta;
    CHECK((d(th) + mul(th, th)).is_zero());
}

TEST_CASE("frame adjoints") {
    const IsoMetric& gm = alg().metric();
    const auto& fr = geo().frame();
    for (int a = 0; a < 3; ++a) {
        Element rhs;
        for (int b = 0; b < 3; ++b)
            if (!gm.lower(b, a).is_zero()) rhs += gm.lower(b, a) * fr[static_cast<std::size_t>(3 + b)];
        CHECK(alg().involution(fr[static_cast<std::size_t>(a)]) == rhs);
    }
    CHECK(alg().involution(geo().forms().theta) == -geo().forms().bar_theta);
}

TEST_CASE("torsion vanishes in every configuration") {
    for (const Connection& c : configurations()) {
        const LinearConnection lc(geo(), c);
        for (int a = 0; a < 6; ++a) {
            const Which w = a < 3 ? Which::d : Which::dbar;
            if (!lc.allows(w)) continue;
            CAPTURE(to_string(c.sigma));
            CAPTURE(to_string(c.calculus));
            CAPTURE(a);
            CHECK(lc.torsion(a).is_zero());
        }
    }
}

TEST_CASE("covariant derivative of the coordinate forms") {
    const LinearConnection inv(geo(), {SChoice::qRinv, Calculus::unbarred});
    for (int i = 0; i < 3; ++i) CHECK(inv.derivative(xi(i)).is_zero());

    const LinearConnection lc(geo(), {SChoice::qR, Calculus::unbarred});
    const Element& th = geo().forms().theta;
    const IsoMetric& gm = alg().metric();
    TensorBi gxx;
    for (int l = 0; l < 3; ++l)
        for (int m = 0; m < 3; ++m)
            if (!gm.lower(l, m).is_zero()) gxx += gm.lower(l, m) * TensorBi::basis(l, m);
    for (int i = 0; i < 3; ++i) {
        const TensorBi thx = tensor(alg(), th, xi(i));
        const TensorBi xth = tensor(alg(), xi(i), th);
        const TensorBi last = (q * q * (one + q.inverse())) * left_multiply(alg(), mul(pw(Gen::RInv, 2), x(i)), gxx);
        const TensorBi expected = (q * q - one) * (thx + xth) - last;
        CHECK(lc.derivative(xi(i)) == expected);
        CHECK(pi_project(alg(), expected).is_zero());
        const TensorBi damped = (q * q - one) * (thx + (q * q).inverse() * xth) - last;
        CHECK_FALSE(pi_project(alg(), damped).is_zero());
    }
    CHECK_THROWS_AS(lc.derivative(bxi(0)), std::invalid_argument);
    CHECK_THROWS_AS(lc.derivative(xi(0), Which::dbar), std::invalid_argument);
}

TEST_CASE("curvature vanishes by both routes") {
    const Element f = mul(x(2), x(0)) + mul(g(Gen::R), x(1));
    for (const Connection& c : configurations()) {
        const LinearConnection lc(geo(), c);
        for (Which w : derivatives(lc))
            for (int i = 0; i < 3; ++i) {
                CAPTURE(to_string(c.sigma));
                CAPTURE(to_string(c.calculus));
                const Element form = letter_for(w, i);
                CHECK(is_zero(lc.curvature_direct(form, w)));
                CHECK(is_zero(lc.curvature_frame(form, w)));
                CHECK(is_zero(lc.curvature_direct(mul(f, form), w)));
                for (const Element& r : lc.ricci(form, w)) CHECK(r.is_zero());
            }
    }
}

TEST_CASE("curvature of a non-flat flip is left linear") {
    const Matrix sm = alg().rhat().scaled(q);
    const Matrix perturbed = block_flip_matrix(sm + alg().projectors().ps, sm, Matrix(), Matrix());
    const LinearConnection lc(geo(), {SChoice::qR, Calculus::unbarred}, perturbed);
    const Element f = mul(x(2), x(0));
    for (int i = 0; i < 3; ++i) {
        const TwoFormTensor c = lc.curvature_direct(xi(i));
        const TwoFormTensor fc = lc.curvature_direct(mul(f, xi(i)));
        CHECK_FALSE(is_zero(c));
        for (int k = 0; k < 6; ++k) CHECK(fc[static_cast<std::size_t>(k)] == mul(f, c[static_cast<std::size_t>(k)]));
    }
}

TEST_CASE("flip built through the frame agrees with the numeric blocks") {
    for (SChoice sc : {SChoice::qR, SChoice::qRinv}) {
        const Matrix sm = s_matrix(alg(), sc);
        const Sigma numeric = Sigma::from_matrix(block_flip_matrix(sm, sm, Matrix(), Matrix()));
        const LinearConnection lc(geo(), {sc, Calculus::unbarred});
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                CHECK(lc.sigma().image(i, j) == numeric.image(i, j));
                CHECK(lc.sigma().image(3 + i, 3 + j) == numeric.image(3 + i, 3 + j));
            }
    }
}

TEST_CASE("frame metric agrees with the coordinate metric") {
    const MetricTable frame = geo().metric();
    const MetricTable coord = coordinate_metric(alg());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            CHECK(frame.at(i, j) == coord.at(i, j));
            CHECK(frame.at(3 + i, 3 + j) == coord.at(3 + i, 3 + j));
        }
}

TEST_CASE("metric compatibility factors") {
    const IsoMetric& gm = alg().metric();
    const Matrix qr = s_matrix(alg(), SChoice::qR);
    const Matrix qri = s_matrix(alg(), SChoice::qRinv);
    CHECK(compatibility_factor(qr, qr, gm) == std::optional<Scalar>(q * q));
    CHECK(compatibility_factor(qri, qri, gm) == std::optional<Scalar>((q * q).inverse()));
    const Matrix v = alg().rhat_inv().scaled(q);
    const Matrix vbar = alg().rhat().scaled(q.inverse());
    CHECK(compatibility_factor(vbar, qr, gm) == std::optional<Scalar>(one));
    CHECK(compatibility_factor(v, qri, gm) == std::optional<Scalar>(one));
    CHECK_FALSE(compatibility_factor(vbar, qri, gm).has_value());
    CHECK_FALSE(compatibility_factor(v, qr, gm).has_value());
}

TEST_CASE("flip annihilates the wedge on the pure blocks") {
    for (const Connection& c : configurations()) {
        const LinearConnection lc(geo(), c);
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) {
                if ((i < 3) != (j < 3)) continue;
                const TensorBi b = TensorBi::basis(i, j);
                CHECK(pi_project(alg(), lc.sigma().apply(alg(), b) + b).is_zero());
            }
    }
}

TEST_CASE("mixed frame relation read off from the algebra") {
    const Matrix m = mixed_frame_relation(geo());
    const Matrix expected = alg().rhat_inv().scaled(-q);
    int differing = 0;
    for (int r = 0; r < 9; ++r)
        for (int c = 0; c < 9; ++c)
            if (!(m(r, c) == expected(r, c))) {
                ++differing;
                CHECK(m(r, c) == -expected(r, c));
            }
    CHECK(differing == 4);

    const LinearConnection lc(geo(), {SChoice::qR, Calculus::enlarged});
    int mixed_failures = 0;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            if ((i < 3) == (j < 3)) continue;
            const TensorBi b = TensorBi::basis(i, j);
            if (!pi_project(alg(), lc.sigma().apply(alg(), b) + b).is_zero()) ++mixed_failures;
        }
    CHECK(mixed_failures == 8);
}

TEST_CASE("reality of the differential and the connection") {
    for (const Element& f : {x(0), x(1), x(2), g(Gen::R), g(Gen::X0Inv), mul(x(2), x(0))})
        CHECK(alg().involution(d(f)) == dbar(alg().involution(f)));
    for (SChoice sc : {SChoice::qR, SChoice::qRinv}) {
        const LinearConnection lc(geo(), {sc, Calculus::enlarged});
        for (int l = 0; l < 6; ++l)
            for (Which w : {Which::d, Which::dbar}) {
                const Which other = w == Which::d ? Which::dbar : Which::d;
                const TensorBi lhs = tensor_involution(alg(), lc.sigma(), lc.derivative(form_letter(l), w));
                CHECK(lhs == lc.derivative(alg().involution(form_letter(l)), other));
            }
    }
}

TEST_CASE("line element is real and parallel") {
    const LinearConnection lc(geo(), {SChoice::qR, Calculus::enlarged});
    const IsoMetric& gm = alg().metric();
    TensorBi half;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            if (!gm.lower(a, b).is_zero())
                half += tensor(alg(), geo().frame()[static_cast<std::size_t>(a)],
                               gm.lower(a, b) * geo().frame()[static_cast<std::size_t>(3 + b)]);
    const TensorBi ds2 = half + tensor_involution(alg(), lc.sigma(), half);
    CHECK_FALSE(ds2.is_zero());
    CHECK(tensor_involution(alg(), lc.sigma(), ds2) == ds2);
    CHECK(lc.derivative2(ds2, Which::d).is_zero());
    CHECK(lc.derivative2(ds2, Which::dbar).is_zero());
}

TEST_CASE("partial derivatives") {
    const InvariantForms& forms = geo().forms();
    std::vector<Element> monomials = {Element(one)};
    std::vector<Element> layer = monomials;
    for (int deg = 1; deg <= 3; ++deg) {
        std::vector<Element> next;
        for (const Element& m : layer)
            for (int i = 0; i < 3; ++i) next.push_back(mul(x(i), m));
        monomials.insert(monomials.end(), next.begin(), next.end());
        layer = std::move(next);
    }
    const Matrix& r = alg().rhat();
    for (const Element& f : monomials) {
        Element sum;
        for (int i = 0; i < 3; ++i) sum += mul(xi(i), partial(alg(), forms, i, f));
        CHECK(sum == d(f));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                Element rhs = i == j ? f : Element();
                for (int hh = 0; hh < 3; ++hh)
                    for (int k = 0; k < 3; ++k)
                        if (!r(pair_index(j, hh), pair_index(i, k)).is_zero())
                            rhs += (q * r(pair_index(j, hh), pair_index(i, k))) * mul(x(k), partial(alg(), forms, hh, f));
                CHECK(partial(alg(), forms, i, mul(x(j), f)) == rhs);
            }
    }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(partial(alg(), forms, i, x(j)) == (i == j ? Element(one) : Element()));
    const Element f = mul(x(2), x(0));
    Element frame_sum;
    for (int a = 0; a < 3; ++a) frame_sum += mul(geo().frame()[static_cast<std::size_t>(a)], geo().frame_derivative(a, f));
    CHECK(frame_sum == d(f));
}

TEST_CASE("concrete normalization") {
    const Scalar two(2);
    const Geometry fixed(alg(), two);
    CHECK(fixed.frame()[0] == two.inverse() * mul(g(Gen::LamInv), g(Gen::X0Inv), xi(0)));
    CHECK(check_basic_relations(fixed).failures == 0);
    for (const Element& th : fixed.frame()) CHECK(alg().commutator(th, g(Gen::Lam)).is_zero());
    const LinearConnection lc(fixed, {SChoice::qR, Calculus::enlarged});
    for (int i = 0; i < 6; ++i) CHECK(is_zero(lc.curvature_direct(form_letter(i), i < 3 ? Which::d : Which::dbar)));
}
