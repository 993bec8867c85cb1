#include <doctest.h>

#include "qeuclid/climit.hpp"

using namespace qeuclid;

namespace {

const Algebra& alg() {
    static const Algebra a;
    return a;
}

const Geometry& geo() {
    static const Geometry g(alg());
    return g;
}

Element g(Gen x) { return Element::generator(x); }

ClassicalExpr single(ClassicalMonomial m, Rational c = 1) {
    ClassicalExpr e;
    e.add_term(m, c);
    return e;
}

}  // namespace

TEST_CASE("commutators vanish in the limit") {
    const Element c = alg().commutator(g(Gen::Xp), g(Gen::Xm));
    CHECK_FALSE(c.is_zero());
    CHECK(classical_limit(c).is_zero());
    CHECK(classical_limit(alg().commutator(g(Gen::Xm), g(Gen::X0))).is_zero());
}

TEST_CASE("poles cancel between terms that merge") {
    const Scalar hinv = Scalar::h().inverse();
    const Element lam = g(Gen::Lam);
    const Element laminv = g(Gen::LamInv);
    CHECK(classical_limit(hinv * (lam - laminv)).is_zero());
    CHECK(classical_limit(hinv * (Scalar::q() * lam - laminv)) == single({}, 1));
    CHECK_THROWS_AS(classical_limit(hinv * lam), PoleError);
}

TEST_CASE("lambda elements diverge") {
    for (int a = 0; a < 6; ++a) {
        try {
            classical_limit(geo().lambda()[static_cast<std::size_t>(a)]);
            FAIL("expected a pole");
        } catch (const PoleError& e) {
            CHECK(e.order() == 1);
        }
    }
}

TEST_CASE("both calculi collapse onto the same differentials") {
    ClassicalMonomial dxm;
    dxm.dx = 1;
    CHECK(classical_limit(form_letter(0)) == single(dxm));
    CHECK(classical_limit(form_letter(3)) == single(dxm));
    CHECK(classical_limit(alg().mul(form_letter(0), form_letter(3))).is_zero());
    ClassicalMonomial both;
    both.dx = 3;
    CHECK(classical_limit(alg().mul(form_letter(4), form_letter(0))) == single(both, -1));
}

TEST_CASE("frame in the limit") {
    ClassicalMonomial m;
    m.alpha = -1;
    m.x0 = -1;
    m.dx = 1;
    CHECK(classical_limit(geo().frame()[0]) == single(m));
    ClassicalMonomial p = m;
    p.dx = 4;
    CHECK(classical_limit(geo().frame()[5]) == single(p));
}

TEST_CASE("metric in the limit") {
    ClassicalMonomial ar;
    ar.alpha = 2;
    ar.rad = 2;
    const auto lim = line_element_limit(geo());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(lim[static_cast<std::size_t>(3 * i + j)] == (i + j == 2 ? single(ar) : ClassicalExpr()));
}

TEST_CASE("radius squared in real coordinates") {
    AlgebraOptions opts;
    opts.radius_reduction = false;
    const Algebra plain(opts);
    const Element x[3] = {g(Gen::Xm), g(Gen::X0), g(Gen::Xp)};
    Element r2;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (!plain.metric().lower(i, j).is_zero()) r2 += plain.metric().lower(i, j) * plain.mul(x[i], x[j]);
    const RealExpr real = to_real(classical_limit(r2));
    const RealExpr expected = RealExpr::variable('x', 2) + RealExpr::variable('y', 2) + RealExpr::variable('z', 2);
    CHECK(real == expected);
    CHECK(equivalent(RealExpr::variable('r', 2), expected));
}

TEST_CASE("real coordinate frame") {
    const auto frame = real_coordinate_frame(geo());
    const auto ref = reference_real_frame();
    CHECK(equivalent(frame[1], ref[1]));
    // The first and third forms come out as the complex conjugates of the closed forms.
    CHECK(equivalent(frame[0], ref[0].conj()));
    CHECK(equivalent(frame[2], ref[2].conj()));
    CHECK_FALSE(equivalent(frame[0], ref[0]));
    CHECK_FALSE(equivalent(frame[2], ref[2]));
    for (const RealExpr& f : frame) CHECK_FALSE(equivalent(f, f.conj()));
}

TEST_CASE("truncated series") {
    const Element e = Scalar::h().inverse() * g(Gen::Lam);
    const auto s = classical_series(e, 1);
    REQUIRE(s.size() == 1);
    const Series& c = s.begin()->second;
    CHECK(c.valuation == -1);
    CHECK(c.coefficient(-1) == Rational(1, 2));
    CHECK(c.coefficient(0) == Rational(1, 4));
}

TEST_CASE("quadratic complex arithmetic") {
    const QuadComplex h = QuadComplex::inv_sqrt2();
    CHECK(h * h == QuadComplex::real(Rational(1, 2)));
    CHECK(QuadComplex::imag(1) * QuadComplex::imag(1) == QuadComplex::real(-1));
    CHECK((h * QuadComplex::imag(2)).conj() == h * QuadComplex::imag(-2));
}
