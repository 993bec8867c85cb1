#include <doctest.h>

#include <random>

#include "qeuclid/ncalg.hpp"

using namespace qeuclid;

namespace {

const Scalar q = Scalar::q();
const Scalar s = Scalar::sqrtq();
const Scalar h = Scalar::h();

const Algebra& alg() {
    static const Algebra a;
    return a;
}

Element g(Gen x) { return Element::generator(x); }

Element x(int i) {
    static const Gen gens[] = {Gen::Xm, Gen::X0, Gen::Xp};
    return g(gens[i]);
}

Element xi(int i) { return g(form_letter_gen(i)); }
Element bxi(int i) { return g(form_letter_gen(3 + i)); }

Element word(const Algebra& a, std::initializer_list<Gen> w) { return a.normalize(std::vector<Gen>(w)); }

Element random_word(std::mt19937& rng, int max_len) {
    static const Gen pool[] = {Gen::Lam, Gen::LamInv, Gen::R,   Gen::RInv, Gen::X0,   Gen::X0Inv, Gen::Xm,
                               Gen::Xp,  Gen::Xim,    Gen::Xiz, Gen::Xip,  Gen::BXim, Gen::BXiz,  Gen::BXip};
    std::uniform_int_distribution<int> len(1, max_len);
    std::uniform_int_distribution<int> pick(0, 13);
    std::vector<Gen> w;
    for (int n = len(rng); n > 0; --n) w.push_back(pool[pick(rng)]);
    return alg().normalize(w);
}

}  // namespace

TEST_CASE("generator metadata") {
    CHECK(generator_info(Gen::Xm).grading == -1);
    CHECK(generator_info(Gen::Xp).grading == 1);
    CHECK(generator_info(Gen::BXip).barred);
    CHECK(generator_info(Gen::Xiz).form_degree == 1);
    CHECK(generator_info(Gen::Lam).grading == 0);
}

TEST_CASE("coordinate relations") {
    const Algebra& a = alg();
    CHECK(word(a, {Gen::Xm, Gen::X0}) == q * word(a, {Gen::X0, Gen::Xm}));
    CHECK(word(a, {Gen::Xp, Gen::X0}) == q.inverse() * word(a, {Gen::X0, Gen::Xp}));
    CHECK(a.commutator(g(Gen::Xp), g(Gen::Xm)) == h * word(a, {Gen::X0, Gen::X0}));
    const Element r2 = word(a, {Gen::R, Gen::R});
    // x- x+ = (s + 1/s)^-1 (r^2 - q x0^2)
    CHECK(word(a, {Gen::Xm, Gen::Xp}) == (s + s.inverse()).inverse() * (r2 - q * word(a, {Gen::X0, Gen::X0})));
    CHECK(q * word(a, {Gen::Xp, Gen::Xm}) - q.inverse() * word(a, {Gen::Xm, Gen::Xp}) == h * r2);
    Element len2;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) len2 += a.metric().lower(i, j) * a.mul(x(i), x(j));
    CHECK(len2 == r2);
    for (int i = 0; i < 3; ++i) CHECK(a.commutator(r2, x(i)).is_zero());
}

TEST_CASE("coordinate relations without radius reduction") {
    AlgebraOptions o;
    o.radius_reduction = false;
    const Algebra a(o);
    CHECK(a.commutator(g(Gen::Xp), g(Gen::Xm)) == h * word(a, {Gen::X0, Gen::X0}));
    const Element lhs = a.mul(g(Gen::Xp), g(Gen::Xp), g(Gen::Xm));
    CHECK(lhs.size() == 2);
    CHECK(a.associativity_failures().empty());
}

TEST_CASE("x-xi relations agree with the explicit list") {
    const Algebra& a = alg();
    for (const auto& rel : explicit_x_xi_relations()) {
        Element rhs;
        for (const auto& t : rel.rhs) rhs += t.coeff * a.mul(xi(t.k), x(t.l));
        CHECK(a.mul(x(rel.i), xi(rel.j)) == rhs);
    }
}

TEST_CASE("barred x-xi relations use the inverse braid matrix") {
    const Algebra& a = alg();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Element rhs;
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l)
                    rhs += q.inverse() * entry(a.rhat_inv(), i, j, k, l) * a.mul(bxi(k), x(l));
            CHECK(a.mul(x(i), bxi(j)) == rhs);
        }
}

TEST_CASE("form relations") {
    const Algebra& a = alg();
    CHECK(a.mul(xi(kMinus), xi(kMinus)).is_zero());
    CHECK(a.mul(xi(kPlus), xi(kPlus)).is_zero());
    CHECK(a.mul(xi(kZero), xi(kZero)) == h * a.mul(xi(kMinus), xi(kPlus)));
    CHECK(word(a, {Gen::Xiz, Gen::Xiz}).to_string() == "h * xim*xip");
    CHECK(a.mul(xi(kMinus), xi(kZero)) == -q.inverse() * a.mul(xi(kZero), xi(kMinus)));
    CHECK(a.mul(xi(kZero), xi(kPlus)) == -q.inverse() * a.mul(xi(kPlus), xi(kZero)));
    CHECK(a.mul(xi(kMinus), xi(kPlus)) == -a.mul(xi(kPlus), xi(kMinus)));
    CHECK(a.mul(bxi(kZero), bxi(kZero)) == h * a.mul(bxi(kMinus), bxi(kPlus)));
    const auto& p = a.projectors();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Element sym, tr, bsym, btr;
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l) {
                    sym += entry(p.ps, i, j, k, l) * a.mul(xi(k), xi(l));
                    tr += entry(p.pt, i, j, k, l) * a.mul(xi(k), xi(l));
                    bsym += entry(p.ps, i, j, k, l) * a.mul(bxi(k), bxi(l));
                    btr += entry(p.pt, i, j, k, l) * a.mul(bxi(k), bxi(l));
                }
            CHECK(sym.is_zero());
            CHECK(tr.is_zero());
            CHECK(bsym.is_zero());
            CHECK(btr.is_zero());
        }
}

TEST_CASE("mixed form relations") {
    const Algebra& a = alg();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Element rhs;
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l)
                    rhs += -q.inverse() * entry(a.rhat_inv(), i, j, k, l) * a.mul(bxi(k), xi(l));
            CHECK(a.mul(xi(i), bxi(j)) == rhs);
        }
}

TEST_CASE("radius and dilatator relations") {
    const Algebra& a = alg();
    const Element r = g(Gen::R);
    const Element lam = g(Gen::Lam);
    const Element r2 = a.mul(r, r);
    for (int i = 0; i < 3; ++i) {
        CHECK(a.mul(r, xi(i)) == q * a.mul(xi(i), r));
        CHECK(a.mul(r, bxi(i)) == q.inverse() * a.mul(bxi(i), r));
        CHECK(a.mul(r2, xi(i)) == q * q * a.mul(xi(i), r2));
        CHECK(a.mul(x(i), lam) == q * a.mul(lam, x(i)));
        CHECK(a.mul(xi(i), lam) == q * a.mul(lam, xi(i)));
        CHECK(a.mul(bxi(i), lam) == q * a.mul(lam, bxi(i)));
    }
    CHECK(a.mul(r, lam) == q * a.mul(lam, r));
    CHECK_FALSE(a.commutator(r2, lam).is_zero());

    AlgebraOptions o;
    o.lambda_commutes_with_forms = true;
    const Algebra b(o);
    CHECK(b.commutator(xi(kZero), lam).is_zero());
    CHECK(b.commutator(bxi(kPlus), lam).is_zero());
}

TEST_CASE("inverse coordinate rules") {
    const Algebra& a = alg();
    const Element x0inv = g(Gen::X0Inv);
    CHECK(a.mul(xi(kMinus), x0inv) == q * a.mul(x0inv, xi(kMinus)));
    // sandwich of x0 xi0 = q xi0 x0 - h(q+1) xi- x+
    const Element rhs = q * a.mul(x0inv, xi(kZero)) -
                        h * (q + Scalar(1)) * a.mul(xi(kMinus), a.power(x0inv, 2), x(kPlus));
    CHECK(a.mul(xi(kZero), x0inv) == rhs);
    for (int l = 0; l < kFormLetters; ++l) {
        const Element w = g(form_letter_gen(l));
        CHECK(a.mul(w, x0inv, x(kZero)) == w);
        CHECK(a.mul(w, x(kZero), x0inv) == w);
    }
    CHECK(a.mul(x0inv, x(kZero)) == Element(1));
}

TEST_CASE("confluence on generator triples") {
    CHECK(alg().associativity_failures().empty());
    CHECK_NOTHROW(alg().verify_confluence());
}

TEST_CASE("associativity and grading on random words") {
    const Algebra& a = alg();
    std::mt19937 rng(11);
    for (int n = 0; n < 150; ++n) {
        const Element u = random_word(rng, 3);
        const Element v = random_word(rng, 3);
        const Element w = random_word(rng, 3);
        CHECK(a.mul(a.mul(u, v), w) == a.mul(u, a.mul(v, w)));
        if (u.is_zero() || v.is_zero()) continue;
        const auto su = grade_split(u);
        const auto sv = grade_split(v);
        REQUIRE(su.size() == 1);
        REQUIRE(sv.size() == 1);
        const auto prod = grade_split(a.mul(u, v));
        CHECK(prod.size() <= 1);
        for (const auto& [key, part] : prod) {
            CHECK(key.first == su.begin()->first.first + sv.begin()->first.first);
            CHECK(key.second == su.begin()->first.second + sv.begin()->first.second);
        }
    }
}

TEST_CASE("normal forms are fixed points") {
    const Algebra& a = alg();
    std::mt19937 rng(5);
    for (int n = 0; n < 50; ++n) {
        const Element u = random_word(rng, 4);
        CHECK(a.mul(Element(1), u) == u);
        CHECK(a.mul(u, Element(1)) == u);
    }
}

TEST_CASE("grade split") {
    const Algebra& a = alg();
    const auto parts = grade_split(a.mul(x(kPlus), xi(kMinus)));
    REQUIRE(parts.size() == 1);
    CHECK(parts.begin()->first == std::pair<int, int>{0, 1});
    const Element mixed = x(kPlus) + xi(kZero) + a.mul(x(kMinus), x(kMinus));
    Element sum;
    for (const auto& [k, e] : grade_split(mixed)) sum += e;
    CHECK(sum == mixed);
}

TEST_CASE("involution") {
    const Algebra& a = alg();
    CHECK(a.involution(x(kPlus)) == s.inverse() * x(kMinus));
    CHECK(a.involution(x(kMinus)) == s * x(kPlus));
    CHECK(a.involution(g(Gen::Lam)) == g(Gen::LamInv));
    CHECK(a.involution(g(Gen::R)) == g(Gen::R));
    CHECK(a.involution(xi(kMinus)) == s * bxi(kPlus));
    CHECK(a.involution(bxi(kMinus)) == s * xi(kPlus));
    std::mt19937 rng(3);
    for (int n = 0; n < 80; ++n) {
        const Element u = random_word(rng, 3);
        const Element v = random_word(rng, 3);
        CHECK(a.involution(a.involution(u)) == u);
        CHECK(a.involution(a.mul(u, v)) == a.mul(a.involution(v), a.involution(u)));
    }
}

TEST_CASE("rendering") {
    const Algebra& a = alg();
    const Element e = a.normalize({Gen::LamInv, Gen::RInv, Gen::RInv, Gen::X0Inv, Gen::Xp, Gen::Xp, Gen::Xim});
    CHECK(e.to_string() == "Lam^-1 * r^-2 * xz^-1 * xp^2 * xim");
    CHECK(Element().to_string() == "0");
    CHECK((Scalar(2) * x(kZero) - x(kPlus)).to_string() == "-xp + 2 * xz");
}
