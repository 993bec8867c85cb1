#include <doctest.h>

#include <random>

#include "qeuclid/omega.hpp"

using namespace qeuclid;

namespace {

const Scalar q = Scalar::q();
const Scalar s = Scalar::sqrtq();
const Scalar h = Scalar::h();

const Algebra& alg() {
    static const Algebra a;
    return a;
}

const InvariantForms& forms() {
    static const InvariantForms f = InvariantForms::build(alg());
    return f;
}

Element g(Gen x) { return Element::generator(x); }

Element x(int i) {
    static const Gen gens[] = {Gen::Xm, Gen::X0, Gen::Xp};
    return g(gens[i]);
}

Element xi(int i) { return form_letter(i); }
Element bxi(int i) { return form_letter(3 + i); }

Element d(const Element& a) { return differential(alg(), forms(), a); }
Element dbar(const Element& a) { return differential(alg(), forms(), a, Which::dbar); }

Element random_function(std::mt19937& rng) {
    static const Gen pool[] = {Gen::Lam, Gen::LamInv, Gen::R, Gen::RInv, Gen::X0, Gen::X0Inv, Gen::Xm, Gen::Xp};
    std::uniform_int_distribution<int> len(1, 3);
    std::uniform_int_distribution<int> pick(0, 7);
    std::vector<Gen> w;
    for (int n = len(rng); n > 0; --n) w.push_back(pool[pick(rng)]);
    return alg().normalize(w);
}

Sigma pure_sigma(const Matrix& a, const Matrix& b) { return Sigma::from_matrix(block_flip_matrix(a, b, Matrix(), Matrix())); }

}  // namespace

TEST_CASE("d on coordinates gives the coordinate one-forms") {
    for (int i = 0; i < 3; ++i) {
        CHECK(d(x(i)) == xi(i));
        CHECK(dbar(x(i)) == bxi(i));
    }
}

TEST_CASE("d of the radius") {
    const Element r = g(Gen::R);
    const Element r2 = alg().power(r, 2);
    CHECK(d(r2) == (Scalar(1) - q.pow(-2)) * alg().mul(r2, forms().theta));
    CHECK(d(r) == (Scalar(1) - q.inverse()) * alg().mul(r, forms().theta));
}

TEST_CASE("d squares to zero") {
    std::mt19937 rng(7);
    for (int n = 0; n < 12; ++n) {
        const Element f = random_function(rng);
        const Element df = d(f);
        CHECK(d(df).is_zero());
        CHECK(dbar(dbar(f)).is_zero());
        const Element w = alg().mul(random_function(rng), xi(n % 3));
        CHECK(d(d(w)).is_zero());
    }
}

TEST_CASE("theta is closed and squares to zero") {
    CHECK(d(forms().theta).is_zero());
    CHECK(alg().mul(forms().theta, forms().theta).is_zero());
    CHECK(dbar(forms().bar_theta).is_zero());
    CHECK(alg().mul(forms().bar_theta, forms().bar_theta).is_zero());
}

TEST_CASE("the dilaton and the other calculus are constants") {
    CHECK(d(g(Gen::Lam)).is_zero());
    CHECK(dbar(g(Gen::Lam)).is_zero());
    for (int i = 0; i < 3; ++i) {
        CHECK(d(bxi(i)).is_zero());
        CHECK(dbar(xi(i)).is_zero());
    }
}

TEST_CASE("eta commutator with coordinates") {
    const Element r2 = alg().power(g(Gen::R), 2);
    for (int i = 0; i < 3; ++i)
        CHECK(alg().commutator(forms().eta, x(i)) == -(q.pow(-2) * (q - Scalar(1))) * alg().mul(r2, xi(i)));
}

TEST_CASE("theta under the involution") {
    CHECK(alg().involution(forms().theta) == -forms().bar_theta);
}

TEST_CASE("splitting one-forms") {
    const Element w = alg().mul(x(2), xi(0)) + alg().mul(g(Gen::Lam), bxi(1));
    const auto parts = split_one_form(w);
    CHECK(alg().mul(parts[0], xi(0)) + alg().mul(parts[4], bxi(1)) == w);
    CHECK_THROWS(split_one_form(alg().mul(xi(0), xi(2))));
}

TEST_CASE("tensor product followed by wedge is the product") {
    std::mt19937 rng(3);
    for (int n = 0; n < 10; ++n) {
        const Element a = alg().mul(random_function(rng), form_letter(n % 6));
        const Element b = alg().mul(random_function(rng), form_letter((n * 5 + 1) % 6));
        CHECK(pi_project(alg(), tensor(alg(), a, b)) == alg().mul(a, b));
    }
}

TEST_CASE("triple tensors associate") {
    const Element a = alg().mul(x(0), xi(1));
    const Element b = alg().mul(x(2), bxi(2));
    const Element c = alg().mul(g(Gen::R), xi(0));
    CHECK(tensor(alg(), tensor(alg(), a, b), c) == tensor(alg(), a, tensor(alg(), b, c)));
}

TEST_CASE("wedge of the middle zero tensor") {
    const Element expect = h * alg().mul(xi(0), xi(2));
    CHECK(pi_project(alg(), TensorBi::basis(1, 1)) == expect);
}

TEST_CASE("flip built from q Rhat") {
    const Matrix qr = alg().rhat().scaled(q);
    const Sigma sig = pure_sigma(qr, qr);
    CHECK(sig.image(0, 0) == q * q * TensorBi::basis(0, 0));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const TensorBi t = TensorBi::basis(i, j);
            CHECK(pi_project(alg(), sig.apply(alg(), t) + t).is_zero());
            const TensorBi tb = TensorBi::basis(3 + i, 3 + j);
            CHECK(pi_project(alg(), sig.apply(alg(), tb) + tb).is_zero());
        }
}

TEST_CASE("flip satisfies the braid relation on triple tensors") {
    const Matrix qr = alg().rhat().scaled(q);
    const Sigma sig = pure_sigma(qr, qr);
    const Element f = alg().mul(x(2), g(Gen::Lam));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                TensorTri t;
                t.at(i, j, k) = f;
                const TensorTri lhs = sig.apply12(alg(), sig.apply23(alg(), sig.apply12(alg(), t)));
                const TensorTri rhs = sig.apply23(alg(), sig.apply12(alg(), sig.apply23(alg(), t)));
                CHECK(lhs == rhs);
            }
}

TEST_CASE("flip in the last two slots moves coefficients past the first letter") {
    const Matrix qr = alg().rhat().scaled(q);
    const Sigma sig = pure_sigma(qr, qr);
    TensorTri t;
    t.at(1, 0, 2) = x(0);
    const Element w = alg().mul(g(Gen::R), xi(1));
    const TensorTri a = sig.apply23(alg(), tensor(alg(), w, TensorBi::basis(0, 2)));
    const TensorTri b = tensor(alg(), w, sig.apply(alg(), TensorBi::basis(0, 2)));
    CHECK(a == b);
}

TEST_CASE("coordinate metric values") {
    const MetricTable gm = coordinate_metric(alg());
    Monomial a2;
    a2.alpha = 2;
    const Element base = alg().mul(Element::monomial(a2), alg().power(g(Gen::R), 2), alg().power(g(Gen::Lam), 2));
    CHECK(gm.at(0, 2) == (s.inverse() * q.inverse()) * base);
    CHECK(gm.at(0, 0).is_zero());
    CHECK(gm.eval(alg(), left_multiply(alg(), x(0), TensorBi::basis(0, 2))) == alg().mul(x(0), gm.at(0, 2)));
}

TEST_CASE("metric contraction of a triple tensor") {
    const MetricTable gm = coordinate_metric(alg());
    const TensorTri t = tensor(alg(), xi(1), TensorBi::basis(0, 2));
    CHECK(gm.contract23(alg(), t) == alg().mul(xi(1), gm.at(0, 2)));
}

TEST_CASE("tensor involution squares to the identity for the paired flip") {
    const Matrix qr = alg().rhat().scaled(q);
    const Matrix qri = alg().rhat_inv().scaled(q.inverse());
    auto involutive = [&](const Matrix& bar) {
        const Sigma sig = pure_sigma(qr, bar);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                const TensorBi t = left_multiply(alg(), x(2), TensorBi::basis(i, j));
                if (!(tensor_involution(alg(), sig, tensor_involution(alg(), sig, t)) == t)) return false;
            }
        return true;
    };
    CHECK(involutive(qri));
    CHECK_FALSE(involutive(qr));
}
