#include "qeuclid/batch.hpp"

#include <random>

namespace qeuclid {

namespace {

constexpr Gen kPool[] = {Gen::Lam, Gen::LamInv, Gen::R,   Gen::RInv, Gen::X0,   Gen::X0Inv, Gen::Xm,
                         Gen::Xp,  Gen::Xim,    Gen::Xiz, Gen::Xip,  Gen::BXim, Gen::BXiz,  Gen::BXip};

Word draw(std::mt19937_64& rng, int max_len) {
    std::uniform_int_distribution<int> len(1, max_len);
    std::uniform_int_distribution<std::size_t> pick(0, std::size(kPool) - 1);
    Word w(static_cast<std::size_t>(len(rng)));
    for (Gen& g : w) g = kPool[pick(rng)];
    return w;
}

bool associates(const Algebra& alg, const WordTriple& t) {
    const Element u = alg.normalize(t[0]);
    const Element v = alg.normalize(t[1]);
    const Element w = alg.normalize(t[2]);
    return alg.mul(alg.mul(u, v), w) == alg.mul(u, alg.mul(v, w));
}

template <typename Pred>
SweepResult sweep(std::size_t n, Exec exec, Pred ok) {
    std::vector<char> bad(n, 0);
    const auto count = static_cast<std::ptrdiff_t>(n);
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 16)
        for (std::ptrdiff_t k = 0; k < count; ++k) bad[static_cast<std::size_t>(k)] = !ok(static_cast<std::size_t>(k));
    } else {
        for (std::ptrdiff_t k = 0; k < count; ++k) bad[static_cast<std::size_t>(k)] = !ok(static_cast<std::size_t>(k));
    }
    SweepResult r;
    r.checked = n;
    for (std::size_t k = 0; k < n; ++k)
        if (bad[k]) r.failures.push_back(k);
    return r;
}

}  // namespace

std::vector<Word> random_words(std::uint64_t seed, std::size_t count, int max_len) {
    std::mt19937_64 rng(seed);
    std::vector<Word> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) out.push_back(draw(rng, max_len));
    return out;
}

std::vector<WordTriple> random_triples(std::uint64_t seed, std::size_t count, int max_len) {
    std::mt19937_64 rng(seed);
    std::vector<WordTriple> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        WordTriple t;
        for (Word& w : t) w = draw(rng, max_len);
        out.push_back(std::move(t));
    }
    return out;
}

std::vector<Element> normalize_batch(const Algebra& alg, const std::vector<Word>& words, Exec exec) {
    std::vector<Element> out(words.size());
    const auto count = static_cast<std::ptrdiff_t>(words.size());
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 16)
        for (std::ptrdiff_t k = 0; k < count; ++k)
            out[static_cast<std::size_t>(k)] = alg.normalize(words[static_cast<std::size_t>(k)]);
    } else {
        for (std::size_t k = 0; k < words.size(); ++k) out[k] = alg.normalize(words[k]);
    }
    return out;
}

SweepResult associativity_sweep(const Algebra& alg, const std::vector<WordTriple>& triples, Exec exec) {
    return sweep(triples.size(), exec, [&](std::size_t k) { return associates(alg, triples[k]); });
}

std::array<Gen, 3> generator_triple(std::size_t index) {
    const auto n = static_cast<std::size_t>(kGeneratorCount);
    return {static_cast<Gen>(index / (n * n)), static_cast<Gen>(index / n % n), static_cast<Gen>(index % n)};
}

SweepResult generator_triple_sweep(const Algebra& alg, Exec exec) {
    const auto n = static_cast<std::size_t>(kGeneratorCount);
    return sweep(n * n * n, exec, [&](std::size_t k) {
        const auto t = generator_triple(k);
        return alg.associative_on(t[0], t[1], t[2]);
    });
}

}  // namespace qeuclid
