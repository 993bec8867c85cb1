#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "qeuclid/ncalg.hpp"

namespace qeuclid {

enum class Exec { serial, parallel };

using Word = std::vector<Gen>;
using WordTriple = std::array<Word, 3>;

// Words over every generator except alpha, lengths uniform in [1, max_len].
std::vector<Word> random_words(std::uint64_t seed, std::size_t count, int max_len);
std::vector<WordTriple> random_triples(std::uint64_t seed, std::size_t count, int max_len);

std::vector<Element> normalize_batch(const Algebra& alg, const std::vector<Word>& words, Exec exec);

struct SweepResult {
    std::size_t checked = 0;
    std::vector<std::size_t> failures;  // ascending indices into the input
};

// (uv)w = u(vw) for the normal forms of each triple.
SweepResult associativity_sweep(const Algebra& alg, const std::vector<WordTriple>& triples, Exec exec);
// The same on all 16^3 generator triples, where the overlaps of the rewrite rules live.
SweepResult generator_triple_sweep(const Algebra& alg, Exec exec);
std::array<Gen, 3> generator_triple(std::size_t index);

}  // namespace qeuclid
