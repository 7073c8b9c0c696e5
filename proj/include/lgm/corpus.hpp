#pragma once

#include <string>
#include <vector>

#include "lgm/symmetry.hpp"

namespace lgm {

struct CorpusGroup {
    std::string label; // "J", "Gmax", "SL", "cyc(<phases>)"
    DiagonalGroup group;
};

struct CorpusEntry {
    InvertiblePotential potential;
    std::vector<CorpusGroup> groups;
};

// All atomic potentials with at most max_vars variables and exponents in
// [2, max_exponent], in canonical form (loops up to rotation), plus two-block
// sums within the same bounds. Groups per potential: <J>, Gmax, SL cap Gmax,
// and every cyclic subgroup containing J; duplicates merged.
std::vector<CorpusEntry> enumerate_corpus(int max_vars, int max_exponent);

std::vector<InvertiblePotential> enumerate_corpus_potentials(int max_vars, int max_exponent);

} // namespace lgm
