#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lgm/milnor.hpp"
#include "lgm/symmetry.hpp"

namespace lgm {

enum class Model { A, B };

// Total bi-grading: external sector grading plus the internal monomial
// grading ((p,-p) on the A side, (p,p) on the B side). The paper's example
// tables are in (sum, diff) convention, exposed below.
struct BiDegree {
    Rat plus;
    Rat minus;
    Rat sum() const { return plus + minus; }
    Rat diff() const { return plus - minus; }
    bool operator==(const BiDegree& o) const { return plus == o.plus && minus == o.minus; }
};

struct StateBasisElement {
    Model model;
    GroupElement sector;
    Monomial monomial; // full-length exponent vector, zero off Fix(sector)
    BiDegree degree;

    bool same_state(const StateBasisElement& o) const {
        return sector == o.sector && monomial == o.monomial;
    }
};

BiDegree bidegree(Model model, const InvertiblePotential& p,
                  const GroupElement& sector, const Monomial& monomial);

// Determinant-twisted invariance: g(m) + sum_{i in Fix(sector)} theta_i^g
// integral for every g in the group (checked on generators).
bool is_invariant(const DiagonalGroup& g, const GroupElement& sector,
                  const Monomial& monomial);

// Brute-force oracle: same test quantified over every group element; the
// count of invariant monomials equals the rank of the averaging projector.
bool is_invariant_bruteforce(const DiagonalGroup& g, const GroupElement& sector,
                             const Monomial& monomial);

// Sorted sector contents (monomial basis of the invariants).
std::vector<Monomial> sector_invariants(const RingCache& rings, const DiagonalGroup& g,
                                        const GroupElement& sector);

std::vector<StateBasisElement> a_state_space(const InvertiblePotential& p,
                                             const DiagonalGroup& g); // requires J in G
std::vector<StateBasisElement> b_state_space(const InvertiblePotential& p,
                                             const DiagonalGroup& g); // requires G in SL

struct MirrorPair {
    StateBasisElement b; // element of the B-model of (P^T, .)
    StateBasisElement a; // its image in the A-model of (P, .)
};

// Total unprojected mirror map: full sector decomposition of (P^T, Gmax) to
// (P, Gmax). Bijective with (sum, diff) bi-degree equality; violations throw
// InternalInconsistency.
std::vector<MirrorPair> total_mirror_map(const InvertiblePotential& p);

// Restriction to invariants: b_state_space(P^T, G^T) -> a_state_space(P, G).
// Requires J in G; asserts bijectivity and degree preservation.
std::vector<MirrorPair> mirror_map(const InvertiblePotential& p, const DiagonalGroup& g);

// Formal sum over basis elements of t^plus s^minus, as multiset of pairs.
using Poincare = std::map<std::pair<Rat, Rat>, long>;
Poincare poincare_polynomial(const std::vector<StateBasisElement>& space);
Poincare poincare_sum_diff(const std::vector<StateBasisElement>& space);
std::string poincare_str(const Poincare& p, const std::string& tname = "t",
                         const std::string& sname = "s");

// deg^A_+ = deg^B_+ and deg^A_- = c-hat - deg^B_- sector-by-sector for the
// same (W, G); returns false and fills *diag on the first violation.
bool ab_degree_relation_check(const InvertiblePotential& p, const DiagonalGroup& g,
                              std::string* diag = nullptr);

} // namespace lgm
