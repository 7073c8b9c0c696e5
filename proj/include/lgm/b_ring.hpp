#pragma once

#include <map>
#include <string>
#include <vector>

#include "lgm/state_space.hpp"

namespace lgm {

// Structure constants of the orbifold B-model Frobenius algebra on the
// invariant basis, together with the checkable algebra axioms.
class BFrobeniusTable {
public:
    using SparseVec = std::map<int, Rat>;

    BFrobeniusTable(InvertiblePotential p, DiagonalGroup g);

    const InvertiblePotential& potential() const { return p_; }
    const DiagonalGroup& group() const { return group_; }
    const std::vector<StateBasisElement>& basis() const { return basis_; }
    int dim() const { return static_cast<int>(basis_.size()); }

    const SparseVec& product(int i, int j) const { return products_[i][j]; }
    const RatMat& pairing() const { return pairing_; }
    int identity_index() const { return identity_; }

    SparseVec multiply(const SparseVec& x, const SparseVec& y) const;

    // Axiom checks; each returns true or fills *counterexample.
    bool check_identity(std::string* counterexample = nullptr) const;
    bool check_associativity(std::string* counterexample = nullptr) const;
    bool check_frobenius(std::string* counterexample = nullptr) const;
    bool check_grading(std::string* counterexample = nullptr) const;
    bool check_pairing_nondegenerate(std::string* counterexample = nullptr) const;
    bool check_all(std::string* counterexample = nullptr) const;

    int basis_index(const GroupElement& sector, const Monomial& m) const; // -1 absent

private:
    InvertiblePotential p_;
    DiagonalGroup group_;
    RingCache rings_;
    std::vector<StateBasisElement> basis_;
    std::map<std::pair<std::vector<Rat>, Monomial>, int> index_;
    std::vector<std::vector<SparseVec>> products_;
    RatMat pairing_;
    int identity_ = -1;

    void build();
    SparseVec multiply_elements(const StateBasisElement& e1, const StateBasisElement& e2) const;
};

// Blockwise cocycle gamma_{g,h} as an element of Q(W|Fix(gh)); zero unless
// every atomic block is covered by I_g, I_h, I_{gh}. NonUniqueSolution when
// the defining linear system leaves the product genuinely ambiguous.
// `ambiguity` (optional) receives the matching-character kernel generators of
// the solve, for downstream well-definedness asserts.
Poly cocycle_gamma(const RingCache& rings, const GroupElement& g, const GroupElement& h,
                   std::vector<Poly>* ambiguity = nullptr);

// Residue pairing of two sector elements; zero unless the sectors are
// mutually inverse.
Rat b_pairing(const RingCache& rings, const GroupElement& g, const Monomial& m1,
              const GroupElement& h, const Monomial& m2);

BFrobeniusTable b_frobenius_table(const InvertiblePotential& p, const DiagonalGroup& g);

} // namespace lgm
