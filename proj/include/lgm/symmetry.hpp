#pragma once

#include <string>
#include <vector>

#include "lgm/potential.hpp"
#include "lgm/rational.hpp"

namespace lgm {

// A diagonal symmetry, stored as its canonical phase vector in [0,1)^N.
class GroupElement {
public:
    GroupElement() = default;
    explicit GroupElement(std::vector<Rat> phases);

    int size() const { return static_cast<int>(phases_.size()); }
    const std::vector<Rat>& phases() const { return phases_; }
    const Rat& theta(int j) const { return phases_[j]; }

    GroupElement compose(const GroupElement& o) const;
    GroupElement inverse() const;
    GroupElement pow(long k) const;

    bool is_identity() const;
    std::vector<int> fixed_indices() const; // {i : theta_i = 0}
    Rat phase_sum() const;
    bool is_sl() const; // sum of phases integral
    Int order() const;

    bool operator==(const GroupElement& o) const { return phases_ == o.phases_; }
    bool operator<(const GroupElement& o) const { return phases_ < o.phases_; }

    std::string to_string() const { return phases_str(phases_); }

private:
    std::vector<Rat> phases_;
};

// A finite group of diagonal symmetries of a fixed potential. Elements are
// kept sorted; `generators` always generates the group.
class DiagonalGroup {
public:
    DiagonalGroup() = default;
    DiagonalGroup(InvertiblePotential parent, std::vector<GroupElement> elements,
                  std::vector<GroupElement> generators);

    const InvertiblePotential& parent() const { return parent_; }
    const std::vector<GroupElement>& elements() const { return elements_; }
    const std::vector<GroupElement>& generators() const { return gens_; }
    size_t order() const { return elements_.size(); }
    bool contains(const GroupElement& g) const;
    bool is_subgroup_of(const DiagonalGroup& other) const;
    bool is_sl() const;
    bool same_elements(const DiagonalGroup& other) const {
        return elements_ == other.elements_;
    }

private:
    InvertiblePotential parent_;
    std::vector<GroupElement> elements_;
    std::vector<GroupElement> gens_;
};

// True iff A * phases(g) is integral, i.e. g preserves every monomial of P.
bool preserves(const InvertiblePotential& p, const GroupElement& g);

// Columns of A^{-1}, reduced mod 1.
std::vector<GroupElement> rho_generators(const InvertiblePotential& p);

// Rows of A^{-1} (the rho-bar generators of Gmax of the transpose).
std::vector<GroupElement> rho_bar_generators(const InvertiblePotential& p);

// The exponential grading operator J: phases equal to the charges.
GroupElement exponential_grading(const InvertiblePotential& p);

DiagonalGroup enumerate_gmax(const InvertiblePotential& p);

// Smallest closed subset containing gens and the identity. Throws
// NotASymmetry when a generator does not preserve P.
DiagonalGroup subgroup_closure(const InvertiblePotential& p,
                               const std::vector<GroupElement>& gens);

// An integral rho-word for g: the vector A * phases(g) (integral because g
// preserves W). Any two words for g differ by an element of A Z^N.
std::vector<Int> rho_word(const InvertiblePotential& p, const GroupElement& g);

// Unreduced algebraic phase sum sum_i (alpha_i + 1) phi_j^(i) for the
// element (prod rho_i^{alpha_i}) J of an atomic potential.
Rat rho_word_theta(const InvertiblePotential& p, const std::vector<long>& word, int j);

// Berglund-Huebsch dual group: subgroup of Gmax(P^T) pairing integrally with
// every rho-word of G.
DiagonalGroup dual_group(const InvertiblePotential& p, const DiagonalGroup& g);

bool is_admissible(const InvertiblePotential& p, const DiagonalGroup& g); // J in G

DiagonalGroup sl_subgroup(const DiagonalGroup& g); // SL elements of g

// CLI group syntax: gmax | J | SL | gens:1/3,2/3,0;... | rho:0,1,...
DiagonalGroup parse_group_spec(const InvertiblePotential& p, const std::string& spec);

} // namespace lgm
