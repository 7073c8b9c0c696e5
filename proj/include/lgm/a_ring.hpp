#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lgm/b_ring.hpp"
#include "lgm/state_space.hpp"

namespace lgm {

// One evaluated (or vanishing) correlator, kept for the audit trail.
struct CorrelatorRecord {
    int genus = 0;
    std::vector<GroupElement> insertions; // canonically sorted
    std::vector<Rat> line_degrees;
    std::string axiom;  // "concavity" | "index-zero" | "composition/index-zero"
                        // | "empty-sector" | "pairing"
    Rat value;
    std::string note;
};

// l_j = q_j (2g - 2 + k) - sum_i theta_j^{h_i}
std::vector<Rat> line_bundle_degrees(const InvertiblePotential& p, int genus,
                                     const std::vector<GroupElement>& insertions);

// The unique third sector making all genus-0 l_j integral: J g1^{-1} g2^{-1}.
GroupElement select_output_sector(const InvertiblePotential& p, const GroupElement& g1,
                                  const GroupElement& g2);

// Genus-0 three-point correlator of Neveu-Schwarz sector states 1_{h_i}.
// Returns 0 on a degree or integrality violation, 1 by concavity when all
// l_j < 0, and the index-zero value for the pattern {0, -2, -1, ...}.
// Throws Unsupported for Ramond insertions or unrecognized patterns.
Rat three_point_ns(const InvertiblePotential& p, std::vector<GroupElement> insertions,
                   std::vector<CorrelatorRecord>* audit = nullptr);

// Genus-0 four-point correlator via the composition axiom, evaluated by
// index-zero on the pattern {0, -2, -1, ...}.
Rat four_point_index_zero(const InvertiblePotential& p, std::vector<GroupElement> insertions,
                          std::vector<CorrelatorRecord>* audit = nullptr);

// FJRW A-model ring of (W, Gmax), generated by Y_i -> 1_{rho_i J}; every
// generator relation is verified through the correlator axioms and the
// presentation is C[Y]/Jacobian(W^T).
struct ARingPresentation {
    InvertiblePotential p;        // W
    InvertiblePotential wt;       // W^T
    std::shared_ptr<const MilnorRing> ring; // Q(W^T): basis and normal forms
    std::vector<Poly> relations;  // correlator-verified relation polynomials
    std::vector<CorrelatorRecord> audit;
    std::vector<MirrorPair> basis_map; // Q(W^T) basis <-> A-state basis
    std::vector<StateBasisElement> a_basis;

    int dim() const { return static_cast<int>(ring->basis().size()); }
    // Structure constants: product of basis elements alpha, beta expanded on
    // the basis of Q(W^T).
    Poly product(const Monomial& alpha, const Monomial& beta) const;
};

ARingPresentation gmax_a_ring(const InvertiblePotential& p); // throws Unsupported

struct MirrorFrobeniusReport {
    bool ok = true;
    std::vector<std::string> checks;   // human-readable per-check lines
    std::vector<std::string> failures; // counterexamples; empty when ok
    ARingPresentation presentation;
};

// Structure-constant-by-constant comparison of the Gmax A-model ring with
// the unorbifolded B-model Q(W^T) under Y_i -> 1_{rho_i J}.
MirrorFrobeniusReport verify_mirror_frobenius(const InvertiblePotential& p);

} // namespace lgm
