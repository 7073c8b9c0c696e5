#include "lgm/b_ring.hpp"

#include <algorithm>

#include "lgm/errors.hpp"
#include "lgm/linalg.hpp"

namespace lgm {

namespace {

Monomial embed(const Monomial& local, const std::vector<int>& parent_vars, int n) {
    Monomial m(static_cast<size_t>(n), 0);
    for (size_t i = 0; i < local.size(); ++i) m[parent_vars[i]] = local[i];
    return m;
}

Monomial localize(const Monomial& full, const std::vector<int>& parent_vars) {
    Monomial m(parent_vars.size(), 0);
    for (size_t i = 0; i < parent_vars.size(); ++i) m[i] = full[parent_vars[i]];
    return m;
}

bool supported_on(const Monomial& m, const std::vector<int>& vars, int n) {
    std::vector<bool> in(static_cast<size_t>(n), false);
    for (int v : vars) in[v] = true;
    for (int j = 0; j < n; ++j)
        if (m[j] > 0 && !in[j]) return false;
    return true;
}

// Character class of a monomial under Gmax of the (block) potential with
// exponent matrix A: the vector A^{-T} m mod 1. Two monomials carry the same
// Gmax character iff these coincide.
RatVec character_class(const RatMat& a_inv_t, const Monomial& m) {
    RatVec out(a_inv_t.size(), Rat(0));
    for (size_t i = 0; i < a_inv_t.size(); ++i) {
        for (size_t j = 0; j < m.size(); ++j)
            if (m[j] != 0) out[i] += a_inv_t[i][j] * Rat(m[j]);
        out[i] = mod1(out[i]);
    }
    return out;
}

struct BlockGamma {
    Poly gamma;                  // full-variable coordinates
    std::vector<Poly> ambiguity; // matching-character kernel contributions
};

// gamma for a single atomic block whose g,h components are nontrivial and
// mutually inverse: solve gamma * hess(W_b|S)/mu_S = hess(W_b)/mu_b in Q(W_b).
BlockGamma solve_block_gamma(const RingCache& rings, const AtomicBlock& block,
                             const GroupElement& g, const GroupElement& h) {
    const int n = rings.parent().n_vars();
    std::vector<int> common;
    for (int v : block.vars)
        if (g.theta(v) == 0 && h.theta(v) == 0) common.push_back(v);
    std::sort(common.begin(), common.end());

    std::vector<int> block_vars = block.vars;
    std::sort(block_vars.begin(), block_vars.end());
    const auto& big = rings.ring_for(block_vars);
    const auto& small = rings.ring_for(common);
    const MilnorRing& ring = *big.ring;
    const size_t dim = ring.basis().size();

    // RHS: hess(W_b)/mu_b on the big basis.
    RatVec rhs(dim, Rat(0));
    for (const auto& [m, c] : ring.hessian_class())
        rhs[ring.basis_index(m)] = c / Rat(Int(dim));

    // Multiplier polynomial hess(W_b|S)/mu_S, embedded into block coordinates.
    Poly mult;
    for (const auto& [m, c] : small.ring->hessian_class()) {
        Monomial full = embed(m, small.restriction.parent_vars, n);
        mult[localize(full, big.restriction.parent_vars)] =
            c / Rat(small.ring->mu());
    }

    RatMat m_op(dim, RatVec(dim, Rat(0)));
    for (size_t j = 0; j < dim; ++j) {
        Poly col = ring.normal_form(poly_mul(poly_mono(ring.basis()[j]), mult));
        for (const auto& [m, c] : col) m_op[ring.basis_index(m)][j] = c;
    }

    auto kernel = mat_nullspace(m_op);
    RatVec x;
    if (kernel.empty()) {
        auto sol = mat_solve(m_op, rhs);
        if (!sol)
            fail(ErrorCode::InternalInconsistency,
                 "cocycle equation inconsistent on block of " + rings.parent().to_string());
        x = std::move(*sol);
    } else {
        auto sol = mat_solve_rowspace(m_op, rhs);
        if (!sol)
            fail(ErrorCode::InternalInconsistency,
                 "cocycle equation inconsistent on block of " + rings.parent().to_string());
        x = std::move(*sol);
    }

    BlockGamma out;
    for (size_t j = 0; j < dim; ++j)
        if (x[j] != 0)
            out.gamma = poly_add(out.gamma,
                                 poly_mono(embed(ring.basis()[j],
                                                 big.restriction.parent_vars, n),
                                           x[j]));
    if (out.gamma.empty())
        fail(ErrorCode::InternalInconsistency, "cocycle gamma vanished unexpectedly");

    if (!kernel.empty()) {
        // The solution is canonical (row space); the product is well defined
        // only if matching-character kernel directions act by zero. Split each
        // kernel vector into character components and keep the ones sharing
        // gamma's character.
        RatMat ab(block.vars.size(), RatVec(block.vars.size()));
        const auto& bp = big.restriction.potential;
        for (size_t i = 0; i < ab.size(); ++i)
            for (size_t j = 0; j < ab.size(); ++j) ab[i][j] = Rat(bp.exponents()[i][j]);
        auto inv = mat_inverse(std::move(ab));
        if (!inv) fail(ErrorCode::InternalInconsistency, "block matrix singular");
        RatMat a_inv_t = mat_transpose(*inv);

        RatVec gamma_class =
            character_class(a_inv_t, localize(out.gamma.begin()->first,
                                              big.restriction.parent_vars));
        for (const auto& [m, c] : out.gamma) {
            (void)c;
            if (character_class(a_inv_t, localize(m, big.restriction.parent_vars)) !=
                gamma_class)
                fail(ErrorCode::InternalInconsistency,
                     "cocycle gamma is not character-pure");
        }
        for (const auto& v : kernel) {
            std::map<RatVec, Poly> components;
            for (size_t j = 0; j < dim; ++j)
                if (v[j] != 0)
                    components[character_class(a_inv_t, ring.basis()[j])]
                              [embed(ring.basis()[j], big.restriction.parent_vars, n)] = v[j];
            auto it = components.find(gamma_class);
            if (it != components.end()) out.ambiguity.push_back(it->second);
        }
    }
    return out;
}

} // namespace

Poly cocycle_gamma(const RingCache& rings, const GroupElement& g, const GroupElement& h,
                   std::vector<Poly>* ambiguity) {
    const auto& p = rings.parent();
    GroupElement gh = g.compose(h);

    std::vector<Poly> block_gammas;
    std::vector<std::vector<Poly>> block_ambiguities;
    for (const auto& block : p.atomic_blocks()) {
        auto trivial_on_block = [&](const GroupElement& e) {
            for (int v : block.vars)
                if (e.theta(v) != 0) return false;
            return true;
        };
        if (trivial_on_block(g) || trivial_on_block(h)) {
            block_gammas.push_back(poly_mono(Monomial(static_cast<size_t>(p.n_vars()), 0)));
            block_ambiguities.emplace_back();
            continue;
        }
        if (!trivial_on_block(gh)) return {}; // block not covered: product vanishes
        auto bg = solve_block_gamma(rings, block, g, h);
        block_gammas.push_back(std::move(bg.gamma));
        block_ambiguities.push_back(std::move(bg.ambiguity));
    }

    Poly gamma = poly_mono(Monomial(static_cast<size_t>(p.n_vars()), 0));
    for (const auto& bg : block_gammas) gamma = poly_mul(gamma, bg);

    if (ambiguity) {
        ambiguity->clear();
        for (size_t b = 0; b < block_gammas.size(); ++b) {
            for (const auto& kappa : block_ambiguities[b]) {
                Poly alt = kappa;
                for (size_t o = 0; o < block_gammas.size(); ++o)
                    if (o != b) alt = poly_mul(alt, block_gammas[o]);
                ambiguity->push_back(std::move(alt));
            }
        }
    }
    return gamma;
}

Rat b_pairing(const RingCache& rings, const GroupElement& g, const Monomial& m1,
              const GroupElement& h, const Monomial& m2) {
    if (!(h == g.inverse())) return Rat(0);
    const auto& entry = rings.ring_for(g.fixed_indices());
    return entry.ring->residue_pairing(
        poly_mono(localize(m1, entry.restriction.parent_vars)),
        poly_mono(localize(m2, entry.restriction.parent_vars)));
}

// ---------------------------------------------------------------------------
// BFrobeniusTable

BFrobeniusTable::BFrobeniusTable(InvertiblePotential p, DiagonalGroup g)
    : p_(std::move(p)), group_(std::move(g)), rings_(p_) {
    if (!group_.is_sl()) fail(ErrorCode::NotSL, "B-model group is not a subgroup of SL");
    build();
}

BFrobeniusTable::SparseVec BFrobeniusTable::multiply_elements(const StateBasisElement& e1,
                                                              const StateBasisElement& e2) const {
    const int n = p_.n_vars();
    GroupElement gh = e1.sector.compose(e2.sector);

    std::vector<Poly> ambiguity;
    Poly gamma = cocycle_gamma(rings_, e1.sector, e2.sector, &ambiguity);
    if (gamma.empty()) return {};

    const auto& entry = rings_.ring_for(gh.fixed_indices());
    auto project = [&](const Poly& f) {
        // ring hom Q_e -> Q_gh: variables outside Fix(gh) go to zero
        Poly local;
        for (const auto& [m, c] : f)
            if (supported_on(m, entry.restriction.parent_vars, n))
                local[localize(m, entry.restriction.parent_vars)] = c;
        return entry.ring->normal_form(local);
    };

    Poly hk = poly_mul(poly_mono(e1.monomial), poly_mono(e2.monomial));
    Poly nf = project(poly_mul(hk, gamma));

    for (const auto& kappa : ambiguity) {
        if (!project(poly_mul(hk, kappa)).empty())
            fail(ErrorCode::NonUniqueSolution,
                 "cocycle ambiguity reaches the product " + e1.sector.to_string() + " * " +
                     e2.sector.to_string());
    }

    SparseVec out;
    for (const auto& [m, c] : nf) {
        Monomial full = embed(m, entry.restriction.parent_vars, n);
        int idx = basis_index(gh, full);
        if (idx < 0)
            fail(ErrorCode::VerificationFailure,
                 "product of invariants left the invariant basis in sector " + gh.to_string() +
                     " (" + p_.monomial_string(std::vector<long>(full.begin(), full.end())) + ")");
        out[idx] = c;
    }
    return out;
}

void BFrobeniusTable::build() {
    basis_ = b_state_space(p_, group_);
    for (size_t i = 0; i < basis_.size(); ++i)
        index_[{basis_[i].sector.phases(), basis_[i].monomial}] = static_cast<int>(i);

    GroupElement id{std::vector<Rat>(static_cast<size_t>(p_.n_vars()), Rat(0))};
    identity_ = basis_index(id, Monomial(static_cast<size_t>(p_.n_vars()), 0));
    if (identity_ < 0)
        fail(ErrorCode::InternalInconsistency, "identity element missing from invariant basis");

    const int n = dim();
    products_.assign(n, std::vector<SparseVec>(n));
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            products_[i][j] = multiply_elements(basis_[i], basis_[j]);
            products_[j][i] = products_[i][j]; // the cocycle is symmetric blockwise
        }

    pairing_.assign(n, RatVec(n, Rat(0)));
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            pairing_[i][j] = b_pairing(rings_, basis_[i].sector, basis_[i].monomial,
                                       basis_[j].sector, basis_[j].monomial);
            pairing_[j][i] = pairing_[i][j];
        }
}

int BFrobeniusTable::basis_index(const GroupElement& sector, const Monomial& m) const {
    auto it = index_.find({sector.phases(), m});
    return it == index_.end() ? -1 : it->second;
}

BFrobeniusTable::SparseVec BFrobeniusTable::multiply(const SparseVec& x,
                                                     const SparseVec& y) const {
    SparseVec out;
    for (const auto& [i, ci] : x)
        for (const auto& [j, cj] : y)
            for (const auto& [k, ck] : products_[i][j]) {
                auto it = out.find(k);
                Rat add = ci * cj * ck;
                if (it == out.end()) {
                    if (add != 0) out.emplace(k, add);
                } else {
                    it->second += add;
                    if (it->second == 0) out.erase(it);
                }
            }
    return out;
}

bool BFrobeniusTable::check_identity(std::string* counterexample) const {
    for (int j = 0; j < dim(); ++j) {
        SparseVec want{{j, Rat(1)}};
        if (products_[identity_][j] != want || products_[j][identity_] != want) {
            if (counterexample) *counterexample = "identity fails on basis element " + std::to_string(j);
            return false;
        }
    }
    return true;
}

bool BFrobeniusTable::check_associativity(std::string* counterexample) const {
    for (int i = 0; i < dim(); ++i)
        for (int j = 0; j < dim(); ++j)
            for (int k = 0; k < dim(); ++k) {
                SparseVec ek{{k, Rat(1)}}, ei{{i, Rat(1)}};
                SparseVec lhs = multiply(products_[i][j], ek);
                SparseVec rhs = multiply(ei, products_[j][k]);
                if (lhs != rhs) {
                    if (counterexample)
                        *counterexample = "associativity fails on triple (" + std::to_string(i) +
                                          "," + std::to_string(j) + "," + std::to_string(k) + ")";
                    return false;
                }
            }
    return true;
}

bool BFrobeniusTable::check_frobenius(std::string* counterexample) const {
    for (int a = 0; a < dim(); ++a)
        for (int b = 0; b < dim(); ++b)
            for (int c = 0; c < dim(); ++c) {
                Rat lhs(0), rhs(0);
                for (const auto& [k, ck] : products_[a][b]) lhs += ck * pairing_[k][c];
                for (const auto& [k, ck] : products_[b][c]) rhs += ck * pairing_[a][k];
                if (lhs != rhs) {
                    if (counterexample)
                        *counterexample = "Frobenius identity fails on triple (" +
                                          std::to_string(a) + "," + std::to_string(b) + "," +
                                          std::to_string(c) + ")";
                    return false;
                }
            }
    return true;
}

bool BFrobeniusTable::check_grading(std::string* counterexample) const {
    for (int i = 0; i < dim(); ++i)
        for (int j = 0; j < dim(); ++j)
            for (const auto& [k, c] : products_[i][j]) {
                (void)c;
                if (basis_[k].degree.plus != basis_[i].degree.plus + basis_[j].degree.plus ||
                    basis_[k].degree.minus != basis_[i].degree.minus + basis_[j].degree.minus) {
                    if (counterexample)
                        *counterexample = "bigrading not additive on pair (" + std::to_string(i) +
                                          "," + std::to_string(j) + ")";
                    return false;
                }
            }
    return true;
}

bool BFrobeniusTable::check_pairing_nondegenerate(std::string* counterexample) const {
    if (mat_rank(pairing_) != static_cast<size_t>(dim())) {
        if (counterexample) *counterexample = "pairing matrix is singular";
        return false;
    }
    return true;
}

bool BFrobeniusTable::check_all(std::string* counterexample) const {
    return check_identity(counterexample) && check_pairing_nondegenerate(counterexample) &&
           check_grading(counterexample) && check_associativity(counterexample) &&
           check_frobenius(counterexample);
}

BFrobeniusTable b_frobenius_table(const InvertiblePotential& p, const DiagonalGroup& g) {
    return BFrobeniusTable(p, g);
}

} // namespace lgm
