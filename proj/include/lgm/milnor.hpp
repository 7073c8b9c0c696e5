#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "lgm/potential.hpp"
#include "lgm/rational.hpp"

namespace lgm {

using Monomial = std::vector<int>;          // exponent vector
using Poly = std::map<Monomial, Rat>;       // zero coefficients never stored

Poly poly_add(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& a, const Rat& c);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_mono(const Monomial& m, const Rat& c = Rat(1));
bool poly_is_zero(const Poly& a);

// Restriction of P to the monomials supported on `fixed` (ascending parent
// indices). The result is again invertible on the kept variables; anything
// else is an InternalInconsistency.
struct RestrictedPotential {
    InvertiblePotential potential;  // over the kept variables
    std::vector<int> parent_vars;   // kept indices, ascending
};
RestrictedPotential restrict_potential(const InvertiblePotential& p,
                                       const std::vector<int>& fixed);

// Explicit atomic monomial basis (exponent vectors local to the block):
// Fermat x^a: {x^k, k <= a-2}; loop: the full box; chain: the box filtered by
// the consecutive-prefix parity condition.
std::vector<Monomial> atomic_basis(const AtomicBlock& block);

// Milnor ring Q_W = C[x]/Jacobian(W) with exact rational arithmetic. The
// normal-form engine is a Buchberger completion of the Jacobian generators
// under the weighted-degree order (by charges) with lexicographic tie-break;
// variable precedence follows the atomic block structure so the Groebner
// staircase matches the atomic bases. Zero-variable rings are first-class:
// basis {1}, hess = 1, mu = 1.
class MilnorRing {
public:
    explicit MilnorRing(InvertiblePotential p);

    const InvertiblePotential& potential() const { return p_; }
    int n_vars() const { return p_.n_vars(); }
    const std::vector<Monomial>& basis() const { return basis_; }
    Int mu() const { return Int(basis_.size()); }
    const std::vector<Rat>& charges() const { return charges_; }

    Rat weighted_degree(const Monomial& m) const;
    Rat top_degree() const { return top_degree_; } // equals c-hat of P
    const Monomial& top_monomial() const { return top_monomial_; }

    // Canonical representative on the basis. Idempotent and linear.
    Poly normal_form(const Poly& f) const;
    Poly normal_form_monomial(const Monomial& m) const;

    const Poly& hessian_class() const { return hess_; }

    // <f,g> = mu * lambda with top component of NF(f g) equal to lambda*hess.
    Rat residue_pairing(const Poly& f, const Poly& g) const;

    // Dense pairing matrix on the basis.
    RatMat pairing_matrix() const;

    int basis_index(const Monomial& m) const; // -1 when absent

    const std::vector<Poly>& groebner_basis() const { return gb_; }

    // Monomial order used by the engine (total order; true when a < b).
    bool mono_less(const Monomial& a, const Monomial& b) const;

private:
    InvertiblePotential p_;
    std::vector<Rat> charges_;
    std::vector<int> precedence_;  // variable indices, highest first
    std::vector<Poly> gb_;
    std::vector<Monomial> gb_leads_;

    // The distinguished basis is the product of atomic bases; the Groebner
    // staircase is internal scaffolding. The invertibility of the transition
    // matrix between the two is what certifies the atomic bases.
    std::vector<Monomial> basis_;
    std::map<Monomial, int> basis_pos_;
    std::vector<Monomial> staircase_;
    std::map<Monomial, int> staircase_pos_;
    bool staircase_is_basis_ = false;
    RatMat to_basis_; // staircase coordinates -> atomic-basis coordinates

    Poly hess_;
    Rat top_degree_;
    Monomial top_monomial_;

    mutable std::mutex memo_mutex_;
    mutable std::map<Monomial, Poly> nf_memo_;

    Monomial lead(const Poly& f) const;
    Poly reduce_full(Poly f) const;
    void buchberger(std::vector<Poly> gens);
    void build_basis();
    void build_hessian();
};

// Shared per-potential cache of restricted Milnor rings, keyed by fixed set.
class RingCache {
public:
    explicit RingCache(InvertiblePotential p) : p_(std::move(p)) {}
    const InvertiblePotential& parent() const { return p_; }

    struct Entry {
        RestrictedPotential restriction;
        std::shared_ptr<const MilnorRing> ring;
    };
    const Entry& ring_for(const std::vector<int>& fixed) const;

private:
    InvertiblePotential p_;
    mutable std::mutex mutex_;
    mutable std::map<std::vector<int>, Entry> cache_;
};

} // namespace lgm
