#pragma once

#include <string>
#include <vector>

#include "lgm/linalg.hpp"
#include "lgm/rational.hpp"

namespace lgm {

struct AtomicBlock {
    enum class Kind { Fermat, Loop, Chain };
    Kind kind;
    std::vector<int> vars;   // indices into the parent potential, in block order
    std::vector<long> exps;  // a_1..a_k along the block

    std::string kind_name() const {
        switch (kind) {
        case Kind::Fermat: return "fermat";
        case Kind::Loop: return "loop";
        case Kind::Chain: return "chain";
        }
        return "?";
    }
};

struct ValidationReport {
    bool valid = true;
    std::vector<std::string> problems;
};

// An invertible quasihomogeneous potential, stored as its exponent matrix.
// Coefficients are normalized to 1 at parse time; a_ij is the exponent of
// variable j in monomial i. The zero-variable potential is permitted (it is
// the restriction of any potential to an empty fixed locus).
class InvertiblePotential {
public:
    InvertiblePotential() = default;

    // Grammar: mono ::= [int '*']? factor ('*' factor)*;
    //          factor ::= ident ('^' int)?; potential ::= mono ('+' mono)*
    // Numeric coefficients are accepted and discarded. Throws ParseError or
    // NonSquare.
    static InvertiblePotential parse(const std::string& text);

    static InvertiblePotential from_exponents(std::vector<std::string> vars,
                                              std::vector<std::vector<long>> exponents);

    int n_vars() const { return static_cast<int>(vars_.size()); }
    const std::vector<std::string>& var_names() const { return vars_; }
    const std::vector<std::vector<long>>& exponents() const { return a_; }

    Int det() const;

    // Exact solution of A q = (1,...,1). Throws Degenerate when det = 0.
    const std::vector<Rat>& charges() const;

    // c-hat = sum(1 - 2 q_i)
    Rat central_charge() const;

    // mu = prod(1/q_i - 1); throws InternalInconsistency when non-integral.
    Int milnor_number() const;

    InvertiblePotential transpose() const;

    // Atomic Fermat/loop/chain decomposition in canonical order (blocks by
    // smallest variable index, loops rotated to start at their smallest
    // index). Throws Degenerate when no decomposition exists or when some
    // block exponent is 1.
    const std::vector<AtomicBlock>& atomic_blocks() const;

    ValidationReport validate() const;
    void ensure_valid() const; // throws on the first validation problem

    std::string to_string() const; // canonical monomial-sum form
    std::string monomial_string(const std::vector<long>& row) const;

    bool operator==(const InvertiblePotential& o) const {
        return vars_ == o.vars_ && a_ == o.a_;
    }

private:
    std::vector<std::string> vars_;
    std::vector<std::vector<long>> a_;

    // lazily computed caches (value-semantic copies share nothing)
    mutable bool have_det_ = false;
    mutable Int det_;
    mutable bool have_charges_ = false;
    mutable std::vector<Rat> charges_;
    mutable bool have_blocks_ = false;
    mutable std::vector<AtomicBlock> blocks_;
};

// Spec operation aliases.
InvertiblePotential parse_potential(const std::string& text);
std::vector<AtomicBlock> classify_atomic(const InvertiblePotential& p);

} // namespace lgm
