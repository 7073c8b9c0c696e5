#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lgm/potential.hpp"

namespace lgm {

// One row of the embedded table of Arnol'd's 14 exceptional unimodal
// singularities, with the representative W' whose maximal symmetry group is
// generated by J and whose transpose lands in the strange-dual class.
struct ExceptionalRecord {
    std::string class_name;
    std::string w_text;
    bool gmax_is_j = false; // whether <J> = Gmax already for W itself
    std::string w_prime_text;
    std::string strange_dual_class;
};

const std::vector<ExceptionalRecord>& load_table();

struct StrangeDualityRow {
    std::string class_name;
    std::string dual_class;
    bool charges_equal = false;     // charges(W') == charges(W)
    bool mu_equal = false;          // mu(W') == mu(W)
    bool gmax_generated_by_j = false;
    bool transpose_matches_dual = false; // class data: charges multiset + mu
    bool poincare_equal = false;    // A(W',<J>) vs unorbifolded B((W')^T)
    bool ring_checked = false;      // Theorem-2 hypotheses hold for W'
    bool ring_ok = false;
    std::string ring_excluded_reason; // set when ring_checked == false
    bool ok() const {
        return charges_equal && mu_equal && gmax_generated_by_j &&
               transpose_matches_dual && poincare_equal && (!ring_checked || ring_ok);
    }
};

std::vector<StrangeDualityRow> verify_strange_duality(
    const std::optional<std::string>& row_filter = std::nullopt);

} // namespace lgm
