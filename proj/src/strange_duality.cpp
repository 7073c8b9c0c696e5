#include "lgm/strange_duality.hpp"

#include <algorithm>
#include <map>

#include "lgm/a_ring.hpp"
#include "lgm/errors.hpp"
#include "lgm/state_space.hpp"

namespace lgm {

const std::vector<ExceptionalRecord>& load_table() {
    // Arnol'd's 14 exceptional unimodal singularities. W' is chosen so that
    // its charges coincide with those of W, <J> generates Gmax(W'), and
    // transposition lands in the strange-dual class. For Z11 and E13 this
    // forces W' = W (they are already transpose to each other).
    static const std::vector<ExceptionalRecord> table = {
        {"Q10", "x^2*z + y^3 + z^4", true, "x^2*z + y^3 + z^4", "E14"},
        {"Q11", "x^2*z + y^3 + y*z^3", true, "x^2*z + y^3 + y*z^3", "Z13"},
        {"Q12", "x^2*z + y^3 + z^5", false, "x^2*z + y^3 + x*z^3", "Q12"},
        {"S11", "x^2*y + y^2*z + z^4", true, "x^2*y + y^2*z + z^4", "W13"},
        {"S12", "x^2*y + y^3*z + x*z^2", true, "x^2*y + y^3*z + x*z^2", "S12"},
        {"U12", "x^3 + y^3 + z^4", false, "x^2*y + x*y^2 + z^4", "U12"},
        {"W12", "x^2 + y^4 + z^5", false, "x^2 + x*y^2 + z^5", "W12"},
        {"W13", "x^2 + y^4 + y*z^4", false, "x^2 + x*y^2 + y*z^4", "S11"},
        {"Z11", "x^2 + y^3*z + z^5", true, "x^2 + y^3*z + z^5", "E13"},
        {"Z12", "x^2 + y^3*z + y*z^4", true, "x^2 + y^3*z + y*z^4", "Z12"},
        {"Z13", "x^2 + y^3*z + z^6", false, "x^2 + y^3*z + z^3*x", "Q11"},
        {"E12", "x^2 + y^3 + z^7", true, "x^2 + y^3 + z^7", "E12"},
        {"E13", "x^2 + y^3 + y*z^5", true, "x^2 + y^3 + y*z^5", "Z11"},
        {"E14", "x^2 + y^3 + z^8", false, "x^2 + y^3 + x*z^4", "Q10"},
    };
    return table;
}

namespace {

std::map<std::string, Rat> charges_by_name(const InvertiblePotential& p) {
    std::map<std::string, Rat> out;
    for (int i = 0; i < p.n_vars(); ++i) out[p.var_names()[i]] = p.charges()[i];
    return out;
}

std::vector<Rat> charge_multiset(const InvertiblePotential& p) {
    std::vector<Rat> q = p.charges();
    std::sort(q.begin(), q.end());
    return q;
}

} // namespace

std::vector<StrangeDualityRow> verify_strange_duality(
    const std::optional<std::string>& row_filter) {
    const auto& table = load_table();
    std::map<std::string, const ExceptionalRecord*> by_name;
    for (const auto& rec : table) by_name[rec.class_name] = &rec;

    std::vector<StrangeDualityRow> rows;
    for (const auto& rec : table) {
        if (row_filter && rec.class_name != *row_filter) continue;
        StrangeDualityRow row;
        row.class_name = rec.class_name;
        row.dual_class = rec.strange_dual_class;

        InvertiblePotential w = InvertiblePotential::parse(rec.w_text);
        InvertiblePotential wp = InvertiblePotential::parse(rec.w_prime_text);
        w.ensure_valid();
        wp.ensure_valid();

        row.charges_equal = charges_by_name(w) == charges_by_name(wp);
        row.mu_equal = w.milnor_number() == wp.milnor_number();

        DiagonalGroup gmax = enumerate_gmax(wp);
        GroupElement j = exponential_grading(wp);
        row.gmax_generated_by_j =
            Int(gmax.order()) == boost::multiprecision::abs(wp.det()) &&
            j.order() == Int(gmax.order());

        // Transpose of W' lands in the strange-dual class (charges and mu).
        InvertiblePotential wt = wp.transpose();
        const ExceptionalRecord* dual = by_name.at(rec.strange_dual_class);
        InvertiblePotential dual_w = InvertiblePotential::parse(dual->w_text);
        row.transpose_matches_dual = charge_multiset(wt) == charge_multiset(dual_w) &&
                                     wt.milnor_number() == dual_w.milnor_number();

        // Bigraded state-space comparison: A-model of (W', <J>) against the
        // unorbifolded B-model of (W')^T, in the (sum, diff) convention the
        // mirror map preserves.
        DiagonalGroup jgrp = subgroup_closure(wp, {j});
        auto a_space = a_state_space(wp, jgrp);
        DiagonalGroup trivial = subgroup_closure(wt, {});
        auto b_space = b_state_space(wt, trivial);
        row.poincare_equal = poincare_sum_diff(a_space) == poincare_sum_diff(b_space);
        if (row.poincare_equal) {
            // mirror_map re-verifies the bijection element by element
            mirror_map(wp, jgrp);
        }

        try {
            auto rep = verify_mirror_frobenius(wp);
            row.ring_checked = true;
            row.ring_ok = rep.ok;
        } catch (const Error& e) {
            if (e.code() == ErrorCode::Unsupported) {
                row.ring_checked = false;
                row.ring_excluded_reason = e.what();
            } else {
                throw;
            }
        }
        rows.push_back(std::move(row));
    }
    if (row_filter && rows.empty())
        fail(ErrorCode::Parse, "unknown singularity class '" + *row_filter + "'");
    return rows;
}

} // namespace lgm
