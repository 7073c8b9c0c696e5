#include "lgm/json_io.hpp"

namespace lgm {

Json to_json(const Rat& r) { return rat_str(r); }

Json to_json(const std::vector<Rat>& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(rat_str(x));
    return out;
}

Json to_json(const GroupElement& g) { return to_json(g.phases()); }

Json to_json(const DiagonalGroup& g) {
    Json out;
    out["order"] = g.order();
    Json elems = Json::array();
    for (const auto& e : g.elements()) elems.push_back(to_json(e));
    out["elements"] = std::move(elems);
    Json gens = Json::array();
    for (const auto& e : g.generators()) gens.push_back(to_json(e));
    out["generators"] = std::move(gens);
    return out;
}

Json to_json(const InvertiblePotential& p) {
    Json out;
    out["potential"] = p.to_string();
    out["vars"] = p.var_names();
    out["exponents"] = p.exponents();
    return out;
}

Json to_json(const AtomicBlock& b, const InvertiblePotential& p) {
    Json out;
    out["kind"] = b.kind_name();
    Json vars = Json::array();
    for (int v : b.vars) vars.push_back(p.var_names()[v]);
    out["vars"] = std::move(vars);
    out["exponents"] = b.exps;
    return out;
}

Json to_json(const Monomial& m) {
    Json out = Json::array();
    for (int e : m) out.push_back(e);
    return out;
}

Json to_json(const BiDegree& d) {
    Json out;
    out["plus"] = rat_str(d.plus);
    out["minus"] = rat_str(d.minus);
    out["sum"] = rat_str(d.sum());
    out["diff"] = rat_str(d.diff());
    return out;
}

Json to_json(const StateBasisElement& e, const InvertiblePotential& p) {
    Json out;
    out["model"] = e.model == Model::A ? "A" : "B";
    out["sector"] = to_json(e.sector);
    out["monomial"] = to_json(e.monomial);
    out["monomial_str"] =
        p.monomial_string(std::vector<long>(e.monomial.begin(), e.monomial.end()));
    out["degree"] = to_json(e.degree);
    return out;
}

Json to_json(const MirrorPair& mp, const InvertiblePotential& a_side,
             const InvertiblePotential& b_side) {
    Json out;
    out["b"] = to_json(mp.b, b_side);
    out["a"] = to_json(mp.a, a_side);
    return out;
}

Json to_json(const MilnorRing& ring) {
    Json out;
    out["potential"] = ring.potential().to_string();
    out["vars"] = ring.potential().var_names();
    out["mu"] = ring.mu().str();
    Json basis = Json::array();
    for (const auto& m : ring.basis()) basis.push_back(to_json(m));
    out["basis"] = std::move(basis);
    Json pairing = Json::array();
    for (const auto& row : ring.pairing_matrix()) pairing.push_back(to_json(row));
    out["pairing"] = std::move(pairing);
    return out;
}

Json to_json(const BFrobeniusTable& t) {
    Json out;
    out["potential"] = t.potential().to_string();
    out["group_order"] = t.group().order();
    out["dim"] = t.dim();
    Json basis = Json::array();
    for (const auto& e : t.basis()) basis.push_back(to_json(e, t.potential()));
    out["basis"] = std::move(basis);
    Json products = Json::array();
    for (int i = 0; i < t.dim(); ++i)
        for (int j = i; j < t.dim(); ++j) {
            for (const auto& [k, c] : t.product(i, j)) {
                Json entry;
                entry["i"] = i;
                entry["j"] = j;
                entry["k"] = k;
                entry["c"] = rat_str(c);
                products.push_back(std::move(entry));
            }
        }
    out["structure_constants"] = std::move(products);
    Json pairing = Json::array();
    for (const auto& row : t.pairing()) pairing.push_back(to_json(row));
    out["pairing"] = std::move(pairing);
    return out;
}

Json to_json(const CorrelatorRecord& r) {
    Json out;
    out["genus"] = r.genus;
    Json ins = Json::array();
    for (const auto& g : r.insertions) ins.push_back(to_json(g));
    out["insertions"] = std::move(ins);
    out["line_degrees"] = to_json(r.line_degrees);
    out["axiom"] = r.axiom;
    out["value"] = rat_str(r.value);
    if (!r.note.empty()) out["note"] = r.note;
    return out;
}

Json to_json(const ARingPresentation& pres) {
    Json out;
    out["potential"] = pres.p.to_string();
    out["transpose"] = pres.wt.to_string();
    out["dim"] = pres.dim();
    Json gens = Json::array();
    for (int i = 0; i < pres.p.n_vars(); ++i)
        gens.push_back("Y_" + pres.wt.var_names()[i] + " -> 1_{rho_" + pres.p.var_names()[i] +
                       " J}");
    out["generators"] = std::move(gens);
    Json rels = Json::array();
    for (const auto& r : pres.relations) {
        Json terms = Json::array();
        for (const auto& [m, c] : r) {
            Json t;
            t["monomial"] = to_json(m);
            t["coeff"] = rat_str(c);
            terms.push_back(std::move(t));
        }
        rels.push_back(std::move(terms));
    }
    out["relations"] = std::move(rels);
    Json basis = Json::array();
    for (const auto& m : pres.ring->basis()) basis.push_back(to_json(m));
    out["basis"] = std::move(basis);
    Json audit = Json::array();
    for (const auto& r : pres.audit) audit.push_back(to_json(r));
    out["audit"] = std::move(audit);
    return out;
}

Json to_json(const StrangeDualityRow& row) {
    Json out;
    out["class"] = row.class_name;
    out["strange_dual"] = row.dual_class;
    out["charges_equal"] = row.charges_equal;
    out["mu_equal"] = row.mu_equal;
    out["gmax_generated_by_J"] = row.gmax_generated_by_j;
    out["transpose_matches_dual"] = row.transpose_matches_dual;
    out["poincare_equal"] = row.poincare_equal;
    if (row.ring_checked)
        out["ring_comparison"] = row.ring_ok ? "pass" : "fail";
    else
        out["ring_comparison"] = "excluded: " + row.ring_excluded_reason;
    out["ok"] = row.ok();
    return out;
}

InvertiblePotential potential_from_json(const Json& j) {
    std::vector<std::string> vars = j.at("vars").get<std::vector<std::string>>();
    std::vector<std::vector<long>> exps =
        j.at("exponents").get<std::vector<std::vector<long>>>();
    return InvertiblePotential::from_exponents(std::move(vars), std::move(exps));
}

} // namespace lgm
