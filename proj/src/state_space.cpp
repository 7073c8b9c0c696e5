#include "lgm/state_space.hpp"

#include <algorithm>
#include <set>

#include "lgm/errors.hpp"

namespace lgm {

namespace {

Monomial embed(const Monomial& local, const std::vector<int>& parent_vars, int n) {
    Monomial m(static_cast<size_t>(n), 0);
    for (size_t i = 0; i < local.size(); ++i) m[parent_vars[i]] = local[i];
    return m;
}

// Phase of g acting on m * omega_sector (determinant-twisted action).
Rat twisted_phase(const GroupElement& g, const GroupElement& sector, const Monomial& m) {
    Rat s(0);
    for (size_t j = 0; j < m.size(); ++j)
        if (m[j] != 0) s += Rat(m[j]) * g.theta(static_cast<int>(j));
    for (size_t j = 0; j < m.size(); ++j)
        if (sector.theta(static_cast<int>(j)) == 0) s += g.theta(static_cast<int>(j));
    return s;
}

} // namespace

BiDegree bidegree(Model model, const InvertiblePotential& p, const GroupElement& sector,
                  const Monomial& monomial) {
    const auto& q = p.charges();
    Rat internal(0);
    for (size_t j = 0; j < monomial.size(); ++j)
        if (monomial[j] != 0) internal += Rat(monomial[j]) * q[j];

    Rat plus(0), minus(0);
    if (model == Model::A) {
        for (int j = 0; j < p.n_vars(); ++j) {
            const Rat& th = sector.theta(j);
            if (th != 0)
                plus += th - q[j];
            else
                minus += Rat(1) - Rat(2) * q[j];
        }
        minus += plus; // Q^A_- = Q^A_+ + sum over fixed coordinates
        return {plus + internal, minus - internal};
    }
    for (int j = 0; j < p.n_vars(); ++j) {
        const Rat& th = sector.theta(j);
        if (th != 0) {
            plus += th - q[j];
            minus += Rat(1) - th - q[j];
        }
    }
    return {plus + internal, minus + internal};
}

bool is_invariant(const DiagonalGroup& g, const GroupElement& sector, const Monomial& monomial) {
    const auto& gens = g.generators().empty() ? g.elements() : g.generators();
    for (const auto& e : gens)
        if (!is_integer(twisted_phase(e, sector, monomial))) return false;
    return true;
}

bool is_invariant_bruteforce(const DiagonalGroup& g, const GroupElement& sector,
                             const Monomial& monomial) {
    for (const auto& e : g.elements())
        if (!is_integer(twisted_phase(e, sector, monomial))) return false;
    return true;
}

std::vector<Monomial> sector_invariants(const RingCache& rings, const DiagonalGroup& g,
                                        const GroupElement& sector) {
    const auto& entry = rings.ring_for(sector.fixed_indices());
    std::vector<Monomial> out;
    for (const auto& local : entry.ring->basis()) {
        Monomial m = embed(local, entry.restriction.parent_vars, rings.parent().n_vars());
        if (is_invariant(g, sector, m)) out.push_back(std::move(m));
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

std::vector<StateBasisElement> state_space(Model model, const InvertiblePotential& p,
                                           const DiagonalGroup& g) {
    RingCache rings(p);
    std::vector<StateBasisElement> out;
    for (const auto& h : g.elements())
        for (auto& m : sector_invariants(rings, g, h))
            out.push_back({model, h, m, bidegree(model, p, h, m)});
    return out;
}

} // namespace

std::vector<StateBasisElement> a_state_space(const InvertiblePotential& p,
                                             const DiagonalGroup& g) {
    if (!is_admissible(p, g))
        fail(ErrorCode::NotAdmissible, "A-model group does not contain J");
    return state_space(Model::A, p, g);
}

std::vector<StateBasisElement> b_state_space(const InvertiblePotential& p,
                                             const DiagonalGroup& g) {
    if (!g.is_sl()) fail(ErrorCode::NotSL, "B-model group is not a subgroup of SL");
    return state_space(Model::B, p, g);
}

// ---------------------------------------------------------------------------
// Mirror map

namespace {

// Shared machinery for the (total) mirror map B(W^T) -> A(W).
struct MirrorContext {
    const InvertiblePotential& p;
    InvertiblePotential t;
    std::vector<GroupElement> rho;    // columns of A^{-1}: generators for W
    std::vector<GroupElement> rhobar; // rows of A^{-1}: generators for W^T
    RingCache rings_p;
    RingCache rings_t;

    explicit MirrorContext(const InvertiblePotential& pot)
        : p(pot), t(pot.transpose()), rho(rho_generators(pot)),
          rhobar(rho_bar_generators(pot)), rings_p(pot), rings_t(t) {}

    // A-model image of the B-model element (sector h, monomial alpha over Fix h).
    // Returns the A sector and monomial.
    std::pair<GroupElement, Monomial> image(const GroupElement& h, const Monomial& alpha) const {
        const int n = p.n_vars();
        std::vector<bool> in_fb(static_cast<size_t>(n), false);
        for (int j : h.fixed_indices()) in_fb[j] = true;

        GroupElement g{std::vector<Rat>(static_cast<size_t>(n), Rat(0))};
        for (int j = 0; j < n; ++j)
            if (in_fb[j]) g = g.compose(rho[j].pow(alpha[j] + 1));

        std::vector<bool> in_fix_g(static_cast<size_t>(n), false);
        for (int j : g.fixed_indices()) in_fix_g[j] = true;

        // Solve blockwise: the candidate monomial r over Fix(g) must satisfy
        // prod_{j in Fix(g)} rhobar_j^{r_j + 1} = h, with r drawn from the
        // Milnor basis of W restricted to Fix(g).
        Monomial r(static_cast<size_t>(n), 0);
        for (const auto& block : p.atomic_blocks()) {
            std::vector<int> sb;
            for (int v : block.vars)
                if (in_fix_g[v]) sb.push_back(v);
            std::sort(sb.begin(), sb.end());

            const auto& entry = rings_p.ring_for(sb);
            std::vector<Monomial> candidates;
            for (const auto& local : entry.ring->basis()) {
                Monomial cand = embed(local, entry.restriction.parent_vars, n);
                GroupElement w{std::vector<Rat>(static_cast<size_t>(n), Rat(0))};
                for (int v : sb) w = w.compose(rhobar[v].pow(cand[v] + 1));
                bool match = true;
                for (int v : block.vars)
                    if (w.theta(v) != h.theta(v)) {
                        match = false;
                        break;
                    }
                if (match) candidates.push_back(std::move(cand));
            }
            Monomial chosen;
            if (candidates.size() == 1) {
                chosen = candidates[0];
            } else if (candidates.size() == 2 && block.kind == AtomicBlock::Kind::Loop) {
                // Even-loop parity choice: the X- and Y-side alternating
                // monomials get the same parity.
                auto support_matches = [&](const Monomial& cand) {
                    for (int v : block.vars)
                        if ((cand[v] > 0) != (alpha[v] > 0)) return false;
                    return true;
                };
                int hit = -1;
                for (size_t c = 0; c < candidates.size(); ++c)
                    if (support_matches(candidates[c])) {
                        if (hit >= 0)
                            fail(ErrorCode::InternalInconsistency,
                                 "mirror parity rule matched both candidates");
                        hit = static_cast<int>(c);
                    }
                if (hit < 0)
                    fail(ErrorCode::InternalInconsistency,
                         "mirror parity rule matched no candidate");
                chosen = candidates[hit];
            } else {
                fail(ErrorCode::InternalInconsistency,
                     "mirror image not unique: " + std::to_string(candidates.size()) +
                         " candidates in sector " + g.to_string());
            }
            for (int v : block.vars) r[v] = chosen[v];
        }
        return {std::move(g), std::move(r)};
    }

    MirrorPair make_pair(const GroupElement& h, const Monomial& alpha) const {
        auto [g, r] = image(h, alpha);
        StateBasisElement b{Model::B, h, alpha, bidegree(Model::B, t, h, alpha)};
        StateBasisElement a{Model::A, g, r, bidegree(Model::A, p, g, r)};
        if (b.degree.sum() != a.degree.sum() || b.degree.diff() != a.degree.diff())
            fail(ErrorCode::InternalInconsistency,
                 "mirror map changed the bi-degree: B sector " + h.to_string() +
                     " has (sum,diff) = (" + rat_str(b.degree.sum()) + "," +
                     rat_str(b.degree.diff()) + "), A sector " + g.to_string() + " has (" +
                     rat_str(a.degree.sum()) + "," + rat_str(a.degree.diff()) + ")");
        return {std::move(b), std::move(a)};
    }
};

} // namespace

std::vector<MirrorPair> total_mirror_map(const InvertiblePotential& p) {
    p.ensure_valid();
    MirrorContext ctx(p);
    DiagonalGroup gmax_t = enumerate_gmax(ctx.t);

    std::vector<MirrorPair> pairs;
    for (const auto& h : gmax_t.elements()) {
        const auto& entry = ctx.rings_t.ring_for(h.fixed_indices());
        for (const auto& local : entry.ring->basis()) {
            Monomial alpha = embed(local, entry.restriction.parent_vars, p.n_vars());
            pairs.push_back(ctx.make_pair(h, alpha));
        }
    }

    // Bijectivity onto the full unprojected A-side basis.
    std::set<std::pair<std::vector<Rat>, Monomial>> images;
    for (const auto& mp : pairs)
        if (!images.emplace(mp.a.sector.phases(), mp.a.monomial).second)
            fail(ErrorCode::InternalInconsistency, "total mirror map is not injective");
    DiagonalGroup gmax_p = enumerate_gmax(p);
    size_t a_dim = 0;
    for (const auto& g : gmax_p.elements()) {
        const auto& entry = ctx.rings_p.ring_for(g.fixed_indices());
        for (const auto& local : entry.ring->basis()) {
            ++a_dim;
            Monomial m = embed(local, entry.restriction.parent_vars, p.n_vars());
            if (!images.count({g.phases(), m}))
                fail(ErrorCode::InternalInconsistency,
                     "total mirror map misses A-state " + g.to_string());
        }
    }
    if (a_dim != pairs.size())
        fail(ErrorCode::InternalInconsistency, "total mirror map is not surjective");
    return pairs;
}

std::vector<MirrorPair> mirror_map(const InvertiblePotential& p, const DiagonalGroup& g) {
    if (!is_admissible(p, g))
        fail(ErrorCode::NotAdmissible, "A-model group does not contain J");
    MirrorContext ctx(p);
    DiagonalGroup gt = dual_group(p, g);
    if (!gt.is_sl())
        fail(ErrorCode::InternalInconsistency, "dual of an admissible group must lie in SL");

    auto b_basis = b_state_space(ctx.t, gt);
    std::vector<MirrorPair> pairs;
    pairs.reserve(b_basis.size());
    for (const auto& b : b_basis) pairs.push_back(ctx.make_pair(b.sector, b.monomial));

    auto a_basis = a_state_space(p, g);
    std::set<std::pair<std::vector<Rat>, Monomial>> a_states;
    for (const auto& a : a_basis) a_states.emplace(a.sector.phases(), a.monomial);
    std::set<std::pair<std::vector<Rat>, Monomial>> images;
    for (const auto& mp : pairs) {
        if (!images.emplace(mp.a.sector.phases(), mp.a.monomial).second)
            fail(ErrorCode::VerificationFailure, "mirror map is not injective on invariants");
        if (!a_states.count({mp.a.sector.phases(), mp.a.monomial}))
            fail(ErrorCode::VerificationFailure,
                 "mirror image " + mp.a.sector.to_string() + " is not an invariant A-state");
    }
    if (images.size() != a_states.size())
        fail(ErrorCode::VerificationFailure,
             "mirror map image has dimension " + std::to_string(images.size()) +
                 ", A-state space has " + std::to_string(a_states.size()));
    return pairs;
}

Poincare poincare_polynomial(const std::vector<StateBasisElement>& space) {
    Poincare out;
    for (const auto& e : space) ++out[{e.degree.plus, e.degree.minus}];
    return out;
}

Poincare poincare_sum_diff(const std::vector<StateBasisElement>& space) {
    Poincare out;
    for (const auto& e : space) ++out[{e.degree.sum(), e.degree.diff()}];
    return out;
}

std::string poincare_str(const Poincare& p, const std::string& tname, const std::string& sname) {
    if (p.empty()) return "0";
    std::string s;
    for (const auto& [deg, count] : p) {
        if (!s.empty()) s += " + ";
        if (count != 1) s += std::to_string(count) + " ";
        s += tname + "^{" + rat_str(deg.first) + "} " + sname + "^{" + rat_str(deg.second) + "}";
    }
    return s;
}

bool ab_degree_relation_check(const InvertiblePotential& p, const DiagonalGroup& g,
                              std::string* diag) {
    RingCache rings(p);
    Rat chat = p.central_charge();
    for (const auto& h : g.elements()) {
        for (const auto& m : sector_invariants(rings, g, h)) {
            BiDegree a = bidegree(Model::A, p, h, m);
            BiDegree b = bidegree(Model::B, p, h, m);
            if (a.plus != b.plus || a.minus != chat - b.minus) {
                if (diag)
                    *diag = "sector " + h.to_string() + ": deg^A = (" + rat_str(a.plus) + "," +
                            rat_str(a.minus) + "), deg^B = (" + rat_str(b.plus) + "," +
                            rat_str(b.minus) + "), c-hat = " + rat_str(chat);
                return false;
            }
        }
    }
    return true;
}

} // namespace lgm
