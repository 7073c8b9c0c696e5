#include "lgm/a_ring.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "lgm/errors.hpp"

namespace lgm {

std::vector<Rat> line_bundle_degrees(const InvertiblePotential& p, int genus,
                                     const std::vector<GroupElement>& insertions) {
    const auto& q = p.charges();
    const long k = static_cast<long>(insertions.size());
    std::vector<Rat> l(q.size());
    for (size_t j = 0; j < q.size(); ++j) {
        l[j] = q[j] * Rat(2 * genus - 2 + k);
        for (const auto& h : insertions) l[j] -= h.theta(static_cast<int>(j));
    }
    return l;
}

GroupElement select_output_sector(const InvertiblePotential& p, const GroupElement& g1,
                                  const GroupElement& g2) {
    return exponential_grading(p).compose(g1.inverse()).compose(g2.inverse());
}

namespace {

Rat deg_w(const InvertiblePotential& p, const GroupElement& sector) {
    Rat d(static_cast<long>(sector.fixed_indices().size()));
    const auto& q = p.charges();
    for (int j = 0; j < p.n_vars(); ++j) d += Rat(2) * (sector.theta(j) - q[j]);
    return d;
}

void push_audit(std::vector<CorrelatorRecord>* audit, int genus,
                const std::vector<GroupElement>& ins, const std::vector<Rat>& l,
                const std::string& axiom, const Rat& value, const std::string& note) {
    if (audit) audit->push_back({genus, ins, l, axiom, value, note});
}

// Index-zero evaluation: with l_{j0} = 0 and l_{j1} = -2 the correlator is
// minus the X_{j0}-degree of dW/dX_{j1}.
Rat index_zero_value(const InvertiblePotential& p, int j0, int j1) {
    long best = 0;
    for (const auto& row : p.exponents()) {
        if (row[j1] == 0) continue;
        long e = row[j0] - (j0 == j1 ? 1 : 0);
        best = std::max(best, e);
    }
    return Rat(-best);
}

// Classifies the integral pattern; returns "concavity", "index-zero" or "".
std::string pattern_of(const std::vector<Rat>& l, int* j0, int* j1) {
    bool all_neg = true;
    int zeros = 0, minus_two = 0, minus_one = 0;
    for (size_t j = 0; j < l.size(); ++j) {
        if (l[j] >= 0) all_neg = false;
        if (l[j] == 0) {
            ++zeros;
            *j0 = static_cast<int>(j);
        } else if (l[j] == Rat(-2)) {
            ++minus_two;
            *j1 = static_cast<int>(j);
        } else if (l[j] == Rat(-1)) {
            ++minus_one;
        }
    }
    if (all_neg) return "concavity"; // axiom: all l_j < 0
    if (zeros == 1 && minus_two == 1 && minus_one == static_cast<int>(l.size()) - 2)
        return "index-zero";
    return "";
}

Rat correlator(const InvertiblePotential& p, std::vector<GroupElement> insertions,
               size_t arity, std::vector<CorrelatorRecord>* audit) {
    std::sort(insertions.begin(), insertions.end()); // symmetry axiom: order-independent
    if (insertions.size() != arity)
        fail(ErrorCode::Unsupported, "wrong number of insertions");
    for (const auto& h : insertions)
        if (!h.fixed_indices().empty())
            fail(ErrorCode::Unsupported,
                 "Ramond insertion " + h.to_string() + " (nontrivial fixed locus)");

    auto l = line_bundle_degrees(p, 0, insertions);
    for (const auto& lj : l)
        if (!is_integer(lj)) {
            push_audit(audit, 0, insertions, l, "integer-degrees", Rat(0),
                       "fractional line bundle degree");
            return Rat(0);
        }

    Rat total(0);
    for (const auto& h : insertions) total += deg_w(p, h);
    if (total != Rat(2) * p.central_charge()) {
        push_audit(audit, 0, insertions, l, "dimension", Rat(0), "degree sum != 2 c-hat");
        return Rat(0);
    }

    int j0 = -1, j1 = -1;
    std::string pattern = pattern_of(l, &j0, &j1);
    if (pattern == "concavity" && arity == 3) {
        push_audit(audit, 0, insertions, l, "concavity", Rat(1), "all l_j < 0");
        return Rat(1);
    }
    if (pattern == "concavity")
        fail(ErrorCode::Unsupported, "concavity applies to three-point correlators only");
    if (pattern == "index-zero") {
        Rat v = index_zero_value(p, j0, j1);
        push_audit(audit, 0, insertions, l,
                   arity == 3 ? "index-zero" : "composition/index-zero", v,
                   "pattern {0,-2,-1...}");
        return v;
    }
    fail(ErrorCode::Unsupported, "line bundle degree pattern not computed by the axioms");
}

} // namespace

Rat three_point_ns(const InvertiblePotential& p, std::vector<GroupElement> insertions,
                   std::vector<CorrelatorRecord>* audit) {
    return correlator(p, std::move(insertions), 3, audit);
}

Rat four_point_index_zero(const InvertiblePotential& p, std::vector<GroupElement> insertions,
                          std::vector<CorrelatorRecord>* audit) {
    return correlator(p, std::move(insertions), 4, audit);
}

// ---------------------------------------------------------------------------
// Gmax A-model ring

namespace {

struct GmaxContext {
    const InvertiblePotential& p;
    std::vector<GroupElement> rho;
    GroupElement j;
    std::map<std::vector<Rat>, std::vector<Monomial>> sector_states; // from a_state_space

    GmaxContext(const InvertiblePotential& pot, const std::vector<StateBasisElement>& a_basis)
        : p(pot), rho(rho_generators(pot)), j(exponential_grading(pot)) {
        for (const auto& e : a_basis) sector_states[e.sector.phases()].push_back(e.monomial);
    }

    GroupElement word_sector(const Monomial& alpha) const {
        GroupElement g = j;
        for (size_t v = 0; v < alpha.size(); ++v)
            if (alpha[v] != 0) g = g.compose(rho[v].pow(alpha[v]));
        return g;
    }

    bool ns(const GroupElement& g) const { return g.fixed_indices().empty(); }

    bool sector_empty(const GroupElement& g) const {
        auto it = sector_states.find(g.phases());
        return it == sector_states.end() || it->second.empty();
    }
};

Monomial unit_monomial(int n, int v, long e) {
    Monomial m(static_cast<size_t>(n), 0);
    m[v] = static_cast<int>(e);
    return m;
}

} // namespace

Poly ARingPresentation::product(const Monomial& alpha, const Monomial& beta) const {
    Monomial s(alpha.size());
    for (size_t i = 0; i < s.size(); ++i) s[i] = alpha[i] + beta[i];
    return ring->normal_form_monomial(s);
}

ARingPresentation gmax_a_ring(const InvertiblePotential& p) {
    p.ensure_valid();
    for (int i = 0; i < p.n_vars(); ++i)
        if (!(p.charges()[i] < Rat(1, 2)))
            fail(ErrorCode::Unsupported,
                 "charge q_" + p.var_names()[i] + " = " + rat_str(p.charges()[i]) +
                     " is not < 1/2 (Ramond ring generators)");
    for (const auto& block : p.atomic_blocks()) {
        if (block.kind == AtomicBlock::Kind::Chain && block.exps.back() < 3)
            fail(ErrorCode::Unsupported, "chain block with a_N = " +
                                             std::to_string(block.exps.back()) +
                                             " < 3 (Ramond terminal sector)");
        if (block.kind == AtomicBlock::Kind::Loop && block.vars.size() == 2 &&
            (block.exps[0] < 3 || block.exps[1] < 3))
            fail(ErrorCode::Unsupported,
                 "two-variable loop with an exponent equal to 2 (Ramond special case)");
    }

    ARingPresentation pres;
    pres.p = p;
    pres.wt = p.transpose();
    pres.ring = std::make_shared<const MilnorRing>(pres.wt);

    DiagonalGroup gmax = enumerate_gmax(p);
    pres.a_basis = a_state_space(p, gmax);
    pres.basis_map = mirror_map(p, gmax); // asserts bijection and bidegrees

    GmaxContext ctx(p, pres.a_basis);
    const int n = p.n_vars();

    // Sector -> basis monomial (unique for Neveu-Schwarz targets).
    std::map<std::vector<Rat>, std::vector<Monomial>> sector_monomials;
    for (const auto& alpha : pres.ring->basis())
        sector_monomials[ctx.word_sector(alpha).phases()].push_back(alpha);

    auto require_ns = [&](const GroupElement& g, const std::string& where) {
        if (!ctx.ns(g))
            fail(ErrorCode::Unsupported, "Ramond sector " + g.to_string() + " in " + where);
    };

    // Concavity products: every basis pair within bounds with all three
    // sectors Neveu-Schwarz multiplies with coefficient 1.
    std::vector<long> diag(n);
    for (const auto& block : p.atomic_blocks())
        for (size_t i = 0; i < block.vars.size(); ++i) diag[block.vars[i]] = block.exps[i];

    const auto& basis = pres.ring->basis();
    for (size_t i = 0; i < basis.size(); ++i)
        for (size_t j = i; j < basis.size(); ++j) {
            Monomial sum(basis[i].size());
            bool in_bounds = true;
            for (int v = 0; v < n; ++v) {
                sum[v] = basis[i][v] + basis[j][v];
                if (sum[v] > diag[v] - 1) {
                    in_bounds = false;
                    break;
                }
            }
            if (!in_bounds) continue;
            GroupElement g1 = ctx.word_sector(basis[i]);
            GroupElement g2 = ctx.word_sector(basis[j]);
            GroupElement g3 = ctx.word_sector(sum);
            if (!ctx.ns(g1) || !ctx.ns(g2) || !ctx.ns(g3)) continue;
            Rat val = three_point_ns(p, {g1, g2, select_output_sector(p, g1, g2)}, &pres.audit);
            if (val != 1)
                fail(ErrorCode::VerificationFailure,
                     "concavity product failed for basis pair " + std::to_string(i) + "," +
                         std::to_string(j));
            // The table must carry the same product 1 * Y^{alpha+beta}.
            Poly nf = pres.ring->normal_form_monomial(sum);
            if (nf.size() != 1 || nf.begin()->first != sum || nf.begin()->second != 1)
                fail(ErrorCode::VerificationFailure,
                     "normal form disagrees with a concavity product");
        }

    // Boundary relations, one per Jacobian generator of W^T.
    auto expected_monomial = [&](const AtomicBlock& block, size_t idx) {
        // rho_{k-2} rho_{k-1}^{a_{k-1}-1} J as a monomial exponent vector
        Monomial m(static_cast<size_t>(n), 0);
        const size_t k = block.vars.size();
        size_t prev = (idx + k - 1) % k;
        size_t prev2 = (idx + k - 2) % k;
        bool chain = block.kind == AtomicBlock::Kind::Chain;
        if (chain && idx == 0)
            fail(ErrorCode::InternalInconsistency, "no boundary relation at a chain head");
        m[block.vars[prev]] = static_cast<int>(block.exps[prev] - 1);
        if (!(chain && idx == 1)) m[block.vars[prev2]] += 1;
        return m;
    };

    auto relation_target = [&](const GroupElement& target_sector, const Monomial& expect,
                               const Rat& val, int v, long a) {
        auto it = sector_monomials.find(target_sector.phases());
        if (it == sector_monomials.end() || it->second.size() != 1)
            fail(ErrorCode::VerificationFailure,
                 "boundary relation target sector is not a unique basis sector");
        if (it->second[0] != expect)
            fail(ErrorCode::VerificationFailure,
                 "boundary relation target monomial differs from the loop/chain pattern");
        Poly rel = poly_mono(unit_monomial(n, v, a));
        rel = poly_add(rel, poly_mono(expect, -val));
        pres.relations.push_back(std::move(rel));
    };

    for (const auto& block : p.atomic_blocks()) {
        const size_t k = block.vars.size();
        for (size_t idx = 0; idx < k; ++idx) {
            const int v = block.vars[idx];
            const long a = block.exps[idx];

            // Power chain 1_{rho_v^m J} * 1_{rho_v J}, m+1 <= a-1, by concavity.
            for (long m = 1; m + 1 <= a - 1; ++m) {
                GroupElement g1 = ctx.j.compose(ctx.rho[v].pow(m));
                GroupElement g2 = ctx.j.compose(ctx.rho[v]);
                GroupElement g3 = ctx.word_sector(unit_monomial(n, v, m + 1));
                if (!ctx.ns(g1) || !ctx.ns(g2) || !ctx.ns(g3)) continue; // covered above when NS
                Rat val = three_point_ns(p, {g1, g2, select_output_sector(p, g1, g2)},
                                         &pres.audit);
                if (val != 1)
                    fail(ErrorCode::VerificationFailure, "generator power chain broke at " +
                                                             p.var_names()[v] + "^" +
                                                             std::to_string(m + 1));
            }

            const bool is_fermat = block.kind == AtomicBlock::Kind::Fermat;
            const bool is_loop = block.kind == AtomicBlock::Kind::Loop;
            const bool is_chain = block.kind == AtomicBlock::Kind::Chain;

            if (is_fermat) {
                // Y^{a-1} = 0: the product lands in a sector with no invariants.
                GroupElement target = ctx.word_sector(unit_monomial(n, v, a - 1));
                if (!ctx.sector_empty(target))
                    fail(ErrorCode::VerificationFailure,
                         "Fermat boundary sector unexpectedly carries invariants");
                pres.relations.push_back(poly_mono(unit_monomial(n, v, a - 1)));
                push_audit(&pres.audit, 0,
                           {ctx.j.compose(ctx.rho[v].pow(a - 2)), ctx.j.compose(ctx.rho[v])},
                           {}, "empty-sector", Rat(0),
                           "target sector " + target.to_string() + " has no invariant states");
                continue;
            }

            if (is_chain && idx == 0) continue; // relation indexed from the second variable

            GroupElement target = ctx.word_sector(unit_monomial(n, v, a));
            const size_t prev = (idx + k - 1) % k;
            Rat expect_val = Rat(-static_cast<long>(block.exps[prev]));

            Rat val;
            if (is_loop && k == 2 && a == 3) {
                GroupElement g = ctx.j.compose(ctx.rho[v]);
                GroupElement slot = ctx.j.pow(2).compose(g.pow(3).inverse());
                require_ns(slot, "two-variable loop composition slot");
                val = four_point_index_zero(p, {g, g, g, slot}, &pres.audit);
            } else if (is_loop && k == 2) {
                GroupElement g1 = ctx.j.compose(ctx.rho[v].pow(a - 2));
                GroupElement g2 = ctx.j.compose(ctx.rho[v].pow(2));
                require_ns(g1, "loop boundary");
                require_ns(g2, "loop boundary");
                GroupElement slot = select_output_sector(p, g1, g2);
                require_ns(slot, "loop boundary slot");
                val = three_point_ns(p, {g1, g2, slot}, &pres.audit);
            } else if (is_chain && idx == k - 1) {
                // Terminal chain power relation through the composition axiom.
                GroupElement g1 = ctx.j.compose(ctx.rho[v].pow(a - 2));
                GroupElement g2 = ctx.j.compose(ctx.rho[v]);
                require_ns(g1, "chain composition");
                require_ns(g2, "chain composition");
                GroupElement slot =
                    ctx.j.pow(2).compose(g1.inverse()).compose(g2.pow(2).inverse());
                require_ns(slot, "chain composition slot");
                val = four_point_index_zero(p, {g1, g2, g2, slot}, &pres.audit);
            } else {
                GroupElement g1 = ctx.j.compose(ctx.rho[v].pow(a - 1));
                GroupElement g2 = ctx.j.compose(ctx.rho[v]);
                require_ns(g1, "boundary");
                require_ns(g2, "boundary");
                GroupElement slot = select_output_sector(p, g1, g2);
                require_ns(slot, "boundary slot");
                val = three_point_ns(p, {g1, g2, slot}, &pres.audit);
            }
            if (val != expect_val)
                fail(ErrorCode::VerificationFailure,
                     "boundary relation value " + rat_str(val) + " differs from -" +
                         std::to_string(block.exps[prev]));
            relation_target(target, expected_monomial(block, idx), val, v, a);
        }

        if (block.kind == AtomicBlock::Kind::Chain) {
            // Terminal vanishing Y_{N-1} Y_N^{a_N - 1} = 0: the forced output
            // sector carries no invariant states.
            const int last = block.vars[k - 1];
            const int before = block.vars[k - 2];
            GroupElement s1 = ctx.j.compose(ctx.rho[last].pow(block.exps[k - 1] - 1));
            GroupElement s2 = ctx.j.compose(ctx.rho[before]);
            GroupElement target = s1.compose(s2).compose(ctx.j.inverse());
            if (!ctx.sector_empty(target))
                fail(ErrorCode::VerificationFailure,
                     "chain terminal sector unexpectedly carries invariants");
            Monomial m(static_cast<size_t>(n), 0);
            m[last] = static_cast<int>(block.exps[k - 1] - 1);
            m[before] = 1;
            pres.relations.push_back(poly_mono(m));
            push_audit(&pres.audit, 0, {s1, s2}, {}, "empty-sector", Rat(0),
                       "target sector " + target.to_string() + " has no invariant states");
        }
    }

    // The verified relations must span exactly the Jacobian generators of W^T.
    auto monic_under = [&](Poly f) {
        Monomial best = f.begin()->first;
        for (const auto& [m, c] : f) {
            (void)c;
            if (pres.ring->mono_less(best, m)) best = m;
        }
        return poly_scale(f, Rat(1) / f.at(best));
    };
    std::set<Poly> have;
    for (const auto& r : pres.relations) have.insert(monic_under(r));
    for (int j = 0; j < n; ++j) {
        Poly d;
        for (const auto& row : pres.wt.exponents()) {
            if (row[j] == 0) continue;
            Monomial m(row.begin(), row.end());
            m[j] -= 1;
            d = poly_add(d, poly_mono(m, Rat(row[j])));
        }
        if (!have.count(monic_under(d)))
            fail(ErrorCode::VerificationFailure,
                 "Jacobian generator dW^T/dY_" + pres.wt.var_names()[j] +
                     " is not among the correlator-verified relations");
    }
    if (have.size() != static_cast<size_t>(n))
        fail(ErrorCode::VerificationFailure,
             "verified relation count differs from the number of Jacobian generators");

    return pres;
}

MirrorFrobeniusReport verify_mirror_frobenius(const InvertiblePotential& p) {
    MirrorFrobeniusReport rep;
    rep.presentation = gmax_a_ring(p);
    const ARingPresentation& pres = rep.presentation;
    const MilnorRing& ring = *pres.ring;

    auto step = [&](bool ok, const std::string& name, const std::string& detail) {
        rep.checks.push_back(std::string(ok ? "[ok] " : "[FAIL] ") + name);
        if (!ok) {
            rep.ok = false;
            rep.failures.push_back(name + ": " + detail);
        }
    };

    step(Int(pres.a_basis.size()) == pres.wt.milnor_number() &&
             pres.a_basis.size() == ring.basis().size(),
         "dimension", "dim A-state = " + std::to_string(pres.a_basis.size()) + ", mu(W^T) = " +
                          pres.wt.milnor_number().str());

    // Structure constants agree with Q(W^T) under Y_i -> 1_{rho_i J} pairwise.
    bool sc_ok = true;
    for (const auto& a : ring.basis())
        for (const auto& b : ring.basis()) {
            Monomial s(a.size());
            for (size_t i = 0; i < a.size(); ++i) s[i] = a[i] + b[i];
            if (pres.product(a, b) != ring.normal_form_monomial(s)) {
                sc_ok = false;
                break;
            }
        }
    step(sc_ok, "structure-constants", "product table differs from Q(W^T)");

    // Degrees: deg_W(1_{rho^alpha J}) = 2 * wdeg_{W^T}(Y^alpha) through the
    // mirror pairing of section 3.2.
    bool deg_ok = true;
    std::string deg_detail;
    for (const auto& mp : pres.basis_map) {
        Rat want = Rat(2) * ring.weighted_degree(mp.b.monomial);
        if (mp.a.degree.sum() != want) {
            deg_ok = false;
            deg_detail = "sector " + mp.a.sector.to_string();
            break;
        }
    }
    step(deg_ok, "degree-map", deg_detail);

    // A-side pairing: nonzero exactly on mutually inverse sectors; for
    // Neveu-Schwarz pairs the pairing axiom <a, b, 1> reproduces it.
    RingCache rings_p(p);
    const auto& basis = pres.a_basis;
    RatMat eta(basis.size(), RatVec(basis.size(), Rat(0)));
    for (size_t i = 0; i < basis.size(); ++i)
        for (size_t j = 0; j < basis.size(); ++j)
            eta[i][j] = b_pairing(rings_p, basis[i].sector, basis[i].monomial, basis[j].sector,
                                  basis[j].monomial);
    step(mat_rank(eta) == basis.size(), "pairing-nondegenerate", "A-side pairing is singular");
    step(mat_rank(ring.pairing_matrix()) == ring.basis().size(), "milnor-pairing-nondegenerate",
         "Q(W^T) pairing is singular");

    bool ax8_ok = true;
    std::string ax8_detail;
    GroupElement jj = exponential_grading(p);
    for (size_t i = 0; i < basis.size() && ax8_ok; ++i)
        for (size_t j = 0; j < basis.size(); ++j) {
            if (!basis[i].sector.fixed_indices().empty() ||
                !basis[j].sector.fixed_indices().empty())
                continue; // pairing axiom exercised on NS pairs
            Rat want = basis[j].sector == basis[i].sector.inverse() ? Rat(1) : Rat(0);
            Rat got = three_point_ns(p, {basis[i].sector, basis[j].sector, jj});
            if (got != want || eta[i][j] != want) {
                ax8_ok = false;
                ax8_detail = "sectors " + basis[i].sector.to_string() + ", " +
                             basis[j].sector.to_string();
                break;
            }
        }
    step(ax8_ok, "pairing-axiom", ax8_detail);

    return rep;
}

} // namespace lgm
