#include "lgm/milnor.hpp"

#include <algorithm>
#include <set>

#include "lgm/errors.hpp"

namespace lgm {

bool poly_is_zero(const Poly& a) { return a.empty(); }

Poly poly_mono(const Monomial& m, const Rat& c) {
    Poly p;
    if (c != 0) p[m] = c;
    return p;
}

Poly poly_add(const Poly& a, const Poly& b) {
    Poly out = a;
    for (const auto& [m, c] : b) {
        auto it = out.find(m);
        if (it == out.end()) {
            out.emplace(m, c);
        } else {
            it->second += c;
            if (it->second == 0) out.erase(it);
        }
    }
    return out;
}

Poly poly_scale(const Poly& a, const Rat& c) {
    if (c == 0) return {};
    Poly out;
    for (const auto& [m, x] : a) out.emplace(m, x * c);
    return out;
}

static Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

Poly poly_mul(const Poly& a, const Poly& b) {
    Poly out;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) {
            Monomial m = mono_mul(ma, mb);
            auto it = out.find(m);
            if (it == out.end()) {
                out.emplace(std::move(m), ca * cb);
            } else {
                it->second += ca * cb;
                if (it->second == 0) out.erase(it);
            }
        }
    return out;
}

RestrictedPotential restrict_potential(const InvertiblePotential& p,
                                       const std::vector<int>& fixed) {
    std::vector<int> kept = fixed;
    std::sort(kept.begin(), kept.end());
    std::vector<bool> in(static_cast<size_t>(p.n_vars()), false);
    for (int v : kept) in[v] = true;

    std::vector<std::vector<long>> rows;
    for (const auto& row : p.exponents()) {
        bool supported = true;
        for (int j = 0; j < p.n_vars(); ++j)
            if (row[j] > 0 && !in[j]) {
                supported = false;
                break;
            }
        if (!supported) continue;
        std::vector<long> local;
        local.reserve(kept.size());
        for (int v : kept) local.push_back(row[v]);
        rows.push_back(std::move(local));
    }
    if (rows.size() != kept.size())
        fail(ErrorCode::InternalInconsistency,
             "restriction of " + p.to_string() + " to a fixed locus of dimension " +
                 std::to_string(kept.size()) + " kept " + std::to_string(rows.size()) +
                 " monomials");
    std::vector<std::string> names;
    for (int v : kept) names.push_back(p.var_names()[v]);
    RestrictedPotential out{InvertiblePotential::from_exponents(std::move(names), std::move(rows)),
                            std::move(kept)};
    if (out.potential.det() == 0)
        fail(ErrorCode::InternalInconsistency,
             "restriction of " + p.to_string() + " is degenerate");
    out.potential.atomic_blocks(); // must decompose; throws otherwise
    return out;
}

std::vector<Monomial> atomic_basis(const AtomicBlock& block) {
    const int k = static_cast<int>(block.vars.size());
    std::vector<Monomial> out;
    if (block.kind == AtomicBlock::Kind::Fermat) {
        for (int e = 0; e + 2 <= block.exps[0]; ++e) out.push_back({e});
        return out;
    }
    // Enumerate the box 0 <= alpha_i < a_i.
    Monomial cur(k, 0);
    while (true) {
        bool keep = true;
        if (block.kind == AtomicBlock::Kind::Chain) {
            // Largest prefix {1..s} with alpha_i = delta_i^odd (a_i - 1)
            // must have even length (1-indexed along the chain).
            int s = 0;
            for (int i = 0; i < k; ++i) {
                long want = (i % 2 == 0) ? block.exps[i] - 1 : 0;
                if (cur[i] == want)
                    s = i + 1;
                else
                    break;
            }
            keep = (s % 2 == 0);
        }
        if (keep) out.push_back(cur);
        int i = 0;
        for (; i < k; ++i) {
            if (cur[i] + 1 < block.exps[i]) {
                ++cur[i];
                break;
            }
            cur[i] = 0;
        }
        if (i == k) break;
    }
    return out;
}

// ---------------------------------------------------------------------------
// MilnorRing

Rat MilnorRing::weighted_degree(const Monomial& m) const {
    Rat d(0);
    for (size_t i = 0; i < m.size(); ++i)
        if (m[i] != 0) d += Rat(m[i]) * charges_[i];
    return d;
}

bool MilnorRing::mono_less(const Monomial& a, const Monomial& b) const {
    Rat da = weighted_degree(a), db = weighted_degree(b);
    if (da != db) return da < db;
    for (int v : precedence_) {
        if (a[v] != b[v]) return a[v] < b[v];
    }
    return false;
}

Monomial MilnorRing::lead(const Poly& f) const {
    auto it = f.begin();
    Monomial best = it->first;
    for (++it; it != f.end(); ++it)
        if (mono_less(best, it->first)) best = it->first;
    return best;
}

static bool mono_divides(const Monomial& d, const Monomial& m) {
    for (size_t i = 0; i < d.size(); ++i)
        if (d[i] > m[i]) return false;
    return true;
}

static Monomial mono_quot(const Monomial& m, const Monomial& d) {
    Monomial q(m.size());
    for (size_t i = 0; i < m.size(); ++i) q[i] = m[i] - d[i];
    return q;
}

Poly MilnorRing::reduce_full(Poly f) const {
    Poly out;
    while (!f.empty()) {
        Monomial m = lead(f);
        Rat c = f.at(m);
        int div = -1;
        for (size_t i = 0; i < gb_.size(); ++i)
            if (mono_divides(gb_leads_[i], m)) {
                div = static_cast<int>(i);
                break;
            }
        if (div < 0) {
            out[m] = c;
            f.erase(m);
            continue;
        }
        // gb_ entries are monic
        Poly sub = poly_mul(poly_mono(mono_quot(m, gb_leads_[div]), c), gb_[div]);
        f = poly_add(f, poly_scale(sub, Rat(-1)));
    }
    return out;
}

void MilnorRing::buchberger(std::vector<Poly> gens) {
    auto monic = [&](Poly f) {
        Monomial l = lead(f);
        return poly_scale(f, Rat(1) / f.at(l));
    };
    for (auto& g : gens) {
        if (g.empty()) continue;
        gb_.push_back(monic(g));
        gb_leads_.push_back(lead(gb_.back()));
    }
    std::vector<std::pair<size_t, size_t>> pairs;
    for (size_t i = 0; i < gb_.size(); ++i)
        for (size_t j = i + 1; j < gb_.size(); ++j) pairs.emplace_back(i, j);

    auto coprime = [](const Monomial& a, const Monomial& b) {
        for (size_t i = 0; i < a.size(); ++i)
            if (a[i] > 0 && b[i] > 0) return false;
        return true;
    };

    while (!pairs.empty()) {
        auto [i, j] = pairs.back();
        pairs.pop_back();
        if (coprime(gb_leads_[i], gb_leads_[j])) continue; // Buchberger's first criterion
        Monomial l(gb_leads_[i].size());
        for (size_t k = 0; k < l.size(); ++k)
            l[k] = std::max(gb_leads_[i][k], gb_leads_[j][k]);
        Poly s = poly_add(poly_mul(poly_mono(mono_quot(l, gb_leads_[i])), gb_[i]),
                          poly_scale(poly_mul(poly_mono(mono_quot(l, gb_leads_[j])), gb_[j]),
                                     Rat(-1)));
        Poly r = reduce_full(std::move(s));
        if (r.empty()) continue;
        gb_.push_back(monic(std::move(r)));
        gb_leads_.push_back(lead(gb_.back()));
        for (size_t k = 0; k + 1 < gb_.size(); ++k) pairs.emplace_back(k, gb_.size() - 1);
    }

    // Interreduce to the reduced Groebner basis.
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < gb_.size(); ++i) {
            Poly g = gb_[i];
            std::vector<Poly> others;
            std::vector<Monomial> other_leads;
            for (size_t j = 0; j < gb_.size(); ++j)
                if (j != i) {
                    others.push_back(gb_[j]);
                    other_leads.push_back(gb_leads_[j]);
                }
            std::swap(gb_, others);
            std::swap(gb_leads_, other_leads);
            Poly r = reduce_full(g);
            std::swap(gb_, others);
            std::swap(gb_leads_, other_leads);
            if (r != g) changed = true;
            if (r.empty()) {
                gb_.erase(gb_.begin() + i);
                gb_leads_.erase(gb_leads_.begin() + i);
                --i;
                continue;
            }
            gb_[i] = monic(std::move(r));
            gb_leads_[i] = lead(gb_[i]);
        }
    }
}

void MilnorRing::build_basis() {
    const int n = p_.n_vars();
    if (n == 0) {
        basis_ = {Monomial{}};
        basis_pos_[Monomial{}] = 0;
        staircase_ = basis_;
        staircase_pos_ = basis_pos_;
        staircase_is_basis_ = true;
        top_degree_ = Rat(0);
        top_monomial_ = Monomial{};
        return;
    }
    std::vector<long> cap(n, -1);
    for (const auto& l : gb_leads_) {
        int support = -1;
        bool pure = true;
        for (int v = 0; v < n; ++v)
            if (l[v] > 0) {
                if (support >= 0) {
                    pure = false;
                    break;
                }
                support = v;
            }
        if (pure && support >= 0)
            cap[support] = cap[support] < 0 ? l[support] : std::min<long>(cap[support], l[support]);
    }
    for (int v = 0; v < n; ++v)
        if (cap[v] < 0)
            fail(ErrorCode::InternalInconsistency,
                 "Jacobian quotient of " + p_.to_string() + " is not finite dimensional");

    std::vector<Monomial> box;
    Monomial cur(n, 0);
    while (true) {
        bool reducible = false;
        for (const auto& l : gb_leads_)
            if (mono_divides(l, cur)) {
                reducible = true;
                break;
            }
        if (!reducible) box.push_back(cur);
        int i = 0;
        for (; i < n; ++i) {
            if (cur[i] + 1 < cap[i]) {
                ++cur[i];
                break;
            }
            cur[i] = 0;
        }
        if (i == n) break;
    }
    std::sort(box.begin(), box.end(),
              [&](const Monomial& a, const Monomial& b) { return mono_less(a, b); });
    staircase_ = std::move(box);
    for (size_t i = 0; i < staircase_.size(); ++i)
        staircase_pos_[staircase_[i]] = static_cast<int>(i);

    Rat mu(1);
    for (const Rat& q : charges_) mu *= Rat(1) / q - Rat(1);
    if (Rat(Int(staircase_.size())) != mu)
        fail(ErrorCode::InternalInconsistency,
             "Groebner staircase of " + p_.to_string() + " has " +
                 std::to_string(staircase_.size()) + " monomials, expected mu = " + rat_str(mu));

    // Distinguished basis: the product of the explicit atomic bases (box for
    // loops, parity-filtered box for chains). For chains and Fermats this
    // coincides with the staircase; for loops it cannot (every Jacobian
    // generator is a weighted-degree tie between a pure power and a mixed
    // monomial, and a cyclic precedence cannot be chosen), so the engine
    // certifies the atomic basis by inverting the transition matrix instead.
    std::set<Monomial> expected;
    expected.insert(Monomial(n, 0));
    for (const auto& block : p_.atomic_blocks()) {
        std::set<Monomial> next;
        for (const auto& base : expected)
            for (const auto& local : atomic_basis(block)) {
                Monomial m = base;
                for (size_t i = 0; i < block.vars.size(); ++i) m[block.vars[i]] = local[i];
                next.insert(std::move(m));
            }
        expected = std::move(next);
    }
    if (expected.size() != staircase_.size())
        fail(ErrorCode::InternalInconsistency,
             "atomic basis of " + p_.to_string() + " has " + std::to_string(expected.size()) +
                 " monomials, staircase has " + std::to_string(staircase_.size()));
    basis_.assign(expected.begin(), expected.end());
    std::sort(basis_.begin(), basis_.end(),
              [&](const Monomial& a, const Monomial& b) { return mono_less(a, b); });
    for (size_t i = 0; i < basis_.size(); ++i) basis_pos_[basis_[i]] = static_cast<int>(i);

    staircase_is_basis_ = basis_ == staircase_;
    if (!staircase_is_basis_) {
        const size_t dim = basis_.size();
        RatMat t(dim, RatVec(dim, Rat(0)));
        for (size_t j = 0; j < dim; ++j) {
            Poly r = reduce_full(poly_mono(basis_[j]));
            for (const auto& [m, c] : r) t[staircase_pos_.at(m)][j] = c;
        }
        auto inv = mat_inverse(std::move(t));
        if (!inv)
            fail(ErrorCode::InternalInconsistency,
                 "atomic basis of " + p_.to_string() + " does not span the Jacobian quotient");
        to_basis_ = std::move(*inv);
    }

    top_degree_ = p_.central_charge();
    int top_count = 0;
    for (const auto& m : basis_)
        if (weighted_degree(m) == top_degree_) {
            top_monomial_ = m;
            ++top_count;
        }
    if (top_count != 1)
        fail(ErrorCode::InternalInconsistency,
             "top degree subspace of " + p_.to_string() + " has dimension " +
                 std::to_string(top_count));
}

void MilnorRing::build_hessian() {
    const int n = p_.n_vars();
    if (n == 0) {
        hess_ = poly_mono(Monomial{}, Rat(1));
        return;
    }
    // Second-derivative matrix as polynomials.
    std::vector<std::vector<Poly>> h(n, std::vector<Poly>(n));
    for (const auto& row : p_.exponents()) {
        for (int i = 0; i < n; ++i) {
            if (row[i] == 0) continue;
            for (int j = i; j < n; ++j) {
                long c = (i == j) ? row[i] * (row[i] - 1) : row[i] * row[j];
                if (c == 0) continue;
                Monomial m(row.begin(), row.end());
                m[i] -= 1;
                m[j] -= 1;
                Poly term = poly_mono(m, Rat(c));
                h[i][j] = poly_add(h[i][j], term);
                if (i != j) h[j][i] = poly_add(h[j][i], term);
            }
        }
    }
    // Determinant by cofactor expansion; n stays small for restricted rings.
    std::vector<int> cols(n);
    for (int j = 0; j < n; ++j) cols[j] = j;
    auto det = [&](auto&& self, int r, std::vector<int> cs) -> Poly {
        if (cs.empty()) return poly_mono(Monomial(static_cast<size_t>(n), 0), Rat(1));
        Poly out;
        for (size_t k = 0; k < cs.size(); ++k) {
            const Poly& entry = h[r][cs[k]];
            if (entry.empty()) continue;
            std::vector<int> rest;
            for (size_t t = 0; t < cs.size(); ++t)
                if (t != k) rest.push_back(cs[t]);
            Poly minor = self(self, r + 1, std::move(rest));
            Poly term = poly_mul(entry, minor);
            if (k % 2 == 1) term = poly_scale(term, Rat(-1));
            out = poly_add(out, term);
        }
        return out;
    };
    Poly hess = det(det, 0, cols);
    hess_ = normal_form(hess);
    if (hess_.empty())
        fail(ErrorCode::InternalInconsistency,
             "Hessian of " + p_.to_string() + " reduces to zero");
    if (hess_.size() != 1 || hess_.begin()->first != top_monomial_)
        fail(ErrorCode::InternalInconsistency,
             "Hessian class of " + p_.to_string() + " is not concentrated in top degree");
}

MilnorRing::MilnorRing(InvertiblePotential p) : p_(std::move(p)) {
    p_.ensure_valid();
    charges_.assign(p_.charges().begin(), p_.charges().end());

    // Variable precedence follows the atomic block structure: block order by
    // smallest index, chain/loop order within a block, highest first. This is
    // what aligns the staircase with the explicit atomic bases.
    for (const auto& block : p_.atomic_blocks())
        for (int v : block.vars) precedence_.push_back(v);

    const int n = p_.n_vars();
    if (n > 0) {
        std::vector<Poly> jac;
        for (int j = 0; j < n; ++j) {
            Poly d;
            for (const auto& row : p_.exponents()) {
                if (row[j] == 0) continue;
                Monomial m(row.begin(), row.end());
                m[j] -= 1;
                d = poly_add(d, poly_mono(m, Rat(row[j])));
            }
            jac.push_back(std::move(d));
        }
        buchberger(std::move(jac));
    }
    build_basis();
    build_hessian();
}

Poly MilnorRing::normal_form_monomial(const Monomial& m) const {
    {
        std::lock_guard<std::mutex> lock(memo_mutex_);
        auto it = nf_memo_.find(m);
        if (it != nf_memo_.end()) return it->second;
    }
    Poly r = reduce_full(poly_mono(m));
    if (!staircase_is_basis_ && !r.empty()) {
        // re-express the staircase representative over the atomic basis
        RatVec v(staircase_.size(), Rat(0));
        for (const auto& [sm, c] : r) v[staircase_pos_.at(sm)] = c;
        RatVec w = mat_apply(to_basis_, v);
        Poly out;
        for (size_t i = 0; i < w.size(); ++i)
            if (w[i] != 0) out[basis_[i]] = w[i];
        r = std::move(out);
    }
    std::lock_guard<std::mutex> lock(memo_mutex_);
    return nf_memo_.emplace(m, std::move(r)).first->second;
}

Poly MilnorRing::normal_form(const Poly& f) const {
    Poly out;
    for (const auto& [m, c] : f) out = poly_add(out, poly_scale(normal_form_monomial(m), c));
    return out;
}

Rat MilnorRing::residue_pairing(const Poly& f, const Poly& g) const {
    Poly prod = normal_form(poly_mul(f, g));
    auto it = prod.find(top_monomial_);
    if (it == prod.end()) return Rat(0);
    return Rat(Int(basis_.size())) * it->second / hess_.at(top_monomial_);
}

RatMat MilnorRing::pairing_matrix() const {
    const size_t n = basis_.size();
    RatMat out(n, RatVec(n, Rat(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i; j < n; ++j) {
            Rat v = residue_pairing(poly_mono(basis_[i]), poly_mono(basis_[j]));
            out[i][j] = v;
            out[j][i] = v;
        }
    return out;
}

int MilnorRing::basis_index(const Monomial& m) const {
    auto it = basis_pos_.find(m);
    return it == basis_pos_.end() ? -1 : it->second;
}

const RingCache::Entry& RingCache::ring_for(const std::vector<int>& fixed) const {
    std::vector<int> key = fixed;
    std::sort(key.begin(), key.end());
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    RestrictedPotential r = restrict_potential(p_, key);
    auto ring = std::make_shared<const MilnorRing>(r.potential);
    return cache_.emplace(key, Entry{std::move(r), std::move(ring)}).first->second;
}

} // namespace lgm
