#include "lgm/symmetry.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "lgm/errors.hpp"
#include "lgm/linalg.hpp"

namespace lgm {

GroupElement::GroupElement(std::vector<Rat> phases) : phases_(std::move(phases)) {
    for (auto& x : phases_) x = mod1(x);
}

GroupElement GroupElement::compose(const GroupElement& o) const {
    std::vector<Rat> out(phases_.size());
    for (size_t i = 0; i < phases_.size(); ++i) out[i] = mod1(phases_[i] + o.phases_[i]);
    return GroupElement(std::move(out));
}

GroupElement GroupElement::inverse() const {
    std::vector<Rat> out(phases_.size());
    for (size_t i = 0; i < phases_.size(); ++i) out[i] = mod1(-phases_[i]);
    return GroupElement(std::move(out));
}

GroupElement GroupElement::pow(long k) const {
    std::vector<Rat> out(phases_.size());
    for (size_t i = 0; i < phases_.size(); ++i) out[i] = mod1(Rat(k) * phases_[i]);
    return GroupElement(std::move(out));
}

bool GroupElement::is_identity() const {
    for (const auto& x : phases_)
        if (x != 0) return false;
    return true;
}

std::vector<int> GroupElement::fixed_indices() const {
    std::vector<int> out;
    for (size_t i = 0; i < phases_.size(); ++i)
        if (phases_[i] == 0) out.push_back(static_cast<int>(i));
    return out;
}

Rat GroupElement::phase_sum() const {
    Rat s(0);
    for (const auto& x : phases_) s += x;
    return s;
}

bool GroupElement::is_sl() const { return is_integer(phase_sum()); }

Int GroupElement::order() const {
    Int o(1);
    for (const auto& x : phases_) o = int_lcm(o, phase_order(x));
    return o;
}

DiagonalGroup::DiagonalGroup(InvertiblePotential parent, std::vector<GroupElement> elements,
                             std::vector<GroupElement> generators)
    : parent_(std::move(parent)), elements_(std::move(elements)), gens_(std::move(generators)) {
    std::sort(elements_.begin(), elements_.end());
    elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
}

bool DiagonalGroup::contains(const GroupElement& g) const {
    return std::binary_search(elements_.begin(), elements_.end(), g);
}

bool DiagonalGroup::is_subgroup_of(const DiagonalGroup& other) const {
    for (const auto& g : elements_)
        if (!other.contains(g)) return false;
    return true;
}

bool DiagonalGroup::is_sl() const {
    for (const auto& g : elements_)
        if (!g.is_sl()) return false;
    return true;
}

bool preserves(const InvertiblePotential& p, const GroupElement& g) {
    if (g.size() != p.n_vars()) return false;
    for (const auto& row : p.exponents()) {
        Rat s(0);
        for (size_t j = 0; j < row.size(); ++j)
            if (row[j] != 0) s += Rat(row[j]) * g.theta(static_cast<int>(j));
        if (!is_integer(s)) return false;
    }
    return true;
}

namespace {

RatMat inverse_exponent_matrix(const InvertiblePotential& p) {
    const int n = p.n_vars();
    RatMat m(n, RatVec(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[i][j] = Rat(p.exponents()[i][j]);
    auto inv = mat_inverse(std::move(m));
    if (!inv) fail(ErrorCode::Degenerate, "det A = 0");
    return *inv;
}

} // namespace

std::vector<GroupElement> rho_generators(const InvertiblePotential& p) {
    RatMat inv = inverse_exponent_matrix(p);
    const int n = p.n_vars();
    std::vector<GroupElement> out;
    out.reserve(n);
    for (int k = 0; k < n; ++k) {
        std::vector<Rat> col(n);
        for (int j = 0; j < n; ++j) col[j] = inv[j][k];
        out.emplace_back(std::move(col));
    }
    return out;
}

std::vector<GroupElement> rho_bar_generators(const InvertiblePotential& p) {
    RatMat inv = inverse_exponent_matrix(p);
    std::vector<GroupElement> out;
    out.reserve(p.n_vars());
    for (auto& row : inv) out.emplace_back(row);
    return out;
}

GroupElement exponential_grading(const InvertiblePotential& p) {
    return GroupElement(p.charges());
}

namespace {

std::vector<GroupElement> closure(int n, const std::vector<GroupElement>& gens) {
    std::set<GroupElement> seen;
    GroupElement id{std::vector<Rat>(n, Rat(0))};
    seen.insert(id);
    std::deque<GroupElement> todo{id};
    while (!todo.empty()) {
        GroupElement cur = todo.front();
        todo.pop_front();
        for (const auto& g : gens) {
            GroupElement nxt = cur.compose(g);
            if (seen.insert(nxt).second) todo.push_back(nxt);
        }
    }
    return {seen.begin(), seen.end()};
}

// Greedy generating set, so later closures and pairings stay cheap.
std::vector<GroupElement> small_generating_set(int n, const std::vector<GroupElement>& elements) {
    std::set<GroupElement> have;
    have.insert(GroupElement{std::vector<Rat>(n, Rat(0))});
    std::vector<GroupElement> gens;
    for (const auto& e : elements) {
        if (have.count(e)) continue;
        gens.push_back(e);
        auto closed = closure(n, gens);
        have = std::set<GroupElement>(closed.begin(), closed.end());
    }
    return gens;
}

} // namespace

DiagonalGroup enumerate_gmax(const InvertiblePotential& p) {
    auto gens = rho_generators(p);
    auto elems = closure(p.n_vars(), gens);
    Int want = boost::multiprecision::abs(p.det());
    if (Int(elems.size()) != want)
        fail(ErrorCode::InternalInconsistency,
             "Gmax order " + std::to_string(elems.size()) + " != |det A| = " + want.str());
    return DiagonalGroup(p, std::move(elems), std::move(gens));
}

DiagonalGroup subgroup_closure(const InvertiblePotential& p,
                               const std::vector<GroupElement>& gens) {
    for (const auto& g : gens)
        if (!preserves(p, g))
            fail(ErrorCode::NotASymmetry, g.to_string() + " does not preserve " + p.to_string());
    return DiagonalGroup(p, closure(p.n_vars(), gens), gens);
}

std::vector<Int> rho_word(const InvertiblePotential& p, const GroupElement& g) {
    const int n = p.n_vars();
    std::vector<Int> word(n, 0);
    for (int i = 0; i < n; ++i) {
        Rat s(0);
        for (int j = 0; j < n; ++j)
            if (p.exponents()[i][j] != 0) s += Rat(p.exponents()[i][j]) * g.theta(j);
        if (!is_integer(s))
            fail(ErrorCode::NotASymmetry,
                 g.to_string() + " does not preserve " + p.to_string());
        word[i] = rat_num(s);
    }
    return word;
}

Rat rho_word_theta(const InvertiblePotential& p, const std::vector<long>& word, int j) {
    RatMat inv = inverse_exponent_matrix(p);
    Rat s(0);
    for (int i = 0; i < p.n_vars(); ++i) s += Rat(word[i] + 1) * inv[j][i];
    return s;
}

DiagonalGroup dual_group(const InvertiblePotential& p, const DiagonalGroup& g) {
    InvertiblePotential t = p.transpose();
    DiagonalGroup gmax_t = enumerate_gmax(t);

    // Integral rho-words for a generating set of G; the pairing of
    // h = prod rhobar_i^{r_i} against a word is theta(h) . word mod 1,
    // independent of the chosen presentations.
    std::vector<std::vector<Int>> words;
    const auto& gens = g.generators().empty() ? g.elements() : g.generators();
    for (const auto& e : gens) words.push_back(rho_word(p, e));

    std::vector<GroupElement> kept;
    for (const auto& h : gmax_t.elements()) {
        bool ok = true;
        for (const auto& w : words) {
            Rat s(0);
            for (int j = 0; j < t.n_vars(); ++j)
                if (w[j] != 0) s += Rat(w[j]) * h.theta(j);
            if (!is_integer(s)) {
                ok = false;
                break;
            }
        }
        if (ok) kept.push_back(h);
    }
    auto kept_gens = small_generating_set(t.n_vars(), kept);
    return DiagonalGroup(t, std::move(kept), std::move(kept_gens));
}

bool is_admissible(const InvertiblePotential& p, const DiagonalGroup& g) {
    return g.contains(exponential_grading(p));
}

DiagonalGroup sl_subgroup(const DiagonalGroup& g) {
    std::vector<GroupElement> kept;
    for (const auto& e : g.elements())
        if (e.is_sl()) kept.push_back(e);
    auto gens = small_generating_set(g.parent().n_vars(), kept);
    return DiagonalGroup(g.parent(), std::move(kept), std::move(gens));
}

DiagonalGroup parse_group_spec(const InvertiblePotential& p, const std::string& spec) {
    if (spec == "gmax" || spec == "Gmax" || spec == "GMAX") return enumerate_gmax(p);
    if (spec == "J" || spec == "j")
        return subgroup_closure(p, {exponential_grading(p)});
    if (spec == "SL" || spec == "sl") return sl_subgroup(enumerate_gmax(p));
    auto split = [](const std::string& s, char sep) {
        std::vector<std::string> out;
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, sep))
            if (!item.empty()) out.push_back(item);
        return out;
    };
    if (spec.rfind("gens:", 0) == 0) {
        std::vector<GroupElement> gens;
        for (const auto& chunk : split(spec.substr(5), ';')) {
            std::vector<Rat> phases;
            for (const auto& f : split(chunk, ',')) phases.push_back(parse_rat(f));
            if (static_cast<int>(phases.size()) != p.n_vars())
                fail(ErrorCode::Parse, "generator arity mismatch in '" + chunk + "'");
            gens.emplace_back(std::move(phases));
        }
        return subgroup_closure(p, gens);
    }
    if (spec.rfind("rho:", 0) == 0) {
        auto parts = split(spec.substr(4), ',');
        if (static_cast<int>(parts.size()) != p.n_vars())
            fail(ErrorCode::Parse, "rho-word arity mismatch in '" + spec + "'");
        auto rho = rho_generators(p);
        GroupElement g{std::vector<Rat>(p.n_vars(), Rat(0))};
        for (size_t i = 0; i < parts.size(); ++i) {
            long e = std::stol(parts[i]);
            if (e < 0) fail(ErrorCode::Parse, "negative rho-word exponent");
            g = g.compose(rho[i].pow(e));
        }
        return subgroup_closure(p, {g});
    }
    fail(ErrorCode::Parse, "unrecognized group spec '" + spec +
                               "' (expected gmax|J|SL|gens:...|rho:...)");
}

} // namespace lgm
