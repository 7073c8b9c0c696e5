#include "lgm/corpus.hpp"

#include <algorithm>
#include <set>

namespace lgm {

namespace {

struct BlockSpec {
    AtomicBlock::Kind kind;
    std::vector<long> exps;

    bool operator<(const BlockSpec& o) const {
        if (kind != o.kind) return kind < o.kind;
        return exps < o.exps;
    }
};

std::vector<BlockSpec> atomic_block_specs(int max_vars, int max_exponent) {
    std::vector<BlockSpec> out;
    for (long a = 2; a <= max_exponent; ++a)
        out.push_back({AtomicBlock::Kind::Fermat, {a}});

    auto tuples = [&](int len) {
        std::vector<std::vector<long>> ts;
        std::vector<long> cur(len, 2);
        while (true) {
            ts.push_back(cur);
            int i = 0;
            for (; i < len; ++i) {
                if (cur[i] < max_exponent) {
                    ++cur[i];
                    break;
                }
                cur[i] = 2;
            }
            if (i == len) break;
        }
        return ts;
    };

    for (int len = 2; len <= max_vars; ++len) {
        for (auto& t : tuples(len)) {
            // loops up to rotation: keep the lexicographically least rotation
            std::vector<long> best = t;
            for (int r = 1; r < len; ++r) {
                std::vector<long> rot(t.begin() + r, t.end());
                rot.insert(rot.end(), t.begin(), t.begin() + r);
                best = std::min(best, rot);
            }
            if (t == best) out.push_back({AtomicBlock::Kind::Loop, t});
        }
        for (auto& t : tuples(len)) out.push_back({AtomicBlock::Kind::Chain, t});
    }
    return out;
}

const char* kVarNames[] = {"x", "y", "z", "w", "v", "u", "t", "s"};

InvertiblePotential build_potential(const std::vector<BlockSpec>& blocks) {
    int n = 0;
    for (const auto& b : blocks) n += static_cast<int>(b.exps.size());
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.emplace_back(kVarNames[i]);

    std::vector<std::vector<long>> rows;
    int base = 0;
    for (const auto& b : blocks) {
        const int k = static_cast<int>(b.exps.size());
        for (int i = 0; i < k; ++i) {
            std::vector<long> row(n, 0);
            row[base + i] = b.exps[i];
            switch (b.kind) {
            case AtomicBlock::Kind::Fermat:
                break;
            case AtomicBlock::Kind::Loop:
                row[base + (i + 1) % k] += 1;
                break;
            case AtomicBlock::Kind::Chain:
                if (i + 1 < k) row[base + i + 1] += 1;
                break;
            }
            rows.push_back(std::move(row));
        }
        base += k;
    }
    return InvertiblePotential::from_exponents(std::move(names), std::move(rows));
}

} // namespace

std::vector<InvertiblePotential> enumerate_corpus_potentials(int max_vars, int max_exponent) {
    auto specs = atomic_block_specs(max_vars, max_exponent);
    std::vector<InvertiblePotential> out;
    for (const auto& s : specs) {
        auto p = build_potential({s});
        if (p.validate().valid) out.push_back(std::move(p));
    }
    // two-block sums within the variable budget
    for (size_t i = 0; i < specs.size(); ++i)
        for (size_t j = i; j < specs.size(); ++j) {
            if (static_cast<int>(specs[i].exps.size() + specs[j].exps.size()) > max_vars)
                continue;
            auto p = build_potential({specs[i], specs[j]});
            if (p.validate().valid) out.push_back(std::move(p));
        }
    return out;
}

std::vector<CorpusEntry> enumerate_corpus(int max_vars, int max_exponent) {
    std::vector<CorpusEntry> out;
    for (auto& p : enumerate_corpus_potentials(max_vars, max_exponent)) {
        CorpusEntry entry;
        entry.potential = p;

        auto add = [&](const std::string& label, DiagonalGroup g) {
            for (const auto& existing : entry.groups)
                if (existing.group.same_elements(g)) return;
            entry.groups.push_back({label, std::move(g)});
        };

        GroupElement j = exponential_grading(p);
        DiagonalGroup gmax = enumerate_gmax(p);
        add("J", subgroup_closure(p, {j}));
        add("Gmax", gmax);
        add("SL", sl_subgroup(gmax));
        // cyclic subgroups containing J
        for (const auto& g : gmax.elements()) {
            DiagonalGroup h = subgroup_closure(p, {g});
            if (h.contains(j)) add("cyc:" + g.to_string(), std::move(h));
        }
        out.push_back(std::move(entry));
    }
    return out;
}

} // namespace lgm
