#include "lgm/potential.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "lgm/errors.hpp"

namespace lgm {

namespace {

struct Lexer {
    const std::string& s;
    size_t i = 0;
    explicit Lexer(const std::string& text) : s(text) {}

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    bool peek_ident() {
        skip_ws();
        return i < s.size() &&
               (std::isalpha(static_cast<unsigned char>(s[i])) || s[i] == '_');
    }
    bool peek_digit() {
        skip_ws();
        return i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]));
    }
    std::string ident() {
        skip_ws();
        size_t j = i;
        while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
            ++j;
        if (j == i) fail(ErrorCode::Parse, "expected identifier at offset " + std::to_string(i));
        std::string out = s.substr(i, j - i);
        i = j;
        return out;
    }
    long integer() {
        skip_ws();
        size_t j = i;
        if (j < s.size() && (s[j] == '+' || s[j] == '-')) ++j;
        size_t d = j;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        if (j == d) fail(ErrorCode::Parse, "expected integer at offset " + std::to_string(i));
        long v = std::stol(s.substr(i, j - i));
        i = j;
        return v;
    }
    bool done() {
        skip_ws();
        return i >= s.size();
    }
};

} // namespace

InvertiblePotential InvertiblePotential::parse(const std::string& text) {
    Lexer lx(text);
    std::vector<std::string> vars;                 // first-appearance order
    std::map<std::string, int> var_index;
    std::vector<std::map<int, long>> monomials;

    auto var_id = [&](const std::string& name) {
        auto it = var_index.find(name);
        if (it != var_index.end()) return it->second;
        int id = static_cast<int>(vars.size());
        vars.push_back(name);
        var_index.emplace(name, id);
        return id;
    };

    do {
        std::map<int, long> mono;
        // optional discarded coefficient
        if (lx.peek_digit()) {
            long c = lx.integer();
            if (c == 0) fail(ErrorCode::Parse, "zero coefficient");
            if (!lx.eat('*'))
                fail(ErrorCode::Parse, "expected '*' after coefficient");
        }
        bool first = true;
        do {
            if (!lx.peek_ident()) {
                if (first) fail(ErrorCode::Parse, "expected variable");
                fail(ErrorCode::Parse, "expected factor after '*'");
            }
            int v = var_id(lx.ident());
            long e = 1;
            if (lx.eat('^')) {
                e = lx.integer();
                if (e < 0) fail(ErrorCode::Parse, "negative exponent");
            }
            mono[v] += e;
            first = false;
        } while (lx.eat('*'));
        if (mono.empty()) fail(ErrorCode::Parse, "empty monomial");
        monomials.push_back(std::move(mono));
    } while (lx.eat('+'));

    if (!lx.done())
        fail(ErrorCode::Parse, "trailing input at offset " + std::to_string(lx.i));

    const size_t n = vars.size();
    if (monomials.size() != n)
        fail(ErrorCode::NonSquare, "potential has " + std::to_string(monomials.size()) +
                                       " monomials but " + std::to_string(n) + " variables");

    std::vector<std::vector<long>> a(monomials.size(), std::vector<long>(n, 0));
    for (size_t i = 0; i < monomials.size(); ++i)
        for (auto& [v, e] : monomials[i]) a[i][v] = e;
    return from_exponents(std::move(vars), std::move(a));
}

InvertiblePotential InvertiblePotential::from_exponents(std::vector<std::string> vars,
                                                        std::vector<std::vector<long>> exponents) {
    if (exponents.size() != vars.size())
        fail(ErrorCode::NonSquare, "exponent matrix is not square");
    for (auto& row : exponents) {
        if (row.size() != vars.size())
            fail(ErrorCode::NonSquare, "exponent matrix is not square");
        for (long e : row)
            if (e < 0) fail(ErrorCode::Parse, "negative exponent");
    }
    InvertiblePotential p;
    p.vars_ = std::move(vars);
    p.a_ = std::move(exponents);
    return p;
}

Int InvertiblePotential::det() const {
    if (!have_det_) {
        RatMat m(a_.size(), RatVec(a_.size()));
        for (size_t i = 0; i < a_.size(); ++i)
            for (size_t j = 0; j < a_.size(); ++j) m[i][j] = Rat(a_[i][j]);
        Rat d = mat_det(m);
        det_ = rat_num(d); // integer matrix, integer determinant
        have_det_ = true;
    }
    return det_;
}

const std::vector<Rat>& InvertiblePotential::charges() const {
    if (!have_charges_) {
        if (det() == 0) fail(ErrorCode::Degenerate, "det A = 0, charges undetermined");
        RatMat m(a_.size(), RatVec(a_.size()));
        for (size_t i = 0; i < a_.size(); ++i)
            for (size_t j = 0; j < a_.size(); ++j) m[i][j] = Rat(a_[i][j]);
        auto q = mat_solve(std::move(m), RatVec(a_.size(), Rat(1)));
        if (!q) fail(ErrorCode::Degenerate, "charge system inconsistent");
        charges_ = std::move(*q);
        have_charges_ = true;
    }
    return charges_;
}

Rat InvertiblePotential::central_charge() const {
    Rat c(0);
    for (const Rat& q : charges()) c += Rat(1) - Rat(2) * q;
    return c;
}

Int InvertiblePotential::milnor_number() const {
    Rat mu(1);
    for (const Rat& q : charges()) mu *= Rat(1) / q - Rat(1);
    if (!is_integer(mu) || mu <= 0)
        fail(ErrorCode::InternalInconsistency,
             "Milnor number " + rat_str(mu) + " is not a positive integer");
    return rat_num(mu);
}

InvertiblePotential InvertiblePotential::transpose() const {
    std::vector<std::vector<long>> t(a_.size(), std::vector<long>(a_.size()));
    for (size_t i = 0; i < a_.size(); ++i)
        for (size_t j = 0; j < a_.size(); ++j) t[i][j] = a_[j][i];
    return from_exponents(vars_, std::move(t));
}

const std::vector<AtomicBlock>& InvertiblePotential::atomic_blocks() const {
    if (have_blocks_) return blocks_;
    const int n = n_vars();

    // Every row must be x_i^a (terminal) or x_i^a * x_j (edge i -> j), and
    // every variable must head exactly one row and tail at most one.
    std::vector<int> head_row(n, -1);
    std::vector<long> head_exp(n, 0);
    std::vector<int> tail_of(n, -1);   // head var whose row ends at this var
    std::vector<int> next_var(n, -1);  // head -> tail

    for (int i = 0; i < n; ++i) {
        std::vector<int> support;
        for (int j = 0; j < n; ++j)
            if (a_[i][j] > 0) support.push_back(j);
        if (support.empty())
            fail(ErrorCode::Degenerate, "constant monomial in row " + std::to_string(i));
        int head = -1, tail = -1;
        long e = 0;
        if (support.size() == 1) {
            head = support[0];
            e = a_[i][head];
        } else if (support.size() == 2) {
            int u = support[0], v = support[1];
            if (a_[i][u] == 1 && a_[i][v] >= 1) {
                head = v; tail = u;
            } else if (a_[i][v] == 1 && a_[i][u] >= 1) {
                head = u; tail = v;
            } else {
                fail(ErrorCode::Degenerate,
                     "monomial " + monomial_string(a_[i]) + " is not of atomic shape");
            }
            e = a_[i][head];
        } else {
            fail(ErrorCode::Degenerate,
                 "monomial " + monomial_string(a_[i]) + " involves more than two variables");
        }
        if (e < 2)
            fail(ErrorCode::Degenerate, "exponent 1 in monomial " + monomial_string(a_[i]) +
                                            " (a_i >= 2 required)");
        if (head_row[head] != -1)
            fail(ErrorCode::Degenerate, "variable " + vars_[head] + " heads two monomials");
        head_row[head] = i;
        head_exp[head] = e;
        if (tail != -1) {
            if (tail_of[tail] != -1)
                fail(ErrorCode::Degenerate, "variable " + vars_[tail] + " ends two monomials");
            tail_of[tail] = head;
            next_var[head] = tail;
        }
    }
    for (int v = 0; v < n; ++v)
        if (head_row[v] == -1)
            fail(ErrorCode::Degenerate, "variable " + vars_[v] + " heads no monomial");

    std::vector<AtomicBlock> blocks;
    std::vector<bool> seen(n, false);

    // Chains start at variables that are not the tail of any row.
    for (int v = 0; v < n; ++v) {
        if (seen[v] || tail_of[v] != -1) continue;
        AtomicBlock b;
        int cur = v;
        while (cur != -1) {
            if (seen[cur])
                fail(ErrorCode::Degenerate, "chain re-enters variable " + vars_[cur]);
            seen[cur] = true;
            b.vars.push_back(cur);
            b.exps.push_back(head_exp[cur]);
            cur = next_var[cur];
        }
        b.kind = b.vars.size() == 1 ? AtomicBlock::Kind::Fermat : AtomicBlock::Kind::Chain;
        blocks.push_back(std::move(b));
    }
    // Remaining variables lie on cycles.
    for (int v = 0; v < n; ++v) {
        if (seen[v]) continue;
        AtomicBlock b;
        b.kind = AtomicBlock::Kind::Loop;
        int cur = v;
        do {
            seen[cur] = true;
            b.vars.push_back(cur);
            b.exps.push_back(head_exp[cur]);
            cur = next_var[cur];
            if (cur == -1)
                fail(ErrorCode::Degenerate, "broken cycle at variable " + vars_[v]);
        } while (cur != v);
        // rotate so the block starts at its smallest variable index
        auto mn = std::min_element(b.vars.begin(), b.vars.end());
        size_t off = static_cast<size_t>(mn - b.vars.begin());
        std::rotate(b.vars.begin(), b.vars.begin() + off, b.vars.end());
        std::rotate(b.exps.begin(), b.exps.begin() + off, b.exps.end());
        blocks.push_back(std::move(b));
    }

    std::sort(blocks.begin(), blocks.end(),
              [](const AtomicBlock& x, const AtomicBlock& y) { return x.vars[0] < y.vars[0]; });
    blocks_ = std::move(blocks);
    have_blocks_ = true;
    return blocks_;
}

ValidationReport InvertiblePotential::validate() const {
    ValidationReport r;
    auto problem = [&](const std::string& what) {
        r.valid = false;
        r.problems.push_back(what);
    };
    if (det() == 0) {
        problem("Degenerate: det A = 0");
        return r;
    }
    for (int i = 0; i < n_vars(); ++i) {
        const Rat& q = charges()[i];
        if (!(q > 0 && q <= Rat(1, 2)))
            problem("ChargeOutOfRange: q_" + vars_[i] + " = " + rat_str(q) +
                    " outside (0, 1/2]");
    }
    try {
        atomic_blocks();
    } catch (const Error& e) {
        problem(std::string(e.code_name()) + ": " + e.what());
    }
    return r;
}

void InvertiblePotential::ensure_valid() const {
    auto r = validate();
    if (r.valid) return;
    const std::string& what = r.problems.front();
    if (what.rfind("ChargeOutOfRange", 0) == 0) fail(ErrorCode::ChargeOutOfRange, what);
    fail(ErrorCode::Degenerate, what);
}

std::string InvertiblePotential::monomial_string(const std::vector<long>& row) const {
    std::string s;
    for (size_t j = 0; j < row.size(); ++j) {
        if (row[j] == 0) continue;
        if (!s.empty()) s += "*";
        s += vars_[j];
        if (row[j] != 1) s += "^" + std::to_string(row[j]);
    }
    return s.empty() ? "1" : s;
}

std::string InvertiblePotential::to_string() const {
    std::string s;
    for (size_t i = 0; i < a_.size(); ++i) {
        if (i) s += " + ";
        s += monomial_string(a_[i]);
    }
    return s.empty() ? "0" : s;
}

InvertiblePotential parse_potential(const std::string& text) {
    return InvertiblePotential::parse(text);
}

std::vector<AtomicBlock> classify_atomic(const InvertiblePotential& p) {
    return p.atomic_blocks();
}

} // namespace lgm
