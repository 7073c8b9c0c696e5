#include <doctest.h>

#include <map>

#include "lgm/corpus.hpp"
#include "lgm/errors.hpp"
#include "lgm/potential.hpp"

using namespace lgm;

namespace {

std::map<std::string, Rat> charges_by_name(const InvertiblePotential& p) {
    std::map<std::string, Rat> out;
    for (int i = 0; i < p.n_vars(); ++i) out[p.var_names()[i]] = p.charges()[i];
    return out;
}

} // namespace

TEST_CASE("parse produces the exponent matrix in first-appearance order") {
    auto p = InvertiblePotential::parse("x^3*y + x*y^5");
    REQUIRE(p.n_vars() == 2);
    CHECK(p.exponents() == std::vector<std::vector<long>>{{3, 1}, {1, 5}});

    auto f = InvertiblePotential::parse("x^5");
    CHECK(f.exponents() == std::vector<std::vector<long>>{{5}});

    // coefficients are accepted and discarded
    auto c = InvertiblePotential::parse("2*x^3*y + 7*x*y^5");
    CHECK(c.exponents() == p.exponents());

    // repeated factors accumulate
    auto r = InvertiblePotential::parse("x*x*x");
    CHECK(r.exponents() == std::vector<std::vector<long>>{{3}});
}

TEST_CASE("parse rejects non-square and malformed input") {
    CHECK_THROWS_AS(InvertiblePotential::parse("x^2+y^3+z^4+x*y"), Error);
    try {
        InvertiblePotential::parse("x^2+y^3+z^4+x*y");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NonSquare);
    }
    CHECK_THROWS_AS(InvertiblePotential::parse(""), Error);
    CHECK_THROWS_AS(InvertiblePotential::parse("x^"), Error);
    CHECK_THROWS_AS(InvertiblePotential::parse("3*"), Error);
    CHECK_THROWS_AS(InvertiblePotential::parse("x^-2"), Error);
}

TEST_CASE("validate") {
    CHECK(InvertiblePotential::parse("x^3*y + x*y^5").validate().valid);

    auto deg = InvertiblePotential::from_exponents({"x", "y"}, {{1, 1}, {1, 1}});
    CHECK_FALSE(deg.validate().valid);

    // q = 1/2 is an allowed boundary, q = 1 is not
    CHECK(InvertiblePotential::parse("x^2").validate().valid);
    auto one = InvertiblePotential::from_exponents({"x"}, {{1}});
    auto rep = one.validate();
    CHECK_FALSE(rep.valid);
    CHECK(rep.problems.front().rfind("ChargeOutOfRange", 0) == 0);
    CHECK_THROWS_AS(one.ensure_valid(), Error);

    // exponent-1 cross terms are rejected outright
    CHECK_FALSE(InvertiblePotential::parse("x*y + y^2*x").validate().valid);
}

TEST_CASE("classify_atomic recognizes the three atomic types") {
    auto loop = InvertiblePotential::parse("x^3*y + x*y^5");
    auto lb = classify_atomic(loop);
    REQUIRE(lb.size() == 1);
    CHECK(lb[0].kind == AtomicBlock::Kind::Loop);
    CHECK(lb[0].exps == std::vector<long>{3, 5});

    auto chain = InvertiblePotential::parse("x^3*y + y^4");
    auto cb = classify_atomic(chain);
    REQUIRE(cb.size() == 1);
    CHECK(cb[0].kind == AtomicBlock::Kind::Chain);
    CHECK(cb[0].exps == std::vector<long>{3, 4});

    auto q10 = InvertiblePotential::parse("x^2*z + y^3 + z^4");
    auto qb = classify_atomic(q10);
    REQUIRE(qb.size() == 2);
    CHECK(qb[0].kind == AtomicBlock::Kind::Chain);
    CHECK(qb[0].exps == std::vector<long>{2, 4});
    CHECK(q10.var_names()[qb[0].vars[0]] == "x");
    CHECK(q10.var_names()[qb[0].vars[1]] == "z");
    CHECK(qb[1].kind == AtomicBlock::Kind::Fermat);
    CHECK(qb[1].exps == std::vector<long>{3});
    CHECK(q10.var_names()[qb[1].vars[0]] == "y");
}

TEST_CASE("classify_atomic output is stable under variable permutation") {
    auto a = InvertiblePotential::parse("x^2*z + y^3 + z^4");
    auto b = InvertiblePotential::parse("z^4 + y^3 + x^2*z"); // reordered monomials
    auto sig = [](const InvertiblePotential& p) {
        std::multiset<std::pair<std::string, std::vector<long>>> s;
        for (const auto& blk : classify_atomic(p)) s.insert({blk.kind_name(), blk.exps});
        return s;
    };
    CHECK(sig(a) == sig(b));
}

TEST_CASE("charges") {
    auto loop = InvertiblePotential::parse("x^3*y + x*y^5");
    CHECK(loop.charges() == std::vector<Rat>{Rat(2, 7), Rat(1, 7)});

    auto chain = InvertiblePotential::parse("x^3*y + y^4");
    CHECK(chain.charges() == std::vector<Rat>{Rat(1, 4), Rat(1, 4)});

    auto q10 = InvertiblePotential::parse("x^2*z + y^3 + z^4");
    auto q = charges_by_name(q10);
    CHECK(q["x"] == Rat(3, 8));
    CHECK(q["y"] == Rat(1, 3));
    CHECK(q["z"] == Rat(1, 4));
}

TEST_CASE("central charge") {
    CHECK(InvertiblePotential::parse("x^3*y + x*y^5").central_charge() == Rat(8, 7));
    CHECK(InvertiblePotential::parse("x^2").central_charge() == Rat(0));
    CHECK(InvertiblePotential::parse("x^2 + y^3 + z^7").central_charge() == Rat(22, 21));
}

TEST_CASE("transpose") {
    auto chain = InvertiblePotential::parse("x^3*y + y^4");
    CHECK(chain.transpose().to_string() == "x^3 + x*y^4");

    auto loop = InvertiblePotential::parse("x^3*y + x*y^5");
    CHECK(loop.transpose() == loop);

    auto e14p = InvertiblePotential::parse("x^2 + y^3 + x*z^4");
    CHECK(e14p.transpose().to_string() == "x^2*z + y^3 + z^4");
}

TEST_CASE("milnor number") {
    CHECK(InvertiblePotential::parse("x^3*y + x*y^5").milnor_number() == 15);
    CHECK(InvertiblePotential::parse("x^3*y + y^4").milnor_number() == 9);
    CHECK(InvertiblePotential::parse("x^5").milnor_number() == 4);
}

TEST_CASE("transpose is an involution and preserves the charge sum") {
    for (const auto& p : enumerate_corpus_potentials(3, 4)) {
        CHECK(p.transpose().transpose() == p);
        Rat s1(0), s2(0);
        auto t = p.transpose();
        for (const auto& q : p.charges()) s1 += q;
        for (const auto& q : t.charges()) s2 += q;
        CHECK(s1 == s2);
    }
}

TEST_CASE("Milnor number and transposition") {
    // Fermat and loop blocks preserve mu under transposition; chains do not
    // in general (the state-space dualities pair mu(W) with the orbifolded
    // side, not with mu(W^T)).
    for (const auto& p : enumerate_corpus_potentials(3, 4)) {
        bool chain_free = true;
        for (const auto& b : p.atomic_blocks())
            if (b.kind == AtomicBlock::Kind::Chain) chain_free = false;
        if (chain_free) CHECK(p.milnor_number() == p.transpose().milnor_number());
    }
    auto c23 = InvertiblePotential::parse("x^2*y + y^3");
    CHECK(c23.milnor_number() == 4);
    CHECK(c23.transpose().milnor_number() == 5);
}
