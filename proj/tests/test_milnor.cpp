#include <doctest.h>

#include <set>

#include "lgm/errors.hpp"
#include "lgm/milnor.hpp"

using namespace lgm;

namespace {

Poly from_terms(std::initializer_list<std::pair<Monomial, Rat>> ts) {
    Poly p;
    for (auto& [m, c] : ts) p[m] = c;
    return p;
}

} // namespace

TEST_CASE("restrict_potential") {
    auto u12 = InvertiblePotential::parse("x^3 + y^3 + z^4");
    auto r = restrict_potential(u12, {2});
    CHECK(r.potential.to_string() == "z^4");
    CHECK(r.parent_vars == std::vector<int>{2});

    auto all = restrict_potential(u12, {0, 1, 2});
    CHECK(all.potential == u12);

    auto chain = InvertiblePotential::parse("x^3*y + y^4");
    CHECK(restrict_potential(chain, {1}).potential.to_string() == "y^4");

    auto empty = restrict_potential(u12, {});
    CHECK(empty.potential.n_vars() == 0);
}

TEST_CASE("atomic bases") {
    AtomicBlock loop{AtomicBlock::Kind::Loop, {0, 1}, {3, 5}};
    CHECK(atomic_basis(loop).size() == 15);

    AtomicBlock chain{AtomicBlock::Kind::Chain, {0, 1}, {3, 4}};
    auto cb = atomic_basis(chain);
    std::set<Monomial> cs(cb.begin(), cb.end());
    CHECK(cs.size() == 9);
    CHECK(cs.count({2, 0}) == 1);      // x^2 survives the parity condition
    CHECK(cs.count({2, 1}) == 0);      // x^2 y does not
    CHECK(cs.count({1, 3}) == 1);

    AtomicBlock fermat{AtomicBlock::Kind::Fermat, {0}, {5}};
    CHECK(atomic_basis(fermat) ==
          std::vector<Monomial>{{0}, {1}, {2}, {3}});
}

TEST_CASE("normal forms in small Milnor rings") {
    MilnorRing f5(InvertiblePotential::parse("x^5"));
    CHECK(f5.normal_form_monomial({4}).empty()); // dW = 5x^4

    MilnorRing chain(InvertiblePotential::parse("x^3*y + y^4"));
    CHECK(chain.normal_form_monomial({2, 1}).empty()); // dW/dx = 3x^2 y
    // dW/dy = x^3 + 4y^3, so x^3 = -4 y^3
    CHECK(chain.normal_form_monomial({3, 0}) == from_terms({{{0, 3}, Rat(-4)}}));
}

TEST_CASE("normal form is linear, idempotent and multiplicative") {
    MilnorRing ring(InvertiblePotential::parse("x^3*y + x*y^5"));
    Poly f = from_terms({{{2, 3}, Rat(3)}, {{0, 5}, Rat(-1, 2)}, {{4, 0}, Rat(7)}});
    Poly g = from_terms({{{1, 1}, Rat(1)}, {{3, 2}, Rat(2, 3)}});

    CHECK(ring.normal_form(ring.normal_form(f)) == ring.normal_form(f));
    CHECK(ring.normal_form(poly_mul(f, g)) ==
          ring.normal_form(poly_mul(ring.normal_form(f), ring.normal_form(g))));
    Poly sum = poly_add(f, g);
    CHECK(ring.normal_form(sum) == poly_add(ring.normal_form(f), ring.normal_form(g)));
}

TEST_CASE("hessian classes") {
    MilnorRing f5(InvertiblePotential::parse("x^5"));
    CHECK(f5.hessian_class() == from_terms({{{3}, Rat(20)}}));

    MilnorRing z4(InvertiblePotential::parse("z^4"));
    CHECK(z4.hessian_class() == from_terms({{{2}, Rat(12)}}));

    MilnorRing empty{InvertiblePotential::from_exponents({}, {})};
    CHECK(empty.hessian_class() == from_terms({{Monomial{}, Rat(1)}}));
    CHECK(empty.mu() == 1);
}

TEST_CASE("residue pairing") {
    MilnorRing f5(InvertiblePotential::parse("x^5"));
    CHECK(f5.residue_pairing(poly_mono({1}), poly_mono({2})) == Rat(1, 5));
    CHECK(f5.residue_pairing(poly_mono({0}), f5.hessian_class()) == Rat(f5.mu()));

    MilnorRing empty{InvertiblePotential::from_exponents({}, {})};
    CHECK(empty.residue_pairing(poly_mono(Monomial{}), poly_mono(Monomial{})) == Rat(1));
}

TEST_CASE("top degree equals the central charge") {
    for (const char* text : {"x^5", "x^3*y + x*y^5", "x^3*y + y^4", "x^2*z + y^3 + z^4"}) {
        auto p = InvertiblePotential::parse(text);
        MilnorRing ring(p);
        CHECK(ring.top_degree() == p.central_charge());
        CHECK(ring.weighted_degree(ring.top_monomial()) == p.central_charge());
    }
}

TEST_CASE("pairing matrices are symmetric and nondegenerate") {
    for (const char* text : {"x^5", "x^3*y + y^4", "x^3*y + x*y^3"}) {
        MilnorRing ring(InvertiblePotential::parse(text));
        auto m = ring.pairing_matrix();
        for (size_t i = 0; i < m.size(); ++i)
            for (size_t j = 0; j < m.size(); ++j) CHECK(m[i][j] == m[j][i]);
        CHECK(mat_rank(m) == m.size());
    }
}

TEST_CASE("atomic bases agree with the Groebner staircase across blocks") {
    // The ring constructor asserts |basis| = mu and staircase == product of
    // atomic bases; constructing is the test. All atomic blocks with N <= 3
    // and exponents <= 6, plus four-variable spot checks at the bound.
    std::vector<InvertiblePotential> ps;
    for (long a = 2; a <= 6; ++a) ps.push_back(InvertiblePotential::parse(
        "x^" + std::to_string(a)));
    for (long a = 2; a <= 6; ++a)
        for (long b = 2; b <= 6; ++b) {
            ps.push_back(InvertiblePotential::from_exponents({"x", "y"}, {{a, 1}, {1, b}}));
            ps.push_back(InvertiblePotential::from_exponents({"x", "y"}, {{a, 1}, {0, b}}));
            for (long c = 2; c <= 6; ++c) {
                ps.push_back(InvertiblePotential::from_exponents(
                    {"x", "y", "z"}, {{a, 1, 0}, {0, b, 1}, {1, 0, c}}));
                ps.push_back(InvertiblePotential::from_exponents(
                    {"x", "y", "z"}, {{a, 1, 0}, {0, b, 1}, {0, 0, c}}));
            }
        }
    ps.push_back(InvertiblePotential::parse("x^6*y + y^6*z + z^6*w + w^6*x"));
    ps.push_back(InvertiblePotential::parse("x^6*y + y^6*z + z^6*w + w^6"));
    ps.push_back(InvertiblePotential::parse("x^2*y + y^2*z + z^2*w + w^3"));
    ps.push_back(InvertiblePotential::parse("x^3*y + y^2*z + z^4*w + w^2*x"));
    for (const auto& p : ps) {
        CAPTURE(p.to_string());
        MilnorRing ring(p);
        CHECK(ring.mu() == p.milnor_number());
    }
}
