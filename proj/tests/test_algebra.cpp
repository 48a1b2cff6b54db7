#include <doctest.h>

#include <random>

#include "mss/algebra.hpp"
#include "mss/milnor.hpp"
#include "oracles.hpp"

using namespace mss;

namespace {

std::vector<std::string> names(const std::vector<Monomial>& ms, const std::vector<Generator>& gens) {
  std::vector<std::string> out;
  for (const auto& m : ms) out.push_back(format_monomial(m, gens));
  return out;
}

GradedPresentation rh(int r, int s) { return milnor_presentation({Flavor::real, r, s}); }
GradedPresentation ch(int r, int s) { return milnor_presentation({Flavor::complex, r, s}); }

oracle::Poly to_oracle(const Polynomial& f) {
  oracle::Poly p;
  for (const auto& t : f.terms()) p.insert(t.exponents());
  return p;
}

std::vector<oracle::Poly> oracle_relations(const GradedPresentation& p) {
  std::vector<oracle::Poly> out;
  for (const auto& f : p.relations()) out.push_back(to_oracle(f));
  return out;
}

std::vector<int> oracle_degrees(const GradedPresentation& p) {
  std::vector<int> d;
  for (const auto& g : p.generators()) d.push_back(g.degree);
  return d;
}

Polynomial poly(const GradedPresentation& p, const char* text) { return parse_polynomial(text, p.generators()); }

}  // namespace

TEST_SUITE("algebra") {
  TEST_CASE("monomial enumeration") {
    const std::vector<Generator> zwxy{{"z", 1}, {"w", 1}, {"x", 2}, {"y", 2}};
    CHECK(names(monomials_of_degree(zwxy, 2), zwxy) == std::vector<std::string>{"z^2", "zw", "w^2", "x", "y"});
    const std::vector<Generator> ab{{"a", 1}, {"b", 1}};
    CHECK(names(monomials_of_degree(ab, 3), ab) == std::vector<std::string>{"a^3", "a^2b", "ab^2", "b^3"});
    const std::vector<Generator> gh{{"g", 2}, {"h", 2}};
    CHECK(monomials_of_degree(gh, 3).empty());
    CHECK(names(monomials_of_degree(gh, 0), gh) == std::vector<std::string>{"1"});
  }

  TEST_CASE("monomial counts agree with brute force") {
    const std::vector<Generator> g{{"x", 2}, {"y", 2}, {"z", 1}, {"w", 3}};
    for (int d = 0; d <= 14; ++d) {
      CHECK(monomials_of_degree(g, d).size() == oracle::all_monomials({2, 2, 1, 3}, d).size());
    }
  }

  TEST_CASE("degree bases") {
    const auto b = degree_basis(rh(5, 3), 4);
    CHECK(b.dimension == 4);
    CHECK(names(b.representatives, rh(5, 3).generators()) ==
          std::vector<std::string>{"a^3b", "a^2b^2", "ab^3", "b^4"});
    const auto b0 = degree_basis(ch(4, 2), 0);
    CHECK(b0.dimension == 1);
    CHECK(names(b0.representatives, ch(4, 2).generators()) == std::vector<std::string>{"1"});
    const auto b3 = degree_basis(rh(3, 1), 3);
    CHECK(b3.dimension == oracle::quotient_dim({1, 1}, oracle_relations(rh(3, 1)), 3));
    CHECK(names(b3.representatives, rh(3, 1).generators()) == std::vector<std::string>{"ab^2"});
  }

  TEST_CASE("Poincare tables") {
    CHECK(poincare_table(rh(5, 3), 7) == oracle::quotient_table({1, 1}, oracle_relations(rh(5, 3)), 7));
    CHECK(poincare_table(rh(5, 3), 7) == std::vector<int>{1, 2, 3, 4, 4, 3, 2, 1});
    CHECK(poincare_table(ch(3, 1), 6) == oracle::quotient_table({2, 2}, oracle_relations(ch(3, 1)), 6));
    CHECK(poincare_table(ch(3, 1), 6) == std::vector<int>{1, 0, 2, 0, 2, 0, 1});
    const auto rp2 = parse_presentation("gen x 2\ngen y 2\ngen w 1\nrel x\nrel wy\nrel w^2 + y\n");
    CHECK(poincare_table(rp2, 4) == std::vector<int>{1, 1, 1, 0, 0});
  }

  TEST_CASE("Poincare tables agree with dense elimination on mixed-degree rings") {
    const auto p = parse_presentation(
        "gen x 2\ngen y 2\ngen z 1\ngen w 1\nrel z^2\nrel w^2 + zw + y\nrel x^2 + zwx\nrel wy^2 + zy^2 + wxy\n");
    CHECK(poincare_table(p, 12) == oracle::quotient_table(oracle_degrees(p), oracle_relations(p), 12));
    const auto q = parse_presentation("gen x 4\ngen y 4\ngen z 1\ngen w 2\nrel z^3\nrel w^2 + z^2w + x\nrel x + z^2w\n"
                                      "rel wy + z^2y\n");
    CHECK(poincare_table(q, 16) == oracle::quotient_table(oracle_degrees(q), oracle_relations(q), 16));
  }

  TEST_CASE("normal forms") {
    const auto p = rh(5, 3);
    const QuotientRing ring(p, 7);
    const auto b5 = ring.reduce(poly(p, "b^5"), 5);
    CHECK(b5 == ring.reduce(poly(p, "ab^4 + a^2b^3 + a^3b^2"), 5));
    CHECK(format_polynomial(ring.lift(b5), p.generators()) == "a^3b^2 + a^2b^3 + ab^4");
    CHECK(ring.reduce(poly(p, "a^4"), 4).is_zero());
    CHECK(reduce(p, poly(p, "a^4")).none());
    CHECK(reduce(p, poly(p, "1")).to_string() == "1");
    CHECK(ring.reduce(poly(p, "1")) == ring.unit());
    CHECK_THROWS_AS(reduce(p, poly(p, "a + b^2")), PresentationError);
    CHECK_THROWS_AS(ring.reduce(poly(p, "a^2"), 3), std::invalid_argument);
  }

  TEST_CASE("normal forms agree with the rewriting oracle") {
    for (int r = 1; r <= 6; ++r) {
      for (int s = 1; s <= r; ++s) {
        const auto p = rh(r, s);
        const QuotientRing ring(p, r + s + 2);
        for (int d = 0; d <= r + s + 2; ++d) {
          for (const auto& m : monomials_of_degree(p.generators(), d)) {
            const auto lifted = to_oracle(ring.lift(ring.reduce(Polynomial(m), d)));
            CHECK(lifted == oracle::milnor_normal_form(r, s, oracle::Poly{m.exponents()}));
          }
        }
      }
    }
  }

  TEST_CASE("multiplication") {
    const auto p = rh(5, 3);
    const QuotientRing ring(p, 7);
    const auto a = ring.generator(0), b = ring.generator(1);
    const auto apb = ring.add(a, b);
    CHECK(ring.multiply(apb, apb) == ring.reduce(poly(p, "a^2 + b^2"), 2));
    const auto lhs = ring.multiply(ring.reduce(poly(p, "a^2b^3"), 5), ring.reduce(poly(p, "b^2"), 2));
    const auto expected = oracle::milnor_normal_form(5, 3, oracle::mono(2, 5));
    CHECK(to_oracle(ring.lift(lhs)) == expected);
    CHECK(format_polynomial(ring.lift(lhs), p.generators()) == "a^3b^4");
    CHECK(ring.multiply(apb, ring.unit()) == apb);
    CHECK_THROWS_AS(ring.multiply(ring.reduce(poly(p, "b^4"), 4), ring.reduce(poly(p, "b^4"), 4)), WindowError);
  }

  TEST_CASE("degrees past a certified zero run are zero, others are out of window") {
    const QuotientRing ring(rh(5, 3), 9);
    REQUIRE(ring.vanishes_from());
    CHECK(*ring.vanishes_from() == 8);
    CHECK(ring.dimension(100) == 0);
    const QuotientRing short_ring(rh(5, 3), 5);
    CHECK_FALSE(short_ring.vanishes_from());
    CHECK_THROWS_AS(short_ring.dimension(6), WindowError);
    const auto free_ring = parse_presentation("gen x 2\ngen y 2\nrel x\n");
    CHECK_FALSE(QuotientRing(free_ring, 20).vanishes_from());
  }

  TEST_CASE("nilpotency orders") {
    const auto orbit_real = parse_presentation("gen x 2\ngen y 2\ngen z 1\ngen w 1\nrel z^2\nrel w^2\nrel x^2\nrel wy^2 + wxy\n");
    const QuotientRing r1(orbit_real, 10);
    CHECK(nilpotency_order(r1, r1.generator(2), 10).order == 1);
    CHECK(nilpotency_order(r1, r1.generator(2), 10).exact());
    const auto orbit_complex = parse_presentation("gen x 4\ngen y 4\ngen z 1\ngen w 2\nrel z^3\nrel w^2\nrel x\nrel wy\n");
    const QuotientRing r2(orbit_complex, 10);
    CHECK(nilpotency_order(r2, r2.generator(2), 10).order == 2);
    const QuotientRing r3(rh(5, 3), 8);
    CHECK(nilpotency_order(r3, r3.generator(0), 8).order == 3);
    CHECK(nilpotency_order(r3, r3.zero(1), 8).order == 0);
    const QuotientRing poly_ring(parse_presentation("gen u 1\ngen v 1\nrel v\n"), 12);
    const auto n = nilpotency_order(poly_ring, poly_ring.generator(0), 12);
    CHECK_FALSE(n.exact());
    CHECK(n.order == 12);
  }

  TEST_CASE("dimensions do not depend on generator order") {
    for (int r = 2; r <= 6; ++r) {
      for (int s = 1; s <= r; ++s) {
        const auto p = rh(r, s);
        const std::vector<std::size_t> swap{1, 0};
        CHECK(poincare_table(p, r + s + 1) == poincare_table(p.permuted(swap), r + s + 1));
      }
    }
    const auto q = parse_presentation("gen x 2\ngen y 2\ngen z 1\ngen w 1\nrel z^2\nrel w^2 + zw + x\nrel x^2\nrel wy^2 + wxy\n");
    const std::vector<std::size_t> order{3, 2, 1, 0};
    CHECK(poincare_table(q, 12) == poincare_table(q.permuted(order), 12));
  }

  TEST_CASE("reduce is idempotent on representative expansions") {
    const auto p = rh(7, 5);
    const QuotientRing ring(p, 11);
    for (int d = 0; d <= 11; ++d) {
      for (const auto& m : monomials_of_degree(p.generators(), d)) {
        const auto e = ring.reduce(Polynomial(m), d);
        CHECK(ring.reduce(ring.lift(e), d) == e);
      }
    }
  }

  TEST_CASE("multiplication is commutative and associative") {
    std::mt19937 rng(99);
    for (auto p : {rh(5, 3), rh(7, 5), ch(4, 3)}) {
      const int top = *p.top_hint();
      const QuotientRing ring(p, top);
      auto random_element = [&](int d) {
        Element e = ring.zero(d);
        for (std::size_t i = 0; i < e.coords.size(); ++i) e.coords.set(i, rng() % 2);
        return e;
      };
      for (int trial = 0; trial < 60; ++trial) {
        const int g = p.generators()[0].degree;
        const int du = g * static_cast<int>(rng() % 3), dv = g * static_cast<int>(rng() % 3);
        const int dw = g * static_cast<int>(rng() % 2);
        if (du + dv + dw > top) continue;
        const auto u = random_element(du), v = random_element(dv), w = random_element(dw);
        CHECK(ring.multiply(u, v) == ring.multiply(v, u));
        CHECK(ring.multiply(ring.multiply(u, v), w) == ring.multiply(u, ring.multiply(v, w)));
      }
    }
  }

  TEST_CASE("parallel degree computation matches serial") {
    const auto p = ch(9, 7);
    const QuotientRing a(p, 40, Exec::serial), b(p, 40, Exec::parallel);
    CHECK(a.poincare_table() == b.poincare_table());
    for (int d = 0; d <= 40; ++d) CHECK(a.basis(d).representatives == b.basis(d).representatives);
  }

  TEST_CASE("presentation text round trip") {
    for (auto p : {rh(5, 3), ch(3, 1)}) {
      const auto text = format_presentation(p);
      CHECK(format_presentation(parse_presentation(text)) == text);
      CHECK(parse_presentation(text) == p);
    }
    const auto text = std::string("gen x1 2\ngen y_2 2\ngen w 1\nrel x1^2 + w^2y_2 + wx1w + w^2x1\ntop 3\n");
    const auto p = parse_presentation(text);
    CHECK(p.top_hint() == 3);
    CHECK(format_presentation(parse_presentation(format_presentation(p))) == format_presentation(p));
    CHECK(format_polynomial(p.relations()[0], p.generators()) == "x1^2 + y_2w^2");
  }

  TEST_CASE("malformed presentations are rejected") {
    CHECK_THROWS_AS(parse_presentation("gen a 1\ngen a 1\n"), PresentationError);
    CHECK_THROWS_AS(parse_presentation("gen a 0\n"), PresentationError);
    CHECK_THROWS_AS(parse_presentation("gen a 1\ngen b 2\nrel a + b\n"), PresentationError);
    CHECK_THROWS_AS(parse_presentation("gen a 1\nrel c\n"), PresentationError);
    CHECK_THROWS_AS(parse_presentation("gen a 1\nrel 0\n"), PresentationError);
    CHECK_THROWS_AS(parse_presentation("gen a 1\nbogus line\n"), PresentationError);
    CHECK_THROWS_AS(parse_presentation("gen 9 1\n"), PresentationError);
  }
}
