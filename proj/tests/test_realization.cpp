#include <doctest.h>

#include <random>
#include <set>

#include "lpa/corpus.hpp"
#include "lpa/realization.hpp"

#include "support.hpp"

using namespace lpa;

namespace {

const Field Q = Field::rationals();

LaurentMatrix unit_matrix(int n, std::int64_t period, int i, int j, std::int64_t exp) {
  LaurentMatrix m = LaurentMatrix::zero(n, period);
  m.at(i - 1, j - 1) = LaurentPoly::term(exp, Rational(1));
  return m;
}

}  // namespace

TEST_CASE("build: line is acyclic-single-sink with paths (v, e)") {
  Graph g = Graph::parse("u v; e: u->v");
  auto m = build_realization(g);
  CHECK(m.kind == RealizationKind::kAcyclicSingleSink);
  REQUIRE(m.size() == 2);
  CHECK(m.paths[0].length() == 0);
  CHECK(m.paths[1].length() == 1);
  CHECK(m.shifts == std::vector<std::int64_t>{0, 1});
}

TEST_CASE("build: comet with paths (v, f), period 1") {
  Graph g = Graph::parse("u v; f: u->v; c: v->v");
  auto m = build_realization(g);
  CHECK(m.kind == RealizationKind::kComet);
  CHECK(m.period() == 1);
  REQUIRE(m.size() == 2);
  CHECK(m.shifts == std::vector<std::int64_t>{0, 1});
}

TEST_CASE("build refusals name the obstruction") {
  CHECK_THROWS_WITH_AS(build_realization(Graph::parse("v; e: v->v; f: v->v")),
                       "cycle (e) has exit f", PreconditionError);
  CHECK_THROWS_WITH_AS(build_realization(Graph::parse("u v w; e: u->v; f: u->w")),
                       "second sink 'w'", PreconditionError);
  CHECK_THROWS_AS(build_realization(Graph::parse("a b; x: a->a; y: b->b")),
                  PreconditionError);
  CHECK_THROWS_AS(build_realization(Graph::parse("v w u; e: v->w * omega; f: v->u")),
                  PreconditionError);
}

TEST_CASE("realize: the spec's generator images") {
  SUBCASE("line: e -> e_21") {
    Graph g = Graph::parse("u v; e: u->v");
    auto m = build_realization(g);
    CHECK(realize(m, parse_element("e", g, Q)) == unit_matrix(2, 0, 2, 1, 0));
  }
  SUBCASE("comet: c -> e_11(x)") {
    Graph g = Graph::parse("u v; f: u->v; c: v->v");
    auto m = build_realization(g);
    CHECK(realize(m, parse_element("c", g, Q)) == unit_matrix(2, 1, 1, 1, 1));
    CHECK(realize(m, parse_element("c^", g, Q)) == unit_matrix(2, 1, 1, 1, -1));
  }
  SUBCASE("vertex sum realizes to the identity") {
    Graph g = Graph::parse("u v; f: u->v; c: v->v");
    auto m = build_realization(g);
    CHECK(realize(m, parse_element("u + v", g, Q)) == LaurentMatrix::identity(2, 1));
    Graph a = Graph::parse("u v w; e: u->v; f: v->w");
    auto ma = build_realization(a);
    CHECK(realize(ma, parse_element("u + v + w", a, Q)) ==
          LaurentMatrix::identity(ma.size(), 0));
  }
}

TEST_CASE("realize is a verified homomorphism on random pairs") {
  std::mt19937_64 rng(61);
  for (int gi = 0; gi < 12; ++gi) {
    Graph g = gi % 2 == 0 ? random_acyclic_single_sink(rng, 5, 4)
                          : random_comet(rng, 4, 3, 3);
    auto m = build_realization(g);
    for (int i = 0; i < 25; ++i) {
      Element a = random_element(rng, g, Q, 3, 3);
      Element b = random_element(rng, g, Q, 3, 3);
      CHECK(realize(m, multiply(a, b)) == realize(m, a).mul(realize(m, b), Q));
      CHECK(realize(m, add(a, b)) == realize(m, a).add(realize(m, b), Q));
    }
  }
}

TEST_CASE("star realizes as transpose with x -> x^{-1}") {
  std::mt19937_64 rng(67);
  for (int gi = 0; gi < 10; ++gi) {
    Graph g = gi % 2 == 0 ? random_acyclic_single_sink(rng, 5, 4)
                          : random_comet(rng, 4, 3, 3);
    auto m = build_realization(g);
    for (int i = 0; i < 20; ++i) {
      Element a = random_element(rng, g, Q, 3, 3);
      LaurentMatrix lhs = realize(m, star(a));
      LaurentMatrix rhs = realize(m, a).transpose();
      if (m.kind == RealizationKind::kComet) rhs = rhs.invert_variable();
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("grading audit: zero violations, and the spec instantiations") {
  SUBCASE("line, a = e of degree 1: entry (2,1), 1 = 0 + delta_2 - delta_1") {
    Graph g = Graph::parse("u v; e: u->v");
    auto m = build_realization(g);
    LaurentMatrix M = realize(m, parse_element("e", g, Q));
    CHECK_FALSE(M.at(1, 0).is_zero());
    CHECK(M.at(1, 0).monomial_exponent() == 0);
    CHECK(1 == 0 + m.shifts[1] - m.shifts[0]);
  }
  SUBCASE("random sampling finds no violations") {
    std::mt19937_64 rng(73);
    for (int gi = 0; gi < 10; ++gi) {
      Graph g = gi % 2 == 0 ? random_acyclic_single_sink(rng, 5, 4)
                            : random_comet(rng, 4, 3, 3);
      auto m = build_realization(g);
      auto report = grading_audit(m, Q, 40, rng);
      CHECK(report.violations.empty());
    }
  }
}

TEST_CASE("reduced basis counts: line 4, isolated 1, clock-3 12") {
  CHECK(reduced_basis(Graph::parse("u v; e: u->v")).size() == 4);
  CHECK(reduced_basis(Graph::parse("v")).size() == 1);
  CHECK(reduced_basis(
            Graph::parse("v w1 w2 w3; e1: v->w1; e2: v->w2; e3: v->w3"))
            .size() == 12);
}

TEST_CASE("dimension audit agrees on random acyclic graphs") {
  std::mt19937_64 rng(79);
  for (int i = 0; i < 40; ++i) {
    Graph g = random_acyclic_single_sink(rng, 5, 4);
    auto a = dimension_audit(g);
    CHECK(a.agree);
    CHECK(a.basis_count == a.decomposition_sum);
  }
  CHECK_THROWS_AS(dimension_audit(Graph::parse("v; c: v->v")), PreconditionError);
}

TEST_CASE("injectivity: realize is a linear bijection onto M_n(K)") {
  std::mt19937_64 rng(83);
  for (int i = 0; i < 10; ++i) {
    Graph g = random_acyclic_single_sink(rng, 5, 3);
    auto m = build_realization(g);
    auto basis = reduced_basis(g);
    REQUIRE(static_cast<int>(basis.size()) == m.size() * m.size());
    test::CoordSpace space;
    std::vector<LaurentMatrix> images;
    for (const auto& mon : basis) {
      Element e = Element::monomial(g, Q, mon.alpha, mon.beta, Rational(1));
      images.push_back(realize(m, e));
      space.collect(0, images.back());
    }
    std::vector<std::vector<Rational>> rows;
    for (const auto& img : images) rows.push_back(space.row({img}));
    CHECK(test::exact_rank(std::move(rows)) == basis.size());
  }
}

TEST_CASE("build refusal: component not reaching the cycle") {
  Graph g = Graph::parse("v z; c: v->v; # z is unreachable\nz2; e: z->z2");
  CHECK_THROWS_WITH_AS(build_realization(g), "vertex 'z' does not reach the cycle",
                       PreconditionError);
}
