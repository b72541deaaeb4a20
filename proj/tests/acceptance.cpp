// Acceptance suite: one pass/fail line per criterion, exit code = #failures.

#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "lpa/corpus.hpp"
#include "lpa/json_io.hpp"
#include "lpa/realization.hpp"

#include "support.hpp"

using namespace lpa;

namespace {

const Field Q = Field::rationals();

struct Criterion {
  int id;
  std::string name;
  bool pass = true;
  std::vector<std::string> notes;
  double seconds = 0.0;

  void fail(const std::string& why) {
    pass = false;
    notes.push_back(why);
  }
};

std::string source_dir() { return LPA_SOURCE_DIR; }

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Graph load_fixture(const std::string& name) {
  return Graph::parse(read_file(source_dir() + "/fixtures/" + name + ".graph"));
}

const std::vector<std::string> kFixtures = {
    "single_loop", "comet",      "rose2", "toeplitz", "clock2",
    "clock3",      "ladder2x2",  "line",  "isolated", "rose_omega"};

const std::vector<std::string> kAcyclicFixtures = {"clock2", "clock3", "ladder2x2",
                                                   "line", "isolated"};

// ---- criterion 1: rewriting soundness & confluence ----

void criterion1(Criterion& c) {
  std::mt19937_64 rng(10101);
  int expressions = 0;
  for (const auto& name : kFixtures) {
    Graph g = load_fixture(name);
    if (g.edge_count() == 0) continue;

    // the defining relations normalize to zero as identities
    for (int ei = 0; ei < g.edge_count(); ++ei) {
      const Edge& e = g.edge(ei);
      const std::int64_t reps = e.mult.omega ? 3 : std::min<std::int64_t>(e.mult.count, 3);
      for (std::int64_t k = 0; k < reps; ++k) {
        EdgeInstance inst{ei, k};
        Element lhs = subtract(multiply(star(Element::edge(g, Q, inst)),
                                        Element::edge(g, Q, inst)),
                               Element::vertex(g, Q, e.rng));
        if (!lhs.is_zero()) c.fail(name + ": e^*e != r(e) for " + g.instance_name(inst));
      }
    }
    for (int v = 0; v < g.vertex_count(); ++v) {
      std::vector<EdgeInstance> insts;
      for (int ei : g.out_edges(v)) {
        const Edge& e = g.edge(ei);
        const std::int64_t reps = e.mult.omega ? 3 : e.mult.count;
        for (std::int64_t k = 0; k < reps; ++k) insts.push_back({ei, k});
      }
      for (const auto& a : insts)
        for (const auto& b : insts) {
          if (a == b) continue;
          if (!multiply(star(Element::edge(g, Q, a)), Element::edge(g, Q, b)).is_zero())
            c.fail(name + ": e^*f != 0");
        }
      if (g.is_regular(v)) {
        Element ck2 = Element::vertex(g, Q, v);
        for (const auto& a : insts) {
          Element ea = Element::edge(g, Q, a);
          ck2 = subtract(ck2, multiply(ea, star(ea)));
        }
        if (!ck2.is_zero()) c.fail(name + ": CK-2 identity failed at " + g.vertex_name(v));
      }
    }
  }

  // >= 1000 random raw expressions, randomized rule orders
  while (expressions < 1000) {
    for (const auto& name : kFixtures) {
      Graph g = load_fixture(name);
      if (g.edge_count() == 0) continue;
      RawExpr raw = random_raw_expr(rng, g, 4, 7);
      ++expressions;
      Element det = normalize(raw, g, Q);
      for (int k = 0; k < 3; ++k) {
        std::mt19937_64 r2(rng());
        Element alt = normalize(raw, g, Q, RewriteStrategy::kRandomized, &r2);
        if (!(alt == det)) {
          c.fail(name + ": randomized normalization diverged");
          break;
        }
      }
      if (!c.pass) break;
    }
    if (!c.pass) break;
  }
  c.notes.push_back(std::to_string(expressions) + " random expressions, 3 randomized replays each");
}

// ---- criterion 2/3/4: corpus equivalences, routes, witnesses ----

struct CorpusRun {
  std::vector<Graph> graphs;
};

CorpusRun make_corpus(int count, std::uint64_t seed, double omega_prob) {
  CorpusRun run;
  std::mt19937_64 rng(seed);
  CorpusOptions opts;
  opts.omega_prob = omega_prob;
  for (int i = 0; i < count; ++i) run.graphs.push_back(random_graph(rng, opts));
  return run;
}

void criterion2(Criterion& c, const CorpusRun& noomega) {
  int disagreements = 0;
  for (const auto& g : noomega.graphs) {
    const bool a = decide_graded_sigma_V(g, Q).verdict;
    const bool b = decide_directly_finite(g, Q).verdict;
    const bool d = bounded_index(g, Q).bounded;
    bool e = true;
    try {
      semisimple_decomposition(g);
    } catch (const PreconditionError&) {
      e = false;
    }
    if (a != b || b != d || d != e) {
      ++disagreements;
      c.fail("fourway disagreement on\n" + g.to_text());
    }
  }
  c.notes.push_back(std::to_string(noomega.graphs.size()) + " graphs, " +
                    std::to_string(disagreements) + " disagreements");
}

void criterion3(Criterion& c, const CorpusRun& noomega, const CorpusRun& omega) {
  int checked = 0;
  for (const auto* run : {&noomega, &omega}) {
    for (const auto& g : run->graphs) {
      ++checked;
      try {
        decide_graded_sigma_V(g, Q);  // throws InternalError on route disagreement
      } catch (const InternalError& e) {
        c.fail(std::string(e.what()) + " on\n" + g.to_text());
      }
    }
  }
  c.notes.push_back(std::to_string(checked) + " graphs incl. omega corpus, routes agree");
}

void criterion4(Criterion& c, const CorpusRun& noomega, const CorpusRun& omega) {
  int with_exit = 0;
  for (const auto* run : {&noomega, &omega}) {
    for (const auto& g : run->graphs) {
      const Cycle* bad = nullptr;
      const auto cycles = enumerate_cycles(g);
      for (const auto& cy : cycles)
        if (cy.has_exit()) { bad = &cy; break; }
      if (!bad) continue;
      ++with_exit;

      const auto v = decide_directly_finite(g, Q);
      const auto* pw = std::get_if<ElementPairWitness>(&v.witness);
      if (!pw) {
        c.fail("missing element-pair witness");
        continue;
      }
      if (!(multiply(pw->x, pw->y) == pw->u) || multiply(pw->y, pw->x) == pw->u)
        c.fail("element-pair identities failed on\n" + g.to_text());

      const auto w = make_matrix_units(g, Q, *bad, 4);
      if (!verify_matrix_units(g, Q, w)) {
        c.fail("matrix-unit identities failed on\n" + g.to_text());
        continue;
      }
      auto unit = [&](int i, int j) { return w.units[(i - 1) * 4 + (j - 1)]; };
      Element N = Element::zero(g, Q);
      for (int i = 1; i < 4; ++i) N = add(N, unit(i, i + 1));
      Element N3 = multiply(multiply(N, N), N);
      if (N3.is_zero()) c.fail("N^3 vanished");
      if (!multiply(N3, N).is_zero()) c.fail("N^4 nonzero");
    }
  }
  c.notes.push_back(std::to_string(with_exit) + " graphs with a cycle-with-exit");
}

// ---- criterion 5: realization audits ----

void criterion5(Criterion& c) {
  std::mt19937_64 rng(50505);
  int hom_checks = 0;
  auto audit_graph = [&](const Graph& g) {
    RealizationMap m = build_realization(g);
    for (int i = 0; i < 200; ++i) {
      Element a = random_element(rng, g, Q, 3, 3);
      Element b = random_element(rng, g, Q, 3, 3);
      ++hom_checks;
      if (!(realize(m, multiply(a, b)) == realize(m, a).mul(realize(m, b), Q))) {
        c.fail("homomorphism failed on\n" + g.to_text());
        return;
      }
      if (!(realize(m, add(a, b)) == realize(m, a).add(realize(m, b), Q))) {
        c.fail("additivity failed on\n" + g.to_text());
        return;
      }
    }
    auto report = grading_audit(m, Q, 50, rng);
    if (!report.violations.empty())
      c.fail("grading violations on\n" + g.to_text() + report.violations[0].detail);
  };

  for (int i = 0; i < 50 && c.pass; ++i) audit_graph(random_acyclic_single_sink(rng, 5, 4));
  for (int i = 0; i < 20 && c.pass; ++i) audit_graph(random_comet(rng, 4, 3, 3));

  std::mt19937_64 rng2(50506);
  for (int i = 0; i < 50 && c.pass; ++i) {
    Graph g = random_acyclic_single_sink(rng2, 5, 4);
    auto a = dimension_audit(g);
    if (!a.agree) c.fail("dimension audit disagrees on\n" + g.to_text());
  }
  for (const auto& name : kAcyclicFixtures) {
    auto a = dimension_audit(load_fixture(name));
    if (!a.agree) c.fail("dimension audit disagrees on fixture " + name);
  }
  c.notes.push_back("50 acyclic + 20 comets, " + std::to_string(hom_checks) +
                    " homomorphism pairs, grading audits clean, dimension audits agree");
}

// ---- criterion 6: subdirect faithfulness ----

void criterion6(Criterion& c) {
  for (const auto& name : kAcyclicFixtures) {
    Graph g = load_fixture(name);
    const auto basis = reduced_basis(g);
    const auto spectrum = graded_primitive_spectrum(g);
    if (spectrum.empty()) {
      c.fail(name + ": empty spectrum");
      continue;
    }
    std::vector<QuotientGraph> quotients;
    for (const auto& q : spectrum) quotients.push_back(q.quotient);
    std::vector<RealizationMap> maps;
    for (const auto& q : quotients) maps.push_back(build_realization(q.graph));
    test::CoordSpace space;
    std::vector<std::vector<LaurentMatrix>> images;
    for (const auto& mon : basis) {
      Element e = Element::monomial(g, Q, mon.alpha, mon.beta, Rational(1));
      std::vector<LaurentMatrix> blocks;
      for (std::size_t qi = 0; qi < quotients.size(); ++qi) {
        Element img = quotient_map(g, quotients[qi], e);
        blocks.push_back(realize(maps[qi], img));
        space.collect(static_cast<int>(qi), blocks.back());
      }
      images.push_back(std::move(blocks));
    }
    std::vector<std::vector<Rational>> rows;
    for (const auto& blocks : images) rows.push_back(space.row(blocks));
    const std::size_t rank = test::exact_rank(std::move(rows));
    if (rank != basis.size()) {
      c.fail(name + ": joint kernel has dimension " +
             std::to_string(basis.size() - rank));
    } else {
      c.notes.push_back(name + ": kernel {0} across " +
                        std::to_string(spectrum.size()) + " quotient(s), basis " +
                        std::to_string(basis.size()));
    }
  }
}

// ---- criterion 7: paper-example regressions + golden files ----

void criterion7(Criterion& c) {
  {
    Graph g = load_fixture("single_loop");
    if (!decide_graded_sigma_V(g, Q).verdict) c.fail("single loop: graded sigma-V should hold");
    if (decide_sigma_V(g, Q).verdict) c.fail("single loop: sigma-V should fail");
  }
  {
    Graph g = load_fixture("comet");
    auto d = semisimple_decomposition(g);
    if (d.summands.size() != 1 || !d.summands[0].laurent || d.summands[0].size != 2 ||
        d.summands[0].period != 1)
      c.fail("comet: decomposition should be M_2(K[x,x^-1])");
    if (decide_sigma_V(g, Q).verdict) c.fail("comet: sigma-V should fail");
  }
  {
    Graph g = load_fixture("rose2");
    if (decide_graded_sigma_V(g, Q).verdict) c.fail("rose-2: graded sigma-V should fail");
    if (decide_directly_finite(g, Q).verdict) c.fail("rose-2: direct finiteness should fail");
    if (decide_sigma_V(g, Q).verdict) c.fail("rose-2: sigma-V should fail");
    if (bounded_index(g, Q).bounded) c.fail("rose-2: index should be unbounded");
  }
  {
    Graph g = load_fixture("clock3");
    if (!decide_sigma_V(g, Q).verdict) c.fail("clock-3: sigma-V should hold");
    const auto spectrum = graded_primitive_spectrum(g);
    if (spectrum.size() != 3) c.fail("clock-3: expected three primitive quotients");
    for (const auto& q : spectrum)
      if (q.shape != QuotientShape::kMatrixOverK || q.size != 2)
        c.fail("clock-3: every primitive quotient should be M_2(K)");
  }

  for (const auto& name : {"single_loop", "comet", "rose2", "clock3"}) {
    Graph g = load_fixture(name);
    const std::string got = dump_json(build_report(g, Q));
    const std::string want = read_file(source_dir() + "/tests/golden/" +
                                       std::string(name) + ".json");
    if (got != want) c.fail(std::string(name) + ": report differs from the golden file");
  }
  c.notes.push_back("verdicts match the paper examples; golden JSON byte-stable");
}

}  // namespace

int main() {
  std::vector<Criterion> cs;
  auto timed = [&](int id, const std::string& name, auto fn, double limit_s) {
    Criterion c{id, name};
    const auto t0 = std::chrono::steady_clock::now();
    try {
      fn(c);
    } catch (const std::exception& e) {
      c.fail(std::string("exception: ") + e.what());
    }
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limit_s > 0 && c.seconds > limit_s)
      c.fail("time limit exceeded: " + std::to_string(c.seconds) + "s > " +
             std::to_string(limit_s) + "s");
    cs.push_back(std::move(c));
  };

  const CorpusRun noomega = make_corpus(500, 616161, 0.0);
  const CorpusRun omega = make_corpus(250, 717171, 0.2);

  timed(1, "rewriting soundness & confluence", [&](Criterion& c) { criterion1(c); }, 30);
  timed(2, "finite-graph theorem equivalences",
        [&](Criterion& c) { criterion2(c, noomega); }, 120);
  timed(3, "two-route sigma-V agreement",
        [&](Criterion& c) { criterion3(c, noomega, omega); }, 0);
  timed(4, "witness soundness", [&](Criterion& c) { criterion4(c, noomega, omega); }, 60);
  timed(5, "realization audits", [&](Criterion& c) { criterion5(c); }, 0);
  timed(6, "subdirect faithfulness", [&](Criterion& c) { criterion6(c); }, 0);
  timed(7, "paper-example regression", [&](Criterion& c) { criterion7(c); }, 0);

  int failures = 0;
  for (const auto& c : cs) {
    std::printf("[%s] criterion %d: %s (%.2fs)\n", c.pass ? "PASS" : "FAIL", c.id,
                c.name.c_str(), c.seconds);
    for (const auto& n : c.notes) std::printf("        %s\n", n.c_str());
    if (!c.pass) ++failures;
  }
  return failures;
}
