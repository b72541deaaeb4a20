#include "lpa/corpus.hpp"

#include <algorithm>
#include <set>

#include "lpa/decision.hpp"

namespace lpa {

Graph random_graph(std::mt19937_64& rng, const CorpusOptions& opts) {
  const int nv = 1 + static_cast<int>(rng() % opts.max_vertices);
  std::vector<std::string> vertices;
  for (int i = 0; i < nv; ++i) vertices.push_back("v" + std::to_string(i));
  const int ne = static_cast<int>(rng() % (opts.max_edges + 1));
  std::vector<Edge> edges;
  std::set<std::pair<int, int>> omega_pairs;
  for (int i = 0; i < ne; ++i) {
    int src = static_cast<int>(rng() % nv);
    int dst = static_cast<int>(rng() % nv);
    Multiplicity mult = Multiplicity::one();
    const double draw = static_cast<double>(rng() % 1000) / 1000.0;
    if (draw < opts.omega_prob) {
      if (!omega_pairs.insert({src, dst}).second) continue;
      mult = Multiplicity::infinite();
    } else {
      const int m = static_cast<int>(rng() % 20);
      if (m >= 18) mult = Multiplicity::of(3);
      else if (m >= 15) mult = Multiplicity::of(2);
    }
    edges.push_back({"e" + std::to_string(i), src, dst, mult});
  }
  return Graph(std::move(vertices), std::move(edges));
}

Graph random_acyclic_single_sink(std::mt19937_64& rng, int max_vertices,
                                 int max_extra_edges) {
  const int nv = 2 + static_cast<int>(rng() % std::max(1, max_vertices - 1));
  std::vector<std::string> vertices;
  for (int i = 0; i < nv; ++i) vertices.push_back("v" + std::to_string(i));
  std::vector<Edge> edges;
  int eid = 0;
  // edges only go from lower to higher index; vertex nv-1 is the sink
  for (int i = 0; i < nv - 1; ++i) {
    int dst = i + 1 + static_cast<int>(rng() % (nv - 1 - i));
    edges.push_back({"e" + std::to_string(eid++), i, dst, Multiplicity::one()});
  }
  const int extra = static_cast<int>(rng() % (max_extra_edges + 1));
  for (int k = 0; k < extra; ++k) {
    int i = static_cast<int>(rng() % (nv - 1));
    int dst = i + 1 + static_cast<int>(rng() % (nv - 1 - i));
    edges.push_back({"e" + std::to_string(eid++), i, dst, Multiplicity::one()});
  }
  // every vertex already reaches nv-1? force it: any secondary sink gets an edge onward
  Graph draft(vertices, edges);
  for (int v = 0; v < nv - 1; ++v) {
    if (!draft.reaches(v, nv - 1)) {
      edges.push_back({"e" + std::to_string(eid++), v, nv - 1, Multiplicity::one()});
      draft = Graph(vertices, edges);
    }
  }
  return draft;
}

Graph random_comet(std::mt19937_64& rng, int max_vertices, int max_extra_edges,
                   int max_cycle_len) {
  Graph base = random_acyclic_single_sink(rng, max_vertices, max_extra_edges);
  std::vector<std::string> vertices = base.vertex_names();
  std::vector<Edge> edges = base.edges();
  int sink = -1;
  for (int v = 0; v < base.vertex_count(); ++v)
    if (base.is_sink(v)) sink = v;
  const int len = 1 + static_cast<int>(rng() % max_cycle_len);
  int prev = sink;
  for (int i = 1; i < len; ++i) {
    int z = static_cast<int>(vertices.size());
    vertices.push_back("z" + std::to_string(i));
    edges.push_back({"c" + std::to_string(i), prev, z, Multiplicity::one()});
    prev = z;
  }
  edges.push_back({"c0", prev, sink, Multiplicity::one()});
  return Graph(std::move(vertices), std::move(edges));
}

Path random_path(std::mt19937_64& rng, const Graph& g, int start, int max_len) {
  std::vector<EdgeInstance> es;
  int cur = start;
  const int len = static_cast<int>(rng() % (max_len + 1));
  for (int i = 0; i < len; ++i) {
    const auto& outs = g.out_edges(cur);
    if (outs.empty()) break;
    int ei = outs[rng() % outs.size()];
    const Edge& e = g.edge(ei);
    std::int64_t par = e.mult.omega ? static_cast<std::int64_t>(rng() % 3)
                                    : static_cast<std::int64_t>(rng() % e.mult.count);
    es.push_back({ei, par});
    cur = e.rng;
  }
  return es.empty() ? Path::at_vertex(g, start) : Path::of(g, std::move(es));
}

Element random_element(std::mt19937_64& rng, const Graph& g, const Field& f,
                       int max_terms, int max_len) {
  ElementBuilder b(g, f);
  const int terms = 1 + static_cast<int>(rng() % max_terms);
  for (int t = 0; t < terms; ++t) {
    Path alpha = random_path(rng, g, static_cast<int>(rng() % g.vertex_count()), max_len);
    // beta shares the range of alpha: build it backwards
    std::vector<EdgeInstance> rev;
    int cur = alpha.range();
    const int len = static_cast<int>(rng() % (max_len + 1));
    for (int i = 0; i < len; ++i) {
      const auto& ins = g.in_edges(cur);
      if (ins.empty()) break;
      int ei = ins[rng() % ins.size()];
      const Edge& e = g.edge(ei);
      std::int64_t par = e.mult.omega ? static_cast<std::int64_t>(rng() % 3)
                                      : static_cast<std::int64_t>(rng() % e.mult.count);
      rev.push_back({ei, par});
      cur = e.src;
    }
    std::reverse(rev.begin(), rev.end());
    Path beta = rev.empty() ? Path::at_vertex(g, alpha.range()) : Path::of(g, std::move(rev));
    long num = static_cast<long>(rng() % 13) - 6;
    if (num == 0) num = 1;
    long den = 1 + static_cast<long>(rng() % 3);
    if (!f.is_rationals() && den % static_cast<long>(f.characteristic()) == 0) den = 1;
    b.add_monomial(alpha, beta, Rational(num, den));
  }
  return b.build();
}

RawExpr random_raw_expr(std::mt19937_64& rng, const Graph& g, int max_terms,
                        int max_word_len) {
  RawExpr out;
  const int terms = 1 + static_cast<int>(rng() % max_terms);
  for (int t = 0; t < terms; ++t) {
    std::vector<Gen> word;
    const int len = 1 + static_cast<int>(rng() % max_word_len);
    for (int i = 0; i < len; ++i) {
      const int kind = static_cast<int>(rng() % 4);
      if (kind == 0 || g.edge_count() == 0) {
        word.push_back(Gen::v(static_cast<int>(rng() % g.vertex_count())));
      } else {
        int ei = static_cast<int>(rng() % g.edge_count());
        const Edge& e = g.edge(ei);
        std::int64_t par = e.mult.omega ? static_cast<std::int64_t>(rng() % 3)
                                        : static_cast<std::int64_t>(rng() % e.mult.count);
        EdgeInstance inst{ei, par};
        word.push_back(kind == 1 ? Gen::ghost(inst) : Gen::e(inst));
      }
    }
    long num = static_cast<long>(rng() % 13) - 6;
    if (num == 0) num = 2;
    long den = 1 + static_cast<long>(rng() % 3);
    out.terms.push_back({Rational(num, den), std::move(word)});
  }
  return out;
}

CorpusCheckResult run_corpus_checks(const CorpusOptions& opts) {
  CorpusCheckResult r;
  std::mt19937_64 rng(opts.seed);
  const Field f = Field::rationals();
  for (int i = 0; i < opts.count; ++i) {
    Graph g = random_graph(rng, opts);
    ++r.graphs;
    bool has_exit_cycle = false;
    for (const auto& c : enumerate_cycles(g))
      if (c.has_exit()) { has_exit_cycle = true; break; }
    if (has_exit_cycle) ++r.graphs_with_exit_cycle;

    VerdictWithWitness gsv;
    try {
      gsv = decide_graded_sigma_V(g, f);
    } catch (const InternalError& e) {
      ++r.route_disagreements;
      r.details.push_back("graph " + std::to_string(i) + ": " + e.what());
      continue;
    }
    const auto df = decide_directly_finite(g, f);

    if (!g.has_omega_edges()) {
      const auto bi = bounded_index(g, f);
      bool decomposes = true;
      try {
        semisimple_decomposition(g);
      } catch (const PreconditionError&) {
        decomposes = false;
      }
      const bool a = gsv.verdict, b = df.verdict, c = bi.bounded, d = decomposes;
      if (a != b || b != c || c != d) {
        ++r.fourway_disagreements;
        r.details.push_back("graph " + std::to_string(i) + ": fourway " +
                            std::to_string(a) + std::to_string(b) + std::to_string(c) +
                            std::to_string(d) + " on\n" + g.to_text());
      }
      if (!bi.bounded) {
        if (!bi.witness || !verify_matrix_units(g, f, *bi.witness)) {
          ++r.witness_failures;
          r.details.push_back("graph " + std::to_string(i) + ": matrix units failed");
        }
      }
    } else if (has_exit_cycle) {
      // matrix units are still available from any cycle-with-exit
      for (const auto& c : enumerate_cycles(g)) {
        if (!c.has_exit()) continue;
        const auto w = make_matrix_units(g, f, c, 4);
        if (!verify_matrix_units(g, f, w)) {
          ++r.witness_failures;
          r.details.push_back("graph " + std::to_string(i) + ": omega matrix units failed");
        }
        break;
      }
    }

    if (has_exit_cycle) {
      if (const auto* pw = std::get_if<ElementPairWitness>(&df.witness)) {
        if (!verify_element_pair(*pw)) {
          ++r.witness_failures;
          r.details.push_back("graph " + std::to_string(i) + ": element pair failed");
        }
      } else {
        ++r.witness_failures;
        r.details.push_back("graph " + std::to_string(i) + ": missing element pair witness");
      }
    }
  }
  return r;
}

}  // namespace lpa
