#ifndef LPA_CORPUS_HPP
#define LPA_CORPUS_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lpa/element.hpp"
#include "lpa/graph.hpp"

namespace lpa {

struct CorpusOptions {
  int count = 500;
  std::uint64_t seed = 20240901;
  int max_vertices = 7;
  int max_edges = 14;
  double omega_prob = 0.0;
};

Graph random_graph(std::mt19937_64& rng, const CorpusOptions& opts);

/// Random finite acyclic graph with a unique sink all vertices flow to.
Graph random_acyclic_single_sink(std::mt19937_64& rng, int max_vertices,
                                 int max_extra_edges);

/// Random comet: an acyclic inflow feeding one no-exit cycle.
Graph random_comet(std::mt19937_64& rng, int max_vertices, int max_extra_edges,
                   int max_cycle_len);

Path random_path(std::mt19937_64& rng, const Graph& g, int start, int max_len);

Element random_element(std::mt19937_64& rng, const Graph& g, const Field& f,
                       int max_terms, int max_len);

RawExpr random_raw_expr(std::mt19937_64& rng, const Graph& g, int max_terms,
                        int max_word_len);

struct CorpusCheckResult {
  int graphs = 0;
  int graphs_with_exit_cycle = 0;
  int fourway_disagreements = 0;
  int route_disagreements = 0;
  int witness_failures = 0;
  std::vector<std::string> details;

  bool ok() const {
    return fourway_disagreements == 0 && route_disagreements == 0 &&
           witness_failures == 0;
  }
};

/// Runs the finite-graph theorem agreement suite over a random corpus:
/// four-way equivalence (no-omega graphs), two-route agreement, and witness
/// soundness for every graph with a cycle-with-exit.
CorpusCheckResult run_corpus_checks(const CorpusOptions& opts);

}  // namespace lpa

#endif
