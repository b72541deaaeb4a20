#ifndef LPA_STRUCTURE_HPP
#define LPA_STRUCTURE_HPP

#include <string>
#include <vector>

#include "lpa/element.hpp"
#include "lpa/graph.hpp"

namespace lpa {

/// Least hereditary saturated superset of X (vertex indices, sorted).
std::vector<int> hs_closure(const Graph& g, const std::vector<int>& X);

bool is_hereditary(const Graph& g, const std::vector<bool>& H);
bool is_saturated(const Graph& g, const std::vector<bool>& H);
bool is_downward_directed(const Graph& g, const std::vector<bool>& T);

/// Breaking vertices of a hereditary saturated H: infinite emitters outside H
/// with finitely many (>=1) edge instances into the complement.
std::vector<int> breaking_vertices(const Graph& g, const std::vector<int>& H);

struct AdmissiblePair {
  std::vector<int> H;  // hereditary saturated, sorted
  std::vector<int> S;  // subset of B_H, sorted
};

/// Validates H hereditary saturated and S subset of B_H.
AdmissiblePair make_admissible_pair(const Graph& g, std::vector<int> H,
                                    std::vector<int> S);

struct QuotientGraph {
  Graph graph;
  // provenance: quotient vertex/edge -> original index, primed flags
  std::vector<int> vertex_orig;
  std::vector<bool> vertex_primed;
  std::vector<int> edge_orig;
  std::vector<bool> edge_primed;
};

/// Constructs E \ (H,S) with primed vertices v' for v in B_H \ S.
QuotientGraph quotient_graph(const Graph& g, const AdmissiblePair& p);

/// The algebra map L_K(E) -> L_K(E\(H,S)): v -> v (+ v'), e -> e (+ e'),
/// generators over H -> 0; the image is renormalized in the quotient algebra.
Element quotient_map(const Graph& g, const QuotientGraph& q, const Element& a);

struct MaximalTail {
  std::vector<int> T;
  bool special = true;  // countably directed; always true at finite scale
};

/// All maximal tails by exhaustive subset filtering of MT(1)-(3)
/// (vertex count capped at 20).
std::vector<MaximalTail> maximal_tails(const Graph& g);

/// Vertices whose tree has neither bifurcations nor cycles (an omega family
/// counts as a bifurcation).
std::vector<int> line_points(const Graph& g);

struct ConditionReport {
  bool acyclic = false;
  bool condition_L = false;
  bool condition_K = false;
  bool no_exit_cycles = false;
  bool downward_directed_E0 = false;
  bool row_finite = false;
  bool gk_dim_one = false;
};

ConditionReport condition_report(const Graph& g);

}  // namespace lpa

#endif
