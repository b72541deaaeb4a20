#ifndef LPA_GRAPH_HPP
#define LPA_GRAPH_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lpa/rational.hpp"

namespace lpa {

/// Size of a parallel-edge family: a positive count or omega.
struct Multiplicity {
  bool omega = false;
  std::int64_t count = 1;  // ignored when omega

  static Multiplicity one() { return {false, 1}; }
  static Multiplicity of(std::int64_t n) { return {false, n}; }
  static Multiplicity infinite() { return {true, 0}; }

  bool operator==(const Multiplicity&) const = default;
};

struct Edge {
  std::string id;
  int src = -1;
  int rng = -1;
  Multiplicity mult;
};

/// One concrete edge of a parallel family, written e#k. Families of
/// multiplicity 1 have the single instance e#0 (printed as plain "e").
struct EdgeInstance {
  int edge = -1;
  std::int64_t par = 0;

  bool operator==(const EdgeInstance&) const = default;
};

/// A finite directed graph with parallel-edge multiplicities in N+ or omega.
/// Immutable after construction; analyses may share it freely.
class Graph {
public:
  Graph() = default;  // the empty graph
  Graph(std::vector<std::string> vertices, std::vector<Edge> edges);

  /// Parses the graph text format (see README). Errors name line and token.
  static Graph parse(const std::string& text);

  int vertex_count() const { return static_cast<int>(vertex_names_.size()); }
  const std::string& vertex_name(int v) const { return vertex_names_[v]; }
  const std::vector<std::string>& vertex_names() const { return vertex_names_; }
  std::optional<int> find_vertex(const std::string& id) const;
  int require_vertex(const std::string& id) const;

  int edge_count() const { return static_cast<int>(edges_.size()); }
  const Edge& edge(int e) const { return edges_[e]; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::optional<int> find_edge(const std::string& id) const;

  const std::vector<int>& out_edges(int v) const { return out_[v]; }
  const std::vector<int>& in_edges(int v) const { return in_[v]; }

  bool is_sink(int v) const { return out_[v].empty(); }
  bool is_source(int v) const { return in_[v].empty(); }
  bool is_infinite_emitter(int v) const;
  bool is_regular(int v) const;
  /// Total number of edge instances emitted by v; requires !is_infinite_emitter(v).
  std::int64_t out_instance_count(int v) const;

  bool has_omega_edges() const { return has_omega_; }

  /// u >= w : there is a (possibly trivial) path from u to w.
  bool reaches(int u, int w) const { return reach_[u][w]; }

  /// Designated special edge of a regular vertex (minimal edge id, index 0);
  /// nullopt for sinks and infinite emitters.
  std::optional<EdgeInstance> special_edge(int v) const { return special_[v]; }

  /// Rank of an edge id in lexicographic id order; canonical comparisons of
  /// instances use (id_rank, par).
  int edge_id_rank(int e) const { return edge_rank_[e]; }
  int vertex_id_rank(int v) const { return vertex_rank_[v]; }

  std::pair<int, std::int64_t> instance_key(const EdgeInstance& i) const {
    return {edge_rank_[i.edge], i.par};
  }
  bool instance_less(const EdgeInstance& a, const EdgeInstance& b) const {
    return instance_key(a) < instance_key(b);
  }

  /// Validates that e#par exists (finite index; any finite index for omega).
  void check_instance(const EdgeInstance& i) const;

  std::string instance_name(const EdgeInstance& i) const;
  EdgeInstance parse_instance(const std::string& token) const;

  /// Regenerates the graph text format (round-trips through parse()).
  std::string to_text() const;

private:
  std::vector<std::string> vertex_names_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> out_, in_;
  std::vector<std::vector<bool>> reach_;
  std::vector<std::optional<EdgeInstance>> special_;
  std::vector<int> edge_rank_, vertex_rank_;
  bool has_omega_ = false;
};

/// A finite path of edge instances; a length-0 path is a vertex.
class Path {
public:
  Path() = default;

  static Path at_vertex(const Graph& g, int v);
  static Path of(const Graph& g, std::vector<EdgeInstance> edges);

  int source() const { return source_; }
  int range() const { return range_; }
  std::size_t length() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }
  const std::vector<EdgeInstance>& edges() const { return edges_; }
  const EdgeInstance& last() const { return edges_.back(); }

  Path concat(const Graph& g, const Path& tail) const;
  Path prefix(const Graph& g, std::size_t n) const;
  Path suffix(const Graph& g, std::size_t from) const;

  bool operator==(const Path&) const = default;

private:
  int source_ = -1;
  int range_ = -1;
  std::vector<EdgeInstance> edges_;
};

/// Canonical path order: (length, instance keys lexicographically, source).
bool path_less(const Graph& g, const Path& a, const Path& b);
std::string path_name(const Graph& g, const Path& p);

/// A vertex-simple cycle in canonical rotation (minimal edge instance first).
struct Cycle {
  Path path;
  int base = -1;                    // source of the first edge
  std::vector<EdgeInstance> exits;  // see enumerate_cycles for omega policy

  bool has_exit() const { return !exits.empty(); }
};

/// All simple cycles up to rotation, deterministically ordered by
/// (length, canonical instance sequence). Parallel families of finite
/// multiplicity contribute one cycle per instance choice; omega families are
/// represented by instance #0 (the siblings are recorded as exits).
std::vector<Cycle> enumerate_cycles(const Graph& g);

std::string cycle_name(const Graph& g, const Cycle& c);

struct VertexClassification {
  std::vector<int> sinks;
  std::vector<int> sources;
  std::vector<int> regular;
  std::vector<int> infinite_emitters;
  std::vector<int> line_points;
};

VertexClassification classify_vertices(const Graph& g);

/// T_E(v) = { w : v >= w }, sorted by vertex index.
std::vector<int> tree(const Graph& g, int v);

struct SourceElimination {
  bool is_graded_directly_finite = false;
  std::vector<std::vector<int>> elimination_trace;  // removed vertices per round
  std::vector<int> residual_vertices;               // original indices
  Graph residual;
};

/// Repeatedly removes sources; the verdict is true iff every residual
/// component is an isolated vertex or a lone cycle.
SourceElimination source_elimination(const Graph& g);

/// All paths ending at v. When forbidden_cycle is given, refuses to traverse
/// the edge that would complete a full lap of it (so the listed paths never
/// contain all of its edges). Requires the enumeration to be finite, which
/// holds when no cycle of g reaches v except the forbidden one.
std::vector<Path> paths_ending_at(const Graph& g, int v,
                                  const Cycle* forbidden_cycle = nullptr);

}  // namespace lpa

#endif
