#include "lpa/graph.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace lpa {

namespace {

bool valid_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
    return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
      return false;
  }
  return true;
}

std::vector<std::string> split_ids(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(cur), cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

Graph::Graph(std::vector<std::string> vertices, std::vector<Edge> edges)
    : vertex_names_(std::move(vertices)), edges_(std::move(edges)) {
  const int n = static_cast<int>(vertex_names_.size());
  {
    std::set<std::string> seen;
    for (const auto& v : vertex_names_) {
      if (!seen.insert(v).second) throw ParseError("duplicate vertex '" + v + "'");
    }
  }
  {
    std::set<std::string> seen;
    std::set<std::pair<int, int>> omega_pairs;
    for (const auto& e : edges_) {
      if (!seen.insert(e.id).second) throw ParseError("duplicate edge '" + e.id + "'");
      if (find_vertex(e.id))
        throw ParseError("edge id '" + e.id + "' collides with a vertex id");
      if (e.src < 0 || e.src >= n) throw ParseError("edge '" + e.id + "' has unknown source");
      if (e.rng < 0 || e.rng >= n) throw ParseError("edge '" + e.id + "' has unknown range");
      if (!e.mult.omega && e.mult.count < 1)
        throw ParseError("edge '" + e.id + "' has non-positive multiplicity");
      if (e.mult.omega && !omega_pairs.insert({e.src, e.rng}).second)
        throw ParseError("duplicate omega edge for pair (" + vertex_names_[e.src] +
                         ", " + vertex_names_[e.rng] + ")");
      if (e.mult.omega) has_omega_ = true;
    }
  }

  out_.assign(n, {});
  in_.assign(n, {});
  for (int i = 0; i < static_cast<int>(edges_.size()); ++i) {
    out_[edges_[i].src].push_back(i);
    in_[edges_[i].rng].push_back(i);
  }

  // reflexive-transitive reachability
  reach_.assign(n, std::vector<bool>(n, false));
  for (int v = 0; v < n; ++v) {
    std::vector<int> stack{v};
    reach_[v][v] = true;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int ei : out_[u]) {
        int w = edges_[ei].rng;
        if (!reach_[v][w]) {
          reach_[v][w] = true;
          stack.push_back(w);
        }
      }
    }
  }

  // ranks of ids in lexicographic order
  vertex_rank_.resize(n);
  {
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
      return vertex_names_[a] < vertex_names_[b];
    });
    for (int r = 0; r < n; ++r) vertex_rank_[idx[r]] = r;
  }
  edge_rank_.resize(edges_.size());
  {
    std::vector<int> idx(edges_.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
      return edges_[a].id < edges_[b].id;
    });
    for (int r = 0; r < static_cast<int>(edges_.size()); ++r) edge_rank_[idx[r]] = r;
  }

  // special edge of each regular vertex: minimal edge id, index 0
  special_.assign(n, std::nullopt);
  for (int v = 0; v < n; ++v) {
    if (!is_regular(v)) continue;
    int best = -1;
    for (int ei : out_[v]) {
      if (best < 0 || edge_rank_[ei] < edge_rank_[best]) best = ei;
    }
    special_[v] = EdgeInstance{best, 0};
  }
}

bool Graph::is_infinite_emitter(int v) const {
  for (int ei : out_[v])
    if (edges_[ei].mult.omega) return true;
  return false;
}

bool Graph::is_regular(int v) const {
  return !out_[v].empty() && !is_infinite_emitter(v);
}

std::int64_t Graph::out_instance_count(int v) const {
  std::int64_t total = 0;
  for (int ei : out_[v]) {
    if (edges_[ei].mult.omega) throw InternalError("instance count at infinite emitter");
    total += edges_[ei].mult.count;
  }
  return total;
}

std::optional<int> Graph::find_vertex(const std::string& id) const {
  for (int v = 0; v < vertex_count(); ++v)
    if (vertex_names_[v] == id) return v;
  return std::nullopt;
}

int Graph::require_vertex(const std::string& id) const {
  auto v = find_vertex(id);
  if (!v) throw Error("unknown vertex '" + id + "'");
  return *v;
}

std::optional<int> Graph::find_edge(const std::string& id) const {
  for (int e = 0; e < edge_count(); ++e)
    if (edges_[e].id == id) return e;
  return std::nullopt;
}

void Graph::check_instance(const EdgeInstance& i) const {
  if (i.edge < 0 || i.edge >= edge_count())
    throw Error("unknown edge index " + std::to_string(i.edge));
  if (i.par < 0) throw Error("negative parallel index");
  const Edge& e = edges_[i.edge];
  if (!e.mult.omega && i.par >= e.mult.count)
    throw Error("parallel index " + std::to_string(i.par) + " out of range for edge '" +
                e.id + "' (multiplicity " + std::to_string(e.mult.count) + ")");
}

std::string Graph::instance_name(const EdgeInstance& i) const {
  const Edge& e = edges_[i.edge];
  if (i.par == 0 && !e.mult.omega && e.mult.count == 1) return e.id;
  return e.id + "#" + std::to_string(i.par);
}

EdgeInstance Graph::parse_instance(const std::string& token) const {
  std::string id = token;
  std::int64_t par = 0;
  if (auto pos = token.find('#'); pos != std::string::npos) {
    id = token.substr(0, pos);
    const std::string digits = token.substr(pos + 1);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("malformed parallel index in '" + token + "'");
    par = std::stoll(digits);
  }
  auto e = find_edge(id);
  if (!e) throw ParseError("unknown edge '" + id + "'");
  EdgeInstance inst{*e, par};
  try {
    check_instance(inst);
  } catch (const Error& err) {
    throw ParseError(err.what());
  }
  return inst;
}

Graph Graph::parse(const std::string& text) {
  std::vector<std::string> vertices;
  std::vector<Edge> edge_specs;
  struct PendingEdge {
    std::string id, src, rng;
    Multiplicity mult;
    int line;
  };
  std::vector<PendingEdge> pending;

  int line_no = 0;
  std::istringstream in(text);
  std::string line;
  auto fail = [&](int ln, const std::string& msg) -> void {
    throw ParseError("line " + std::to_string(ln) + ": " + msg);
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (auto pos = line.find('#'); pos != std::string::npos) line = line.substr(0, pos);
    std::size_t start = 0;
    while (start <= line.size()) {
      std::size_t sep = line.find(';', start);
      std::string stmt = trim(sep == std::string::npos ? line.substr(start)
                                                       : line.substr(start, sep - start));
      start = sep == std::string::npos ? line.size() + 1 : sep + 1;
      if (stmt.empty()) continue;

      if (stmt.find("->") != std::string::npos) {
        // [edge] <id>: <src> -> <rng> [* <mult>|* omega]
        std::string body = stmt;
        if (body.rfind("edge", 0) == 0 &&
            (body.size() == 4 || std::isspace(static_cast<unsigned char>(body[4]))))
          body = trim(body.substr(4));
        auto colon = body.find(':');
        if (colon == std::string::npos) fail(line_no, "missing ':' in edge statement '" + stmt + "'");
        std::string id = trim(body.substr(0, colon));
        if (!valid_identifier(id)) fail(line_no, "malformed edge id '" + id + "'");
        std::string rest = trim(body.substr(colon + 1));
        Multiplicity mult = Multiplicity::one();
        if (auto srta = rest.find('*'); srta != std::string::npos) {
          std::string multtok = trim(rest.substr(srta + 1));
          rest = trim(rest.substr(0, srta));
          if (multtok == "omega") {
            mult = Multiplicity::infinite();
          } else if (!multtok.empty() &&
                     multtok.find_first_not_of("0123456789") == std::string::npos) {
            mult = Multiplicity::of(std::stoll(multtok));
            if (mult.count < 1) fail(line_no, "malformed multiplicity '" + multtok + "'");
          } else {
            fail(line_no, "malformed multiplicity '" + multtok + "'");
          }
        }
        auto arrow = rest.find("->");
        std::string src = trim(rest.substr(0, arrow));
        std::string rng = trim(rest.substr(arrow + 2));
        if (!valid_identifier(src)) fail(line_no, "malformed vertex '" + src + "'");
        if (!valid_identifier(rng)) fail(line_no, "malformed vertex '" + rng + "'");
        pending.push_back({id, src, rng, mult, line_no});
      } else {
        std::string body = stmt;
        if (body.rfind("vertices", 0) == 0) {
          auto colon = body.find(':');
          if (colon == std::string::npos) fail(line_no, "missing ':' after 'vertices'");
          body = body.substr(colon + 1);
        }
        for (const auto& id : split_ids(body)) {
          if (!valid_identifier(id)) fail(line_no, "malformed vertex id '" + id + "'");
          if (std::find(vertices.begin(), vertices.end(), id) != vertices.end())
            fail(line_no, "duplicate vertex '" + id + "'");
          vertices.push_back(id);
        }
      }
    }
  }

  auto vindex = [&](const std::string& id, int ln) -> int {
    auto it = std::find(vertices.begin(), vertices.end(), id);
    if (it == vertices.end())
      throw ParseError("line " + std::to_string(ln) + ": unknown vertex '" + id + "'");
    return static_cast<int>(it - vertices.begin());
  };
  for (const auto& p : pending) {
    edge_specs.push_back({p.id, vindex(p.src, p.line), vindex(p.rng, p.line), p.mult});
  }
  try {
    return Graph(std::move(vertices), std::move(edge_specs));
  } catch (const ParseError&) {
    throw;
  }
}

std::string Graph::to_text() const {
  std::ostringstream out;
  out << "vertices:";
  for (int v = 0; v < vertex_count(); ++v) out << (v ? ", " : " ") << vertex_names_[v];
  out << "\n";
  for (const auto& e : edges_) {
    out << "edge " << e.id << ": " << vertex_names_[e.src] << " -> " << vertex_names_[e.rng];
    if (e.mult.omega)
      out << " * omega";
    else if (e.mult.count != 1)
      out << " * " << e.mult.count;
    out << "\n";
  }
  return out.str();
}

// ---- paths ----

Path Path::at_vertex(const Graph& g, int v) {
  if (v < 0 || v >= g.vertex_count()) throw Error("unknown vertex index");
  Path p;
  p.source_ = p.range_ = v;
  return p;
}

Path Path::of(const Graph& g, std::vector<EdgeInstance> edges) {
  if (edges.empty()) throw Error("Path::of needs at least one edge");
  Path p;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    g.check_instance(edges[i]);
    if (i > 0 && g.edge(edges[i - 1].edge).rng != g.edge(edges[i].edge).src)
      throw Error("edges do not compose at position " + std::to_string(i));
  }
  p.source_ = g.edge(edges.front().edge).src;
  p.range_ = g.edge(edges.back().edge).rng;
  p.edges_ = std::move(edges);
  return p;
}

Path Path::concat(const Graph& g, const Path& tail) const {
  if (range_ != tail.source_) throw Error("paths do not compose");
  if (tail.empty()) return *this;
  if (empty()) return tail;
  std::vector<EdgeInstance> es = edges_;
  es.insert(es.end(), tail.edges_.begin(), tail.edges_.end());
  return Path::of(g, std::move(es));
}

Path Path::prefix(const Graph& g, std::size_t n) const {
  if (n == 0) return Path::at_vertex(g, source_);
  return Path::of(g, std::vector<EdgeInstance>(edges_.begin(), edges_.begin() + n));
}

Path Path::suffix(const Graph& g, std::size_t from) const {
  if (from >= edges_.size()) return Path::at_vertex(g, range_);
  return Path::of(g, std::vector<EdgeInstance>(edges_.begin() + from, edges_.end()));
}

bool path_less(const Graph& g, const Path& a, const Path& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  for (std::size_t i = 0; i < a.length(); ++i) {
    auto ka = g.instance_key(a.edges()[i]);
    auto kb = g.instance_key(b.edges()[i]);
    if (ka != kb) return ka < kb;
  }
  return g.vertex_id_rank(a.source()) < g.vertex_id_rank(b.source());
}

std::string path_name(const Graph& g, const Path& p) {
  if (p.empty()) return g.vertex_name(p.source());
  std::string out;
  for (std::size_t i = 0; i < p.length(); ++i) {
    if (i) out += " ";
    out += g.instance_name(p.edges()[i]);
  }
  return out;
}

// ---- cycles ----

namespace {

// Vertex-simple cycles as edge-record sequences, each found once with its
// minimal vertex as anchor.
void record_cycles_from(const Graph& g, int anchor, std::vector<int>& stack_edges,
                        std::vector<bool>& on_path, int current,
                        std::vector<std::vector<int>>& out) {
  for (int ei : g.out_edges(current)) {
    const Edge& e = g.edge(ei);
    if (e.rng == anchor) {
      stack_edges.push_back(ei);
      out.push_back(stack_edges);
      stack_edges.pop_back();
    } else if (e.rng > anchor && !on_path[e.rng]) {
      on_path[e.rng] = true;
      stack_edges.push_back(ei);
      record_cycles_from(g, anchor, stack_edges, on_path, e.rng, out);
      stack_edges.pop_back();
      on_path[e.rng] = false;
    }
  }
}

}  // namespace

std::vector<Cycle> enumerate_cycles(const Graph& g) {
  std::vector<std::vector<int>> record_cycles;
  for (int a = 0; a < g.vertex_count(); ++a) {
    std::vector<bool> on_path(g.vertex_count(), false);
    on_path[a] = true;
    std::vector<int> stack_edges;
    record_cycles_from(g, a, stack_edges, on_path, a, record_cycles);
  }

  std::vector<Cycle> cycles;
  for (const auto& recs : record_cycles) {
    // expand parallel families; omega families contribute instance #0 only
    std::vector<std::vector<std::int64_t>> choices(recs.size());
    for (std::size_t i = 0; i < recs.size(); ++i) {
      const Edge& e = g.edge(recs[i]);
      if (e.mult.omega) {
        choices[i] = {0};
      } else {
        for (std::int64_t k = 0; k < e.mult.count; ++k) choices[i].push_back(k);
      }
    }
    std::vector<std::int64_t> pick(recs.size(), 0);
    std::size_t total = 1;
    for (auto& c : choices) total *= c.size();
    for (std::size_t t = 0; t < total; ++t) {
      std::size_t rem = t;
      for (std::size_t i = 0; i < recs.size(); ++i) {
        pick[i] = choices[i][rem % choices[i].size()];
        rem /= choices[i].size();
      }
      std::vector<EdgeInstance> insts;
      for (std::size_t i = 0; i < recs.size(); ++i) insts.push_back({recs[i], pick[i]});
      // canonical rotation: minimal instance key first
      std::size_t best = 0;
      for (std::size_t i = 1; i < insts.size(); ++i)
        if (g.instance_key(insts[i]) < g.instance_key(insts[best])) best = i;
      std::rotate(insts.begin(), insts.begin() + best, insts.end());

      Cycle c;
      c.path = Path::of(g, insts);
      c.base = c.path.source();

      for (const auto& ci : insts) {
        int v = g.edge(ci.edge).src;
        for (int ei : g.out_edges(v)) {
          const Edge& e = g.edge(ei);
          if (e.mult.omega) {
            std::int64_t sibling = (ei == ci.edge && ci.par == 0) ? 1 : 0;
            EdgeInstance f{ei, sibling};
            if (!(f == ci)) c.exits.push_back(f);
          } else {
            for (std::int64_t k = 0; k < e.mult.count; ++k) {
              EdgeInstance f{ei, k};
              if (!(f == ci)) c.exits.push_back(f);
            }
          }
        }
      }
      std::sort(c.exits.begin(), c.exits.end(), [&](const EdgeInstance& x, const EdgeInstance& y) {
        return g.instance_key(x) < g.instance_key(y);
      });
      cycles.push_back(std::move(c));
    }
  }

  std::sort(cycles.begin(), cycles.end(), [&](const Cycle& x, const Cycle& y) {
    return path_less(g, x.path, y.path);
  });
  return cycles;
}

std::string cycle_name(const Graph& g, const Cycle& c) {
  return "(" + path_name(g, c.path) + ")";
}

// ---- classification ----

namespace {

std::vector<int> compute_line_points(const Graph& g) {
  const int n = g.vertex_count();
  // bifurcation at w: >= 2 emitted instances (omega counts as >= 2)
  std::vector<bool> bifurcates(n, false), on_cycle(n, false);
  for (int v = 0; v < n; ++v) {
    std::int64_t instances = 0;
    for (int ei : g.out_edges(v)) {
      instances += g.edge(ei).mult.omega ? 2 : g.edge(ei).mult.count;
      if (instances >= 2) break;
    }
    bifurcates[v] = instances >= 2;
    for (int ei : g.out_edges(v))
      if (g.reaches(g.edge(ei).rng, v)) on_cycle[v] = true;
  }
  std::vector<int> out;
  for (int u = 0; u < n; ++u) {
    bool ok = true;
    for (int w = 0; w < n && ok; ++w)
      if (g.reaches(u, w) && (bifurcates[w] || on_cycle[w])) ok = false;
    if (ok) out.push_back(u);
  }
  return out;
}

}  // namespace

VertexClassification classify_vertices(const Graph& g) {
  VertexClassification c;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (g.is_sink(v)) c.sinks.push_back(v);
    else if (g.is_infinite_emitter(v)) c.infinite_emitters.push_back(v);
    else c.regular.push_back(v);
    if (g.is_source(v)) c.sources.push_back(v);
  }
  c.line_points = compute_line_points(g);
  return c;
}

std::vector<int> tree(const Graph& g, int v) {
  if (v < 0 || v >= g.vertex_count()) throw Error("unknown vertex index");
  std::vector<int> out;
  for (int w = 0; w < g.vertex_count(); ++w)
    if (g.reaches(v, w)) out.push_back(w);
  return out;
}

// ---- source elimination ----

SourceElimination source_elimination(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<bool> removed(n, false);
  std::vector<std::vector<int>> trace;
  for (;;) {
    std::vector<int> round;
    for (int v = 0; v < n; ++v) {
      if (removed[v]) continue;
      bool receives = false;
      for (int ei : g.in_edges(v))
        if (!removed[g.edge(ei).src]) { receives = true; break; }
      if (!receives) round.push_back(v);
    }
    if (round.empty()) break;
    for (int v : round) removed[v] = true;
    trace.push_back(std::move(round));
  }

  std::vector<int> residual_vertices;
  std::vector<int> remap(n, -1);
  std::vector<std::string> names;
  for (int v = 0; v < n; ++v) {
    if (!removed[v]) {
      remap[v] = static_cast<int>(names.size());
      residual_vertices.push_back(v);
      names.push_back(g.vertex_name(v));
    }
  }
  std::vector<Edge> edges;
  for (const Edge& e : g.edges())
    if (!removed[e.src] && !removed[e.rng])
      edges.push_back({e.id, remap[e.src], remap[e.rng], e.mult});
  Graph residual(names, edges);

  // verdict: every residual component is an isolated vertex or a lone cycle
  bool ok = true;
  const int m = residual.vertex_count();
  std::vector<int> comp(m, -1);
  int ncomp = 0;
  for (int v = 0; v < m && ok; ++v) {
    if (comp[v] >= 0) continue;
    std::vector<int> stack{v};
    comp[v] = ncomp;
    std::vector<int> members;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      members.push_back(u);
      auto visit = [&](int w) {
        if (comp[w] < 0) { comp[w] = ncomp; stack.push_back(w); }
      };
      for (int ei : residual.out_edges(u)) visit(residual.edge(ei).rng);
      for (int ei : residual.in_edges(u)) visit(residual.edge(ei).src);
    }
    ++ncomp;
    bool isolated = members.size() == 1 && residual.out_edges(members[0]).empty() &&
                    residual.in_edges(members[0]).empty();
    if (isolated) continue;
    for (int u : members) {
      std::int64_t outs = 0, ins = 0;
      for (int ei : residual.out_edges(u))
        outs += residual.edge(ei).mult.omega ? 2 : residual.edge(ei).mult.count;
      for (int ei : residual.in_edges(u))
        ins += residual.edge(ei).mult.omega ? 2 : residual.edge(ei).mult.count;
      if (outs != 1 || ins != 1) { ok = false; break; }
    }
  }

  SourceElimination r{ok, std::move(trace), std::move(residual_vertices), std::move(residual)};
  return r;
}

// ---- path enumeration ----

namespace {

void backward_paths(const Graph& g, int target, int front,
                    std::vector<EdgeInstance>& accum_rev,
                    const std::vector<EdgeInstance>* rev_cycle,
                    std::size_t prefix_match, std::vector<bool>& on_walk,
                    std::vector<Path>& out) {
  {
    std::vector<EdgeInstance> fw(accum_rev.rbegin(), accum_rev.rend());
    out.push_back(fw.empty() ? Path::at_vertex(g, target) : Path::of(g, std::move(fw)));
    if (out.size() > 2'000'000)
      throw InternalError("path enumeration exploded; shape precondition violated?");
  }
  for (int ei : g.in_edges(front)) {
    const Edge& e = g.edge(ei);
    if (e.mult.omega)
      throw InternalError("path enumeration over an omega family");
    for (std::int64_t k = 0; k < e.mult.count; ++k) {
      EdgeInstance inst{ei, k};
      std::size_t pos = accum_rev.size();
      std::size_t next_match = prefix_match;
      if (rev_cycle) {
        if (pos == prefix_match && pos < rev_cycle->size() && (*rev_cycle)[pos] == inst) {
          if (pos + 1 == rev_cycle->size()) continue;  // would complete a full lap
          next_match = pos + 1;
        }
      } else {
        if (on_walk[e.src])
          throw InternalError("cycle reaches path target; shape precondition violated");
      }
      accum_rev.push_back(inst);
      bool marked = false;
      if (!rev_cycle && !on_walk[e.src]) { on_walk[e.src] = true; marked = true; }
      backward_paths(g, target, e.src, accum_rev, rev_cycle, next_match, on_walk, out);
      if (marked) on_walk[e.src] = false;
      accum_rev.pop_back();
    }
  }
}

}  // namespace

std::vector<Path> paths_ending_at(const Graph& g, int v, const Cycle* forbidden_cycle) {
  std::vector<Path> out;
  std::vector<EdgeInstance> accum;
  std::vector<bool> on_walk(g.vertex_count(), false);
  on_walk[v] = true;
  std::optional<std::vector<EdgeInstance>> rev;
  if (forbidden_cycle) {
    rev.emplace(forbidden_cycle->path.edges().rbegin(), forbidden_cycle->path.edges().rend());
  }
  backward_paths(g, v, v, accum, rev ? &*rev : nullptr, 0, on_walk, out);
  std::sort(out.begin(), out.end(), [&](const Path& a, const Path& b) {
    return path_less(g, a, b);
  });
  return out;
}

}  // namespace lpa
