#include "lpa/structure.hpp"

#include <algorithm>
#include <cstdint>

namespace lpa {

namespace {

std::vector<bool> to_mask(const Graph& g, const std::vector<int>& xs) {
  std::vector<bool> m(g.vertex_count(), false);
  for (int v : xs) {
    if (v < 0 || v >= g.vertex_count()) throw Error("unknown vertex index");
    m[v] = true;
  }
  return m;
}

std::vector<int> from_mask(const std::vector<bool>& m) {
  std::vector<int> out;
  for (int v = 0; v < static_cast<int>(m.size()); ++v)
    if (m[v]) out.push_back(v);
  return out;
}

}  // namespace

bool is_hereditary(const Graph& g, const std::vector<bool>& H) {
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (!H[v]) continue;
    for (int ei : g.out_edges(v))
      if (!H[g.edge(ei).rng]) return false;
  }
  return true;
}

bool is_saturated(const Graph& g, const std::vector<bool>& H) {
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (H[v] || !g.is_regular(v)) continue;
    bool all_in = true;
    for (int ei : g.out_edges(v))
      if (!H[g.edge(ei).rng]) { all_in = false; break; }
    if (all_in) return false;
  }
  return true;
}

bool is_downward_directed(const Graph& g, const std::vector<bool>& T) {
  std::vector<int> members = from_mask(T);
  if (members.empty()) return false;
  for (int u : members) {
    for (int v : members) {
      bool ok = false;
      for (int w : members) {
        if (g.reaches(u, w) && g.reaches(v, w)) { ok = true; break; }
      }
      if (!ok) return false;
    }
  }
  return true;
}

std::vector<int> hs_closure(const Graph& g, const std::vector<int>& X) {
  std::vector<bool> H = to_mask(g, X);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < g.vertex_count(); ++v) {
      if (!H[v]) continue;
      for (int ei : g.out_edges(v)) {
        if (!H[g.edge(ei).rng]) { H[g.edge(ei).rng] = true; changed = true; }
      }
    }
    for (int v = 0; v < g.vertex_count(); ++v) {
      if (H[v] || !g.is_regular(v)) continue;
      bool all_in = true;
      for (int ei : g.out_edges(v))
        if (!H[g.edge(ei).rng]) { all_in = false; break; }
      if (all_in) { H[v] = true; changed = true; }
    }
  }
  return from_mask(H);
}

std::vector<int> breaking_vertices(const Graph& g, const std::vector<int>& H) {
  std::vector<bool> mask = to_mask(g, H);
  if (!is_hereditary(g, mask) || !is_saturated(g, mask))
    throw PreconditionError("breaking_vertices: H is not hereditary saturated");
  std::vector<int> out;
  for (int w = 0; w < g.vertex_count(); ++w) {
    if (mask[w] || !g.is_infinite_emitter(w)) continue;
    std::int64_t into_complement = 0;
    bool infinite = false;
    for (int ei : g.out_edges(w)) {
      const Edge& e = g.edge(ei);
      if (mask[e.rng]) continue;
      if (e.mult.omega) { infinite = true; break; }
      into_complement += e.mult.count;
    }
    if (!infinite && into_complement >= 1) out.push_back(w);
  }
  return out;
}

AdmissiblePair make_admissible_pair(const Graph& g, std::vector<int> H, std::vector<int> S) {
  std::vector<bool> mask = to_mask(g, H);
  if (!is_hereditary(g, mask)) throw PreconditionError("H is not hereditary");
  if (!is_saturated(g, mask)) throw PreconditionError("H is not saturated");
  std::vector<int> bh = breaking_vertices(g, from_mask(mask));
  for (int v : S) {
    if (std::find(bh.begin(), bh.end(), v) == bh.end())
      throw PreconditionError("S contains '" + g.vertex_name(v) +
                              "' which is not a breaking vertex of H");
  }
  std::sort(H.begin(), H.end());
  std::sort(S.begin(), S.end());
  return {std::move(H), std::move(S)};
}

QuotientGraph quotient_graph(const Graph& g, const AdmissiblePair& p) {
  std::vector<bool> H = to_mask(g, p.H);
  std::vector<bool> S = to_mask(g, p.S);
  std::vector<int> bh = breaking_vertices(g, p.H);
  std::vector<bool> primed_vertex(g.vertex_count(), false);
  for (int v : bh)
    if (!S[v]) primed_vertex[v] = true;

  std::vector<std::string> names;
  std::vector<int> vertex_orig;
  std::vector<bool> vertex_primed;
  std::vector<int> plain_index(g.vertex_count(), -1), primed_index(g.vertex_count(), -1);
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (H[v]) continue;
    plain_index[v] = static_cast<int>(names.size());
    names.push_back(g.vertex_name(v));
    vertex_orig.push_back(v);
    vertex_primed.push_back(false);
  }
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (!primed_vertex[v]) continue;
    primed_index[v] = static_cast<int>(names.size());
    names.push_back(g.vertex_name(v) + "'");
    vertex_orig.push_back(v);
    vertex_primed.push_back(true);
  }

  std::vector<Edge> edges;
  std::vector<int> edge_orig;
  std::vector<bool> edge_primed;
  for (int ei = 0; ei < g.edge_count(); ++ei) {
    const Edge& e = g.edge(ei);
    if (H[e.rng]) continue;
    edges.push_back({e.id, plain_index[e.src], plain_index[e.rng], e.mult});
    edge_orig.push_back(ei);
    edge_primed.push_back(false);
  }
  for (int ei = 0; ei < g.edge_count(); ++ei) {
    const Edge& e = g.edge(ei);
    if (!primed_vertex[e.rng]) continue;
    edges.push_back({e.id + "'", plain_index[e.src], primed_index[e.rng], e.mult});
    edge_orig.push_back(ei);
    edge_primed.push_back(true);
  }

  QuotientGraph q{Graph(std::move(names), std::move(edges)), std::move(vertex_orig),
                  std::move(vertex_primed), std::move(edge_orig), std::move(edge_primed)};
  return q;
}

Element quotient_map(const Graph& g, const QuotientGraph& q, const Element& a) {
  if (&a.graph() != &g) throw Error("graph mismatch");
  const Graph& qg = q.graph;
  // generator images, indexed by original vertex / edge
  std::vector<int> plain_vertex(g.vertex_count(), -1), primed_vertex(g.vertex_count(), -1);
  for (int v = 0; v < qg.vertex_count(); ++v) {
    (q.vertex_primed[v] ? primed_vertex : plain_vertex)[q.vertex_orig[v]] = v;
  }
  std::vector<int> plain_edge(g.edge_count(), -1), primed_edge(g.edge_count(), -1);
  for (int e = 0; e < qg.edge_count(); ++e) {
    (q.edge_primed[e] ? primed_edge : plain_edge)[q.edge_orig[e]] = e;
  }

  const Field& f = a.field();
  auto vertex_image = [&](int v) {
    Element img = Element::zero(qg, f);
    if (plain_vertex[v] >= 0) img = add(img, Element::vertex(qg, f, plain_vertex[v]));
    if (primed_vertex[v] >= 0) img = add(img, Element::vertex(qg, f, primed_vertex[v]));
    return img;
  };
  auto edge_image = [&](const EdgeInstance& i, bool ghost) {
    Element img = Element::zero(qg, f);
    if (plain_edge[i.edge] >= 0) {
      EdgeInstance qi{plain_edge[i.edge], i.par};
      img = add(img, ghost ? Element::ghost(qg, f, qi) : Element::edge(qg, f, qi));
    }
    if (primed_edge[i.edge] >= 0) {
      EdgeInstance qi{primed_edge[i.edge], i.par};
      img = add(img, ghost ? Element::ghost(qg, f, qi) : Element::edge(qg, f, qi));
    }
    return img;
  };

  ElementBuilder out(qg, f);
  for (const auto& m : a.monomials()) {
    Element img = vertex_image(m.alpha.source());
    for (const auto& e : m.alpha.edges()) img = multiply(img, edge_image(e, false));
    for (auto it = m.beta.edges().rbegin(); it != m.beta.edges().rend(); ++it)
      img = multiply(img, edge_image(*it, true));
    out.add(img, m.coeff);
  }
  return out.build();
}

std::vector<MaximalTail> maximal_tails(const Graph& g) {
  const int n = g.vertex_count();
  if (n > 20) throw PreconditionError("maximal_tails: exhaustive enumeration capped at 20 vertices");
  // downward-reach bitmasks
  std::vector<std::uint32_t> down(n, 0);
  for (int u = 0; u < n; ++u)
    for (int w = 0; w < n; ++w)
      if (g.reaches(u, w)) down[u] |= (1u << w);

  std::vector<MaximalTail> tails;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    bool ok = true;
    // MT(2): upward closed
    for (int u = 0; u < n && ok; ++u) {
      if (!(mask & (1u << u))) continue;
      for (int ei : g.in_edges(u))
        if (!(mask & (1u << g.edge(ei).src))) { ok = false; break; }
    }
    // MT(3): every emitting vertex keeps an edge inside
    for (int u = 0; u < n && ok; ++u) {
      if (!(mask & (1u << u)) || g.is_sink(u)) continue;
      bool inside = false;
      for (int ei : g.out_edges(u))
        if (mask & (1u << g.edge(ei).rng)) { inside = true; break; }
      if (!inside) ok = false;
    }
    // MT(1): downward directed
    for (int u = 0; u < n && ok; ++u) {
      if (!(mask & (1u << u))) continue;
      for (int v = u; v < n && ok; ++v) {
        if (!(mask & (1u << v))) continue;
        if ((down[u] & down[v] & mask) == 0) ok = false;
      }
    }
    if (ok) {
      MaximalTail t;
      for (int u = 0; u < n; ++u)
        if (mask & (1u << u)) t.T.push_back(u);
      tails.push_back(std::move(t));
    }
  }
  std::sort(tails.begin(), tails.end(), [&](const MaximalTail& a, const MaximalTail& b) {
    std::vector<std::string> an, bn;
    for (int v : a.T) an.push_back(g.vertex_name(v));
    for (int v : b.T) bn.push_back(g.vertex_name(v));
    std::sort(an.begin(), an.end());
    std::sort(bn.begin(), bn.end());
    return an < bn;
  });
  return tails;
}

std::vector<int> line_points(const Graph& g) {
  return classify_vertices(g).line_points;
}

ConditionReport condition_report(const Graph& g) {
  ConditionReport r;
  const auto cycles = enumerate_cycles(g);
  r.acyclic = cycles.empty();
  r.condition_L = std::all_of(cycles.begin(), cycles.end(),
                              [](const Cycle& c) { return c.has_exit(); });
  r.no_exit_cycles = std::all_of(cycles.begin(), cycles.end(),
                                 [](const Cycle& c) { return !c.has_exit(); });
  r.gk_dim_one = !r.acyclic && r.no_exit_cycles;
  r.row_finite = !g.has_omega_edges();
  {
    std::vector<bool> all(g.vertex_count(), true);
    r.downward_directed_E0 = is_downward_directed(g, all);
  }

  // Condition (K): no strongly connected component is a lone cycle. A vertex
  // on a closed path is the base of exactly one simple closed path iff every
  // vertex of its SCC emits exactly one edge instance back into the SCC.
  r.condition_K = true;
  {
    const int n = g.vertex_count();
    std::vector<int> comp(n, -1);
    int ncomp = 0;
    {
      // Kosaraju
      std::vector<int> order;
      std::vector<bool> seen(n, false);
      for (int v0 = 0; v0 < n; ++v0) {
        if (seen[v0]) continue;
        std::vector<std::pair<int, std::size_t>> st{{v0, 0}};
        seen[v0] = true;
        while (!st.empty()) {
          auto& [u, i] = st.back();
          if (i < g.out_edges(u).size()) {
            int w = g.edge(g.out_edges(u)[i]).rng;
            ++i;
            if (!seen[w]) { seen[w] = true; st.push_back({w, 0}); }
          } else {
            order.push_back(u);
            st.pop_back();
          }
        }
      }
      for (auto it = order.rbegin(); it != order.rend(); ++it) {
        if (comp[*it] >= 0) continue;
        std::vector<int> st{*it};
        comp[*it] = ncomp;
        while (!st.empty()) {
          int u = st.back();
          st.pop_back();
          for (int ei : g.in_edges(u)) {
            int w = g.edge(ei).src;
            if (comp[w] < 0) { comp[w] = ncomp; st.push_back(w); }
          }
        }
        ++ncomp;
      }
    }
    for (int c = 0; c < ncomp && r.condition_K; ++c) {
      bool contains_closed_path = false;
      bool all_one = true;
      for (int v = 0; v < n; ++v) {
        if (comp[v] != c) continue;
        std::int64_t internal = 0;
        for (int ei : g.out_edges(v)) {
          const Edge& e = g.edge(ei);
          if (comp[e.rng] == c) internal += e.mult.omega ? 2 : e.mult.count;
        }
        if (internal > 0) contains_closed_path = true;
        if (internal != 1) all_one = false;
      }
      if (contains_closed_path && all_one) r.condition_K = false;
    }
  }
  return r;
}

}  // namespace lpa
