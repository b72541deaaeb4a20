#include "lpa/realization.hpp"

#include <algorithm>
#include <map>

namespace lpa {

std::int64_t RealizationMap::period() const {
  return kind == RealizationKind::kComet
             ? static_cast<std::int64_t>(cycle->path.length())
             : 0;
}

RealizationMap build_realization(const Graph& g) {
  if (g.vertex_count() == 0) throw PreconditionError("empty graph");
  if (g.has_omega_edges())
    throw PreconditionError("graph has omega edges");
  const auto cycles = enumerate_cycles(g);
  for (const auto& c : cycles) {
    if (c.has_exit())
      throw PreconditionError("cycle " + cycle_name(g, c) + " has exit " +
                              g.instance_name(c.exits.front()));
  }

  RealizationMap m;
  m.graph = &g;
  if (cycles.empty()) {
    std::vector<int> sinks;
    for (int v = 0; v < g.vertex_count(); ++v)
      if (g.is_sink(v)) sinks.push_back(v);
    if (sinks.size() > 1)
      throw PreconditionError("second sink '" + g.vertex_name(sinks[1]) + "'");
    if (sinks.empty()) throw InternalError("finite acyclic graph without a sink");
    for (int v = 0; v < g.vertex_count(); ++v)
      if (!g.reaches(v, sinks[0]))
        throw PreconditionError("vertex '" + g.vertex_name(v) +
                                "' does not reach the sink");
    m.kind = RealizationKind::kAcyclicSingleSink;
    m.target = sinks[0];
    m.paths = paths_ending_at(g, m.target);
  } else {
    if (cycles.size() > 1)
      throw PreconditionError("multiple cycles: " + cycle_name(g, cycles[0]) +
                              " and " + cycle_name(g, cycles[1]));
    const Cycle& c = cycles.front();
    for (int v = 0; v < g.vertex_count(); ++v)
      if (!g.reaches(v, c.base))
        throw PreconditionError("vertex '" + g.vertex_name(v) +
                                "' does not reach the cycle");
    m.kind = RealizationKind::kComet;
    m.cycle = c;
    m.target = c.base;
    m.paths = paths_ending_at(g, m.target, &c);
  }
  for (const auto& p : m.paths) m.shifts.push_back(static_cast<std::int64_t>(p.length()));
  return m;
}

namespace {

std::vector<std::int64_t> path_key(const Graph& g, const Path& p) {
  std::vector<std::int64_t> k;
  k.push_back(static_cast<std::int64_t>(p.length()));
  for (const auto& e : p.edges()) {
    auto key = g.instance_key(e);
    k.push_back(key.first);
    k.push_back(key.second);
  }
  k.push_back(g.vertex_id_rank(p.source()));
  return k;
}

// strips c^k from the end of a path ending at the cycle base; returns k
std::int64_t strip_cycle_power(const Graph& g, Path& p, const Cycle& c) {
  const auto& ce = c.path.edges();
  std::int64_t k = 0;
  for (;;) {
    if (p.length() < ce.size()) return k;
    bool match = true;
    for (std::size_t i = 0; i < ce.size(); ++i) {
      if (!(p.edges()[p.length() - ce.size() + i] == ce[i])) { match = false; break; }
    }
    if (!match) return k;
    p = p.prefix(g, p.length() - ce.size());
    ++k;
  }
}

}  // namespace

LaurentMatrix realize(const RealizationMap& m, const Element& a) {
  if (&a.graph() != m.graph) throw Error("graph mismatch");
  const Graph& g = *m.graph;
  const Field& f = a.field();
  const std::int64_t d = m.period();

  std::map<std::vector<std::int64_t>, int> index;
  for (int i = 0; i < m.size(); ++i) index[path_key(g, m.paths[i])] = i;

  // expansion paths q with r(q) = target, grouped by source; for comets these
  // avoid the base internally, which is exactly the p-list
  std::vector<std::vector<const Path*>> by_source(g.vertex_count());
  for (const auto& p : m.paths) by_source[p.source()].push_back(&p);

  LaurentMatrix out = LaurentMatrix::zero(m.size(), d);
  const Cycle* c = m.cycle ? &*m.cycle : nullptr;
  for (const auto& mon : a.monomials()) {
    const int w = mon.alpha.range();
    for (const Path* q : by_source[w]) {
      Path A = mon.alpha.concat(g, *q);
      Path B = mon.beta.concat(g, *q);
      std::int64_t ka = 0, kb = 0;
      if (c) {
        ka = strip_cycle_power(g, A, *c);
        kb = strip_cycle_power(g, B, *c);
      }
      auto ia = index.find(path_key(g, A));
      auto ib = index.find(path_key(g, B));
      if (ia == index.end() || ib == index.end())
        throw InternalError("monomial not expressible in the realization basis");
      out.at(ia->second, ib->second).add_term((ka - kb) * d, mon.coeff, f);
    }
  }
  return out;
}

GradingAuditReport grading_audit(const RealizationMap& m, const Field& f, int samples,
                                 std::mt19937_64& rng) {
  const Graph& g = *m.graph;
  GradingAuditReport report;
  report.samples = samples;

  auto random_path_from = [&](int v, int maxlen) -> Path {
    std::vector<EdgeInstance> es;
    int cur = v;
    int len = static_cast<int>(rng() % (maxlen + 1));
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
    return es.empty() ? Path::at_vertex(g, v) : Path::of(g, std::move(es));
  };

  for (int s = 0; s < samples; ++s) {
    // random element, then one homogeneous component
    ElementBuilder b(g, f);
    const int terms = 1 + static_cast<int>(rng() % 4);
    for (int t = 0; t < terms; ++t) {
      Path alpha = random_path_from(static_cast<int>(rng() % g.vertex_count()), 3);
      // beta must share the range of alpha: walk backwards via in-edges
      std::vector<EdgeInstance> rev;
      int cur = alpha.range();
      int len = static_cast<int>(rng() % 4);
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
      Rational coeff(static_cast<long>(rng() % 7) - 3);
      if (sgn(coeff) == 0) coeff = 1;
      b.add_monomial(alpha, beta, coeff);
    }
    Element e = b.build();
    if (e.is_zero()) continue;
    auto comps = homogeneous_components(e);
    auto it = comps.begin();
    std::advance(it, static_cast<long>(rng() % comps.size()));
    const std::int64_t lambda = it->first;
    const Element& hom = it->second;

    LaurentMatrix mat = realize(m, hom);
    if (!mat.exponents_divisible()) {
      report.violations.push_back({to_string(hom), -1, -1,
                                   "entry exponent not divisible by the period"});
      continue;
    }
    for (int i = 0; i < mat.size; ++i) {
      for (int j = 0; j < mat.size; ++j) {
        const LaurentPoly& entry = mat.at(i, j);
        if (entry.is_zero()) continue;
        const std::int64_t want = lambda + m.shifts[j] - m.shifts[i];
        if (!entry.is_monomial() || entry.monomial_exponent() != want) {
          report.violations.push_back(
              {to_string(hom), i + 1, j + 1,
               "entry " + entry.str() + " is not homogeneous of degree " +
                   std::to_string(want)});
        }
      }
    }
  }
  return report;
}

std::vector<Monomial> reduced_basis(const Graph& g) {
  if (g.has_omega_edges())
    throw PreconditionError("reduced basis requires a graph without omega edges");
  if (!enumerate_cycles(g).empty())
    throw PreconditionError("graph has a cycle; the monomial basis is infinite");

  // all paths, grouped by range
  std::vector<Path> all;
  for (int v = 0; v < g.vertex_count(); ++v) all.push_back(Path::at_vertex(g, v));
  for (std::size_t i = 0; i < all.size(); ++i) {
    const Path p = all[i];
    for (int ei : g.out_edges(p.range())) {
      const Edge& e = g.edge(ei);
      for (std::int64_t k = 0; k < e.mult.count; ++k) {
        std::vector<EdgeInstance> es = p.edges();
        es.push_back({ei, k});
        all.push_back(Path::of(g, std::move(es)));
      }
    }
  }
  std::vector<std::vector<const Path*>> by_range(g.vertex_count());
  for (const auto& p : all) by_range[p.range()].push_back(&p);

  std::vector<Monomial> basis;
  for (int v = 0; v < g.vertex_count(); ++v) {
    for (const Path* a : by_range[v]) {
      for (const Path* b : by_range[v]) {
        if (!a->empty() && !b->empty() && a->last() == b->last()) {
          auto s = g.special_edge(g.edge(a->last().edge).src);
          if (s && *s == a->last()) continue;  // reducible junction
        }
        basis.push_back({*a, *b, Rational(1)});
      }
    }
  }
  std::sort(basis.begin(), basis.end(), [&](const Monomial& x, const Monomial& y) {
    const std::size_t tx = x.alpha.length() + x.beta.length();
    const std::size_t ty = y.alpha.length() + y.beta.length();
    if (tx != ty) return tx < ty;
    if (path_less(g, x.alpha, y.alpha)) return true;
    if (path_less(g, y.alpha, x.alpha)) return false;
    return path_less(g, x.beta, y.beta);
  });
  return basis;
}

DimensionAudit dimension_audit(const Graph& g) {
  DimensionAudit a;
  a.basis_count = static_cast<std::int64_t>(reduced_basis(g).size());
  a.decomposition_sum = semisimple_decomposition(g).dimension_sum_of_squares();
  a.agree = a.basis_count == a.decomposition_sum;
  return a;
}

}  // namespace lpa
