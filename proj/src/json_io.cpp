#include "lpa/json_io.hpp"

#include <algorithm>

namespace lpa {

namespace {

std::vector<std::string> sorted_names(const Graph& g, const std::vector<int>& vs) {
  std::vector<std::string> out;
  for (int v : vs) out.push_back(g.vertex_name(v));
  std::sort(out.begin(), out.end());
  return out;
}

Json instance_list(const Graph& g, const std::vector<EdgeInstance>& is) {
  Json out = Json::array();
  for (const auto& i : is) out.push_back(g.instance_name(i));
  return out;
}

}  // namespace

Json graph_to_json(const Graph& g) {
  Json j;
  j["vertices"] = g.vertex_names();
  Json edges = Json::array();
  for (const auto& e : g.edges()) {
    Json je;
    je["id"] = e.id;
    je["src"] = g.vertex_name(e.src);
    je["rng"] = g.vertex_name(e.rng);
    je["mult"] = e.mult.omega ? Json("omega") : Json(e.mult.count);
    edges.push_back(je);
  }
  j["edges"] = edges;
  return j;
}

Json condition_report_to_json(const ConditionReport& r) {
  Json j;
  j["acyclic"] = r.acyclic;
  j["condition_L"] = r.condition_L;
  j["condition_K"] = r.condition_K;
  j["no_exit_cycles"] = r.no_exit_cycles;
  j["downward_directed_E0"] = r.downward_directed_E0;
  j["row_finite"] = r.row_finite;
  j["gk_dim_one"] = r.gk_dim_one;
  return j;
}

Json classification_to_json(const Graph& g, const VertexClassification& c) {
  Json j;
  j["sinks"] = sorted_names(g, c.sinks);
  j["sources"] = sorted_names(g, c.sources);
  j["regular"] = sorted_names(g, c.regular);
  j["infinite_emitters"] = sorted_names(g, c.infinite_emitters);
  j["line_points"] = sorted_names(g, c.line_points);
  return j;
}

Json cycles_to_json(const Graph& g, const std::vector<Cycle>& cs) {
  Json out = Json::array();
  for (const auto& c : cs) {
    Json j;
    j["base"] = g.vertex_name(c.base);
    j["edges"] = instance_list(g, c.path.edges());
    j["exits"] = instance_list(g, c.exits);
    out.push_back(j);
  }
  return out;
}

Json witness_to_json(const Graph& g, const Field& f, const Witness& w,
                     bool standalone) {
  Json j;
  if (std::holds_alternative<std::monostate>(w)) return Json(nullptr);
  if (standalone) {
    j["graph"] = g.to_text();
    j["field"] = f.name();
  }
  if (const auto* cw = std::get_if<CycleExitWitness>(&w)) {
    j["kind"] = "cycle-exit";
    j["cycle"] = instance_list(g, cw->cycle.path.edges());
    j["exit"] = cw->exit ? Json(g.instance_name(*cw->exit)) : Json(nullptr);
  } else if (const auto* ew = std::get_if<ElementPairWitness>(&w)) {
    j["kind"] = "element-pair";
    j["x"] = to_string(ew->x);
    j["y"] = to_string(ew->y);
    j["u"] = to_string(ew->u);
  } else if (const auto* mw = std::get_if<MatrixUnitsWitness>(&w)) {
    j["kind"] = "matrix-units";
    j["cycle"] = instance_list(g, mw->cycle.path.edges());
    j["exit"] = g.instance_name(mw->exit);
    j["order"] = mw->order;
    Json units = Json::array();
    for (int i = 0; i < mw->order; ++i) {
      Json row = Json::array();
      for (int k = 0; k < mw->order; ++k)
        row.push_back(to_string(mw->units[i * mw->order + k]));
      units.push_back(row);
    }
    j["units"] = units;
  } else if (const auto* tw = std::get_if<TailViolation>(&w)) {
    j["kind"] = "tail-violation";
    j["tail"] = sorted_names(g, tw->tail);
    j["H"] = sorted_names(g, tw->H);
    j["emitter"] = tw->emitter ? Json(g.vertex_name(*tw->emitter)) : Json(nullptr);
    j["reason"] = tw->reason;
  }
  return j;
}

Json verdict_to_json(const Graph& g, const VerdictWithWitness& v) {
  Json j;
  j["property"] = v.property;
  j["verdict"] = v.verdict;
  j["witness"] = witness_to_json(g, Field::rationals(), v.witness, false);
  j["evidence"] = v.evidence;
  return j;
}

Json decomposition_to_json(const DecompositionDescriptor& d) {
  Json j;
  Json summands = Json::array();
  for (const auto& s : d.summands) {
    Json js;
    js["base"] = s.laurent ? "laurent" : "K";
    js["period"] = s.period;
    js["size"] = s.size;
    js["shifts"] = s.shifts;
    js["anchor"] = s.anchor;
    summands.push_back(js);
  }
  j["summands"] = summands;
  j["sum_of_squares"] = d.dimension_sum_of_squares();
  return j;
}

Json spectrum_to_json(const Graph& g,
                      const std::vector<PrimitiveQuotientDescriptor>& qs) {
  Json j;
  Json arr = Json::array();
  bool all_matrix = true;
  for (const auto& q : qs) {
    Json jq;
    jq["H"] = sorted_names(g, q.pair.H);
    jq["S"] = sorted_names(g, q.pair.S);
    jq["candidate"] = q.candidate;
    jq["quotient"] = graph_to_json(q.quotient.graph);
    jq["shape"] = shape_name(q.shape);
    if (q.shape != QuotientShape::kNotSemisimple) {
      jq["size"] = q.size;
      jq["period"] = q.period;
      jq["shifts"] = q.shifts;
    }
    jq["note"] = q.note;
    if (q.shape == QuotientShape::kNotSemisimple) all_matrix = false;
    arr.push_back(jq);
  }
  j["quotients"] = arr;
  Json sub;
  sub["count"] = qs.size();
  sub["all_matrix_shapes"] = all_matrix;
  j["subdirect"] = sub;
  return j;
}

Json socle_to_json(const Graph& g, const SocleReport& s) {
  Json j;
  j["generating_line_points"] = sorted_names(g, s.generating_line_points);
  j["hs_closure"] = sorted_names(g, s.closure);
  j["is_whole_algebra"] = s.is_whole_algebra;
  return j;
}

Json laurent_matrix_to_json(const LaurentMatrix& m) {
  Json j;
  j["size"] = m.size;
  j["period"] = m.period;
  Json entries = Json::array();
  for (int i = 0; i < m.size; ++i) {
    for (int k = 0; k < m.size; ++k) {
      const LaurentPoly& p = m.at(i, k);
      if (p.is_zero()) continue;
      Json e;
      e["i"] = i + 1;
      e["j"] = k + 1;
      Json coeffs;
      for (const auto& [exp, c] : p.coeffs()) coeffs[std::to_string(exp)] = to_string(c);
      e["coeffs"] = coeffs;
      entries.push_back(e);
    }
  }
  j["entries"] = entries;
  return j;
}

Json build_report(const Graph& g, const Field& f) {
  Json j;
  j["graph"] = graph_to_json(g);
  j["field"] = f.name();
  j["classification"] = classification_to_json(g, classify_vertices(g));
  j["conditions"] = condition_report_to_json(condition_report(g));
  j["cycles"] = cycles_to_json(g, enumerate_cycles(g));
  {
    Json tails = Json::array();
    for (const auto& t : maximal_tails(g)) {
      Json jt;
      jt["T"] = sorted_names(g, t.T);
      jt["special"] = t.special;
      tails.push_back(jt);
    }
    j["maximal_tails"] = tails;
  }
  {
    const auto elim = source_elimination(g);
    Json je;
    je["is_graded_directly_finite"] = elim.is_graded_directly_finite;
    Json trace = Json::array();
    for (const auto& round : elim.elimination_trace)
      trace.push_back(sorted_names(g, round));
    je["trace"] = trace;
    je["residual_vertices"] = sorted_names(g, elim.residual_vertices);
    j["source_elimination"] = je;
  }
  j["socle"] = socle_to_json(g, socle(g));

  Json verdicts;
  verdicts["directly_finite"] = verdict_to_json(g, decide_directly_finite(g, f));
  verdicts["graded_sigma_v"] = verdict_to_json(g, decide_graded_sigma_V(g, f));
  verdicts["sigma_v"] = verdict_to_json(g, decide_sigma_V(g, f));
  try {
    const auto b = bounded_index(g, f);
    Json jb;
    jb["bounded"] = b.bounded;
    jb["index"] = b.index ? Json(*b.index) : Json(nullptr);
    jb["witness"] = b.witness ? witness_to_json(g, f, Witness(*b.witness), false)
                              : Json(nullptr);
    verdicts["bounded_index"] = jb;
  } catch (const PreconditionError& e) {
    verdicts["bounded_index"] = Json{{"refused", e.what()}};
  }
  j["verdicts"] = verdicts;

  try {
    j["decomposition"] = decomposition_to_json(semisimple_decomposition(g));
  } catch (const PreconditionError& e) {
    j["decomposition"] = Json{{"refused", e.what()}};
  }
  j["spectrum"] = spectrum_to_json(g, graded_primitive_spectrum(g));
  try {
    const auto audit = dimension_audit(g);
    Json ja;
    ja["basis_count"] = audit.basis_count;
    ja["decomposition_sum"] = audit.decomposition_sum;
    ja["agree"] = audit.agree;
    j["dimension_audit"] = ja;
  } catch (const PreconditionError& e) {
    j["dimension_audit"] = Json{{"refused", e.what()}};
  }
  return j;
}

namespace {

Cycle cycle_from_json(const Graph& g, const Json& arr) {
  std::vector<EdgeInstance> es;
  for (const auto& t : arr) es.push_back(g.parse_instance(t.get<std::string>()));
  Cycle c;
  c.path = Path::of(g, es);
  c.base = c.path.source();
  if (c.path.range() != c.base) throw ParseError("witness cycle is not closed");
  std::vector<bool> seen(g.vertex_count(), false);
  for (const auto& e : es) {
    int v = g.edge(e.edge).src;
    if (seen[v]) throw ParseError("witness cycle repeats a vertex");
    seen[v] = true;
  }
  return c;
}

bool is_exit_of(const Graph& g, const Cycle& c, const EdgeInstance& f) {
  for (const auto& e : c.path.edges()) {
    if (f == e) return false;
  }
  for (const auto& e : c.path.edges())
    if (g.edge(e.edge).src == g.edge(f.edge).src) return true;
  return false;
}

}  // namespace

std::string verify_witness_json(const Json& j) {
  if (!j.contains("graph") || !j.contains("kind"))
    return "witness JSON must carry 'graph' and 'kind'";
  const Graph g = Graph::parse(j["graph"].get<std::string>());
  const Field f = Field::parse(j.value("field", "q"));
  const std::string kind = j["kind"].get<std::string>();

  if (kind == "element-pair") {
    ElementPairWitness w{parse_element(j["x"].get<std::string>(), g, f),
                         parse_element(j["y"].get<std::string>(), g, f),
                         parse_element(j["u"].get<std::string>(), g, f)};
    if (!verify_element_pair(w))
      return "element-pair identities failed: need xy = u, yx != u, u a local unit";
    return "";
  }
  if (kind == "matrix-units") {
    MatrixUnitsWitness w;
    w.cycle = cycle_from_json(g, j["cycle"]);
    w.exit = g.parse_instance(j["exit"].get<std::string>());
    w.order = j["order"].get<int>();
    if (!is_exit_of(g, w.cycle, w.exit)) return "claimed exit is not an exit of the cycle";
    w.cycle.exits = {w.exit};
    for (const auto& row : j["units"])
      for (const auto& cell : row)
        w.units.push_back(parse_element(cell.get<std::string>(), g, f));
    if (static_cast<int>(w.units.size()) != w.order * w.order)
      return "unit table is not order x order";
    // the units must be the canonical eps_ij of (cycle, exit)
    MatrixUnitsWitness expected = make_matrix_units(g, f, w.cycle, w.order);
    if (!(expected.exit == w.exit))
      return "exit disagrees with the canonical construction";
    for (std::size_t i = 0; i < w.units.size(); ++i)
      if (!(w.units[i] == expected.units[i]))
        return "unit " + std::to_string(i) + " differs from c^i f f^* (c^*)^j";
    if (!verify_matrix_units(g, f, w)) return "matrix-unit identities failed";
    return "";
  }
  if (kind == "cycle-exit") {
    Cycle c = cycle_from_json(g, j["cycle"]);
    if (!j["exit"].is_null()) {
      EdgeInstance f2 = g.parse_instance(j["exit"].get<std::string>());
      if (!is_exit_of(g, c, f2)) return "claimed exit is not an exit of the cycle";
    }
    return "";
  }
  if (kind == "tail-violation") {
    std::vector<int> T, H;
    for (const auto& t : j["tail"]) T.push_back(g.require_vertex(t.get<std::string>()));
    for (const auto& t : j["H"]) H.push_back(g.require_vertex(t.get<std::string>()));
    std::vector<bool> inT(g.vertex_count(), false), inH(g.vertex_count(), false);
    for (int v : T) inT[v] = true;
    for (int v : H) inH[v] = true;
    for (int v = 0; v < g.vertex_count(); ++v)
      if (inT[v] == inH[v]) return "tail and H do not partition the vertices";
    if (!is_hereditary(g, inH) || !is_saturated(g, inH))
      return "H is not hereditary saturated";
    if (!is_downward_directed(g, inT)) return "tail is not downward directed";
    if (!j["emitter"].is_null()) {
      int u = g.require_vertex(j["emitter"].get<std::string>());
      if (!inT[u] || !g.is_infinite_emitter(u)) return "emitter is not an infinite emitter in the tail";
      const auto bh = breaking_vertices(g, H);
      if (std::find(bh.begin(), bh.end(), u) != bh.end())
        return "emitter is a breaking vertex of H";
      bool keeps_edge = false;
      for (int ei : g.out_edges(u))
        if (inT[g.edge(ei).rng]) keeps_edge = true;
      if (!keeps_edge) return "emitter has no edge into the tail";
    }
    return "";
  }
  return "unknown witness kind '" + kind + "'";
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace lpa
