#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "lpa/corpus.hpp"
#include "lpa/json_io.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw lpa::ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

lpa::Graph load_graph(const std::string& path) {
  return lpa::Graph::parse(read_file(path));
}

void print_verdict_text(const lpa::Graph& g, const lpa::VerdictWithWitness& v) {
  std::cout << v.property << ": " << (v.verdict ? "true" : "false") << "\n";
  for (const auto& e : v.evidence) std::cout << "  - " << e << "\n";
  const auto w = lpa::witness_to_json(g, lpa::Field::rationals(), v.witness, false);
  if (!w.is_null()) std::cout << "  witness: " << w.dump() << "\n";
}

struct Options {
  bool json = false;
  std::string field = "q";
};

int run(int argc, char** argv) {
  CLI::App app{"Leavitt path algebra workbench"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_flag("--json", opt.json, "emit JSON instead of text");
  app.add_option("--field", opt.field, "coefficient field: q (default) or gf:<p>");

  std::string graph_path, property, witness_kind, witness_path;
  int order = 4;
  lpa::CorpusOptions copts;

  auto* analyze = app.add_subcommand("analyze", "full structural report");
  analyze->add_option("graph", graph_path)->required();

  auto* decide = app.add_subcommand("decide", "run a decision procedure");
  decide->add_option("property", property,
                     "directly-finite | graded-sigma-v | sigma-v | bounded-index")
      ->required();
  decide->add_option("graph", graph_path)->required();
  decide->add_option("--order", order, "matrix-units witness order (default 4)");

  auto* decompose = app.add_subcommand("decompose", "graded semisimple decomposition");
  decompose->add_option("graph", graph_path)->required();

  auto* spectrum = app.add_subcommand("spectrum", "graded primitive quotients");
  spectrum->add_option("graph", graph_path)->required();

  auto* socle_cmd = app.add_subcommand("socle", "line points and the socle ideal");
  socle_cmd->add_option("graph", graph_path)->required();

  auto* witness = app.add_subcommand("witness", "emit a standalone witness");
  witness->add_option("kind", witness_kind, "element-pair | matrix-units")->required();
  witness->add_option("graph", graph_path)->required();
  witness->add_option("--order", order, "matrix-units order (default 4)");

  auto* verify = app.add_subcommand("verify-witness", "re-check a witness file");
  verify->add_option("witness", witness_path)->required();

  auto* corpus = app.add_subcommand("corpus", "random-graph agreement suite");
  corpus->add_option("--count", copts.count);
  corpus->add_option("--seed", copts.seed);
  corpus->add_option("--max-vertices", copts.max_vertices);
  corpus->add_option("--max-edges", copts.max_edges);
  corpus->add_option("--omega-prob", copts.omega_prob);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n" << app.help();
    return 64;
  }

  const lpa::Field field = lpa::Field::parse(opt.field);

  if (*analyze) {
    const lpa::Graph g = load_graph(graph_path);
    const auto report = lpa::build_report(g, field);
    if (opt.json) {
      std::cout << lpa::dump_json(report);
    } else {
      std::cout << "graph: " << g.vertex_count() << " vertices, " << g.edge_count()
                << " edge families\n";
      std::cout << "conditions: " << report["conditions"].dump() << "\n";
      std::cout << "classification: " << report["classification"].dump() << "\n";
      std::cout << "verdicts:\n";
      for (const auto& [k, v] : report["verdicts"].items())
        std::cout << "  " << k << ": " << v.dump() << "\n";
      std::cout << "decomposition: " << report["decomposition"].dump() << "\n";
      std::cout << "spectrum: " << report["spectrum"]["subdirect"].dump() << "\n";
    }
    return 0;
  }

  if (*decide) {
    const lpa::Graph g = load_graph(graph_path);
    if (property == "bounded-index") {
      const auto b = lpa::bounded_index(g, field, order);
      lpa::Json j;
      j["property"] = "bounded-index";
      j["bounded"] = b.bounded;
      j["index"] = b.index ? lpa::Json(*b.index) : lpa::Json(nullptr);
      j["witness"] = b.witness
                         ? lpa::witness_to_json(g, field, lpa::Witness(*b.witness), true)
                         : lpa::Json(nullptr);
      if (opt.json) std::cout << lpa::dump_json(j);
      else
        std::cout << "bounded-index: " << (b.bounded ? "bounded" : "unbounded")
                  << (b.index ? ", index " + std::to_string(*b.index) : "") << "\n";
      return 0;
    }
    lpa::VerdictWithWitness v;
    if (property == "directly-finite") v = lpa::decide_directly_finite(g, field);
    else if (property == "graded-sigma-v") v = lpa::decide_graded_sigma_V(g, field);
    else if (property == "sigma-v") v = lpa::decide_sigma_V(g, field);
    else {
      std::cerr << "unknown property '" << property << "'\n";
      return 64;
    }
    if (opt.json) {
      lpa::Json j = lpa::verdict_to_json(g, v);
      j["witness"] = lpa::witness_to_json(g, field, v.witness, true);
      std::cout << lpa::dump_json(j);
    } else {
      print_verdict_text(g, v);
    }
    return 0;
  }

  if (*decompose) {
    const lpa::Graph g = load_graph(graph_path);
    const auto d = lpa::semisimple_decomposition(g);
    if (opt.json) std::cout << lpa::dump_json(lpa::decomposition_to_json(d));
    else {
      for (const auto& s : d.summands) {
        std::cout << "M_" << s.size << "("
                  << (s.laurent ? "K[x^" + std::to_string(s.period) + ",x^-" +
                                      std::to_string(s.period) + "]"
                                : "K")
                  << ") anchored at " << s.anchor << ", shifts {";
        for (std::size_t i = 0; i < s.shifts.size(); ++i)
          std::cout << (i ? "," : "") << s.shifts[i];
        std::cout << "}\n";
      }
    }
    return 0;
  }

  if (*spectrum) {
    const lpa::Graph g = load_graph(graph_path);
    const auto qs = lpa::graded_primitive_spectrum(g);
    const auto j = lpa::spectrum_to_json(g, qs);
    if (opt.json) std::cout << lpa::dump_json(j);
    else {
      for (const auto& q : j["quotients"])
        std::cout << "H=" << q["H"].dump() << " S=" << q["S"].dump() << " -> "
                  << q["shape"].get<std::string>() << "\n";
      std::cout << "subdirect: " << j["subdirect"].dump() << "\n";
    }
    return 0;
  }

  if (*socle_cmd) {
    const lpa::Graph g = load_graph(graph_path);
    const auto j = lpa::socle_to_json(g, lpa::socle(g));
    if (opt.json) std::cout << lpa::dump_json(j);
    else std::cout << j.dump() << "\n";
    return 0;
  }

  if (*witness) {
    const lpa::Graph g = load_graph(graph_path);
    if (witness_kind == "element-pair") {
      const auto v = lpa::decide_directly_finite(g, field);
      if (v.verdict) {
        std::cerr << "graph is directly finite: no element-pair witness\n";
        return 2;
      }
      std::cout << lpa::dump_json(lpa::witness_to_json(g, field, v.witness, true));
      return 0;
    }
    if (witness_kind == "matrix-units") {
      const lpa::Cycle* bad = nullptr;
      const auto cycles = lpa::enumerate_cycles(g);
      for (const auto& c : cycles)
        if (c.has_exit()) { bad = &c; break; }
      if (!bad) {
        std::cerr << "no cycle with an exit: no matrix-units witness\n";
        return 2;
      }
      const auto w = lpa::make_matrix_units(g, field, *bad, order);
      std::cout << lpa::dump_json(lpa::witness_to_json(g, field, lpa::Witness(w), true));
      return 0;
    }
    std::cerr << "unknown witness kind '" << witness_kind << "'\n";
    return 64;
  }

  if (*verify) {
    const auto j = lpa::Json::parse(read_file(witness_path));
    const std::string failure = lpa::verify_witness_json(j);
    if (failure.empty()) {
      std::cout << "witness ok\n";
      return 0;
    }
    std::cerr << "witness invalid: " << failure << "\n";
    return 1;
  }

  if (*corpus) {
    const auto r = lpa::run_corpus_checks(copts);
    lpa::Json j;
    j["graphs"] = r.graphs;
    j["graphs_with_exit_cycle"] = r.graphs_with_exit_cycle;
    j["fourway_disagreements"] = r.fourway_disagreements;
    j["route_disagreements"] = r.route_disagreements;
    j["witness_failures"] = r.witness_failures;
    j["details"] = r.details;
    if (opt.json) std::cout << lpa::dump_json(j);
    else
      std::cout << "corpus: " << r.graphs << " graphs, "
                << (r.ok() ? "all checks passed" : "FAILURES") << "\n"
                << j.dump(2) << "\n";
    return r.ok() ? 0 : 1;
  }

  return 64;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const lpa::PreconditionError& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return 2;
  } catch (const lpa::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const lpa::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
