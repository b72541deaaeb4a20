#ifndef LPA_JSON_IO_HPP
#define LPA_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "lpa/decision.hpp"
#include "lpa/graph.hpp"
#include "lpa/laurent.hpp"
#include "lpa/realization.hpp"
#include "lpa/structure.hpp"

namespace lpa {

using Json = nlohmann::ordered_json;

Json graph_to_json(const Graph& g);
Json condition_report_to_json(const ConditionReport& r);
Json classification_to_json(const Graph& g, const VertexClassification& c);
Json cycles_to_json(const Graph& g, const std::vector<Cycle>& cs);
Json verdict_to_json(const Graph& g, const VerdictWithWitness& v);
Json witness_to_json(const Graph& g, const Field& f, const Witness& w,
                     bool standalone);
Json decomposition_to_json(const DecompositionDescriptor& d);
Json spectrum_to_json(const Graph& g,
                      const std::vector<PrimitiveQuotientDescriptor>& qs);
Json socle_to_json(const Graph& g, const SocleReport& s);
Json laurent_matrix_to_json(const LaurentMatrix& m);

/// The full analysis report (also the CLI `analyze --json` payload); key
/// order is fixed so identical inputs serialize byte-identically.
Json build_report(const Graph& g, const Field& f);

/// Re-checks a standalone witness JSON produced by the `witness` subcommand
/// or embedded in a report. Returns a human-readable failure, or "" if valid.
std::string verify_witness_json(const Json& j);

std::string dump_json(const Json& j);

}  // namespace lpa

#endif
