#ifndef LPA_DECISION_HPP
#define LPA_DECISION_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lpa/element.hpp"
#include "lpa/graph.hpp"
#include "lpa/structure.hpp"

namespace lpa {

struct CycleExitWitness {
  Cycle cycle;
  std::optional<EdgeInstance> exit;
};

/// Homogeneous x, y and a vertex-sum idempotent u with xy = u but yx != u.
struct ElementPairWitness {
  Element x, y, u;
};

/// Matrix units eps_ij = c^i f f^* (c^*)^j for a cycle c with exit f at its
/// base; 1 <= i,j <= order, stored row-major.
struct MatrixUnitsWitness {
  Cycle cycle;
  EdgeInstance exit;
  int order = 0;
  std::vector<Element> units;
};

/// A maximal tail T (H = E0 \ T) whose infinite emitter u in T \ B_H keeps
/// edges into T, or a quotient whose shape is not a matrix ring.
struct TailViolation {
  std::vector<int> tail;
  std::vector<int> H;
  std::optional<int> emitter;
  std::string reason;
};

using Witness = std::variant<std::monostate, CycleExitWitness,
                             ElementPairWitness, MatrixUnitsWitness,
                             TailViolation>;

struct VerdictWithWitness {
  std::string property;
  bool verdict = false;
  Witness witness;
  std::vector<std::string> evidence;
};

/// Graded (equivalently, plain) direct-finiteness: no cycle has an exit.
/// Negative verdicts carry an engine-verified ElementPairWitness
/// (x = c^*, y = c, u = base); positive verdicts are cross-checked against
/// source_elimination.
VerdictWithWitness decide_directly_finite(const Graph& g, const Field& f);

/// Graded Sigma-V via two independent routes that must agree:
/// (d) no cycle has an exit and every maximal tail's infinite emitters
///     outside B_H emit only into H;
/// (c) every graded-primitive quotient candidate has matrix shape.
VerdictWithWitness decide_graded_sigma_V(const Graph& g, const Field& f);

/// Sigma-V: acyclic (= von Neumann regular) and every primitive quotient is
/// a matrix ring over K.
VerdictWithWitness decide_sigma_V(const Graph& g, const Field& f);

struct BoundedIndexResult {
  bool bounded = false;
  std::optional<std::int64_t> index;
  std::optional<MatrixUnitsWitness> witness;
};

/// Bounded index of nilpotence (finite graphs without omega edges; omega
/// input is an unsupported-hypothesis refusal). Unbounded verdicts carry
/// engine-verified matrix units of the requested order.
BoundedIndexResult bounded_index(const Graph& g, const Field& f,
                                 int witness_order = 4);

struct Summand {
  bool laurent = false;
  std::int64_t period = 0;  // cycle length; 0 for base ring K
  std::int64_t size = 0;
  std::vector<std::int64_t> shifts;  // path-length multiset, sorted
  std::string anchor;                // sink vertex or cycle name
};

struct DecompositionDescriptor {
  std::vector<Summand> summands;
  std::int64_t dimension_sum_of_squares() const;
};

/// The graded semisimple decomposition of L_K(E) for finite no-omega graphs
/// in which no cycle has an exit; otherwise a refusal naming the obstruction.
DecompositionDescriptor semisimple_decomposition(const Graph& g);

enum class QuotientShape { kMatrixOverK, kMatrixOverLaurent, kNotSemisimple };

std::string shape_name(QuotientShape s);

struct PrimitiveQuotientDescriptor {
  AdmissiblePair pair;
  QuotientGraph quotient;
  QuotientShape shape = QuotientShape::kNotSemisimple;
  std::int64_t size = 0;
  std::int64_t period = 0;
  std::vector<std::int64_t> shifts;
  bool candidate = false;  // true for the S != B_H variants
  std::string note;
};

/// Admissible pairs (H,S) whose quotient vertex set is downward directed,
/// with each quotient classified as a graded matrix ring or not.
std::vector<PrimitiveQuotientDescriptor> graded_primitive_spectrum(
    const Graph& g);

struct SocleReport {
  std::vector<int> generating_line_points;
  std::vector<int> closure;
  bool is_whole_algebra = false;
};

SocleReport socle(const Graph& g);

/// Builds the eps_ij units for a cycle-with-exit and verifies the matrix-unit
/// identities through the element engine.
MatrixUnitsWitness make_matrix_units(const Graph& g, const Field& f,
                                     const Cycle& c, int order);

bool verify_element_pair(const ElementPairWitness& w);
bool verify_matrix_units(const Graph& g, const Field& f,
                         const MatrixUnitsWitness& w);

/// Rotates a cycle so that its base carries the given exit.
Cycle rotate_cycle_to_exit(const Graph& g, const Cycle& c,
                           const EdgeInstance& exit);

}  // namespace lpa

#endif
