#ifndef LPA_REALIZATION_HPP
#define LPA_REALIZATION_HPP

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lpa/decision.hpp"
#include "lpa/element.hpp"
#include "lpa/graph.hpp"
#include "lpa/laurent.hpp"

namespace lpa {

enum class RealizationKind { kAcyclicSingleSink, kComet };

/// The explicit graded isomorphism L_K(E) -> M_n(K)(delta) or
/// M_n(K[x^d,x^-d])(delta): p_i p_j^* -> e_ij, p_i c^k p_j^* -> e_ij(x^{kd}).
struct RealizationMap {
  const Graph* graph = nullptr;
  RealizationKind kind = RealizationKind::kAcyclicSingleSink;
  std::vector<Path> paths;            // p_1..p_n, ordered by (length, ids)
  std::vector<std::int64_t> shifts;   // delta_i = |p_i|
  std::optional<Cycle> cycle;         // comet anchor
  int target = -1;                    // the sink, or the cycle base

  int size() const { return static_cast<int>(paths.size()); }
  std::int64_t period() const;
};

/// Validates the shape precondition (finite, no omega edges, acyclic with a
/// unique sink, or a comet) and builds the map; refusals name the
/// obstruction.
RealizationMap build_realization(const Graph& g);

LaurentMatrix realize(const RealizationMap& m, const Element& a);

struct GradingViolation {
  std::string element;
  int i = 0, j = 0;
  std::string detail;
};

struct GradingAuditReport {
  int samples = 0;
  std::vector<GradingViolation> violations;
};

/// Samples random homogeneous elements and checks that every nonzero entry
/// (i,j) of the realization lies in the component lambda + delta_j - delta_i.
GradingAuditReport grading_audit(const RealizationMap& m, const Field& f,
                                 int samples, std::mt19937_64& rng);

/// All normal-form basis monomials alpha beta^* of a finite acyclic no-omega
/// graph, enumerated combinatorially (independent of the rewrite engine).
std::vector<Monomial> reduced_basis(const Graph& g);

struct DimensionAudit {
  std::int64_t basis_count = 0;
  std::int64_t decomposition_sum = 0;
  bool agree = false;
};

DimensionAudit dimension_audit(const Graph& g);

}  // namespace lpa

#endif
