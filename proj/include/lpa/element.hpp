#ifndef LPA_ELEMENT_HPP
#define LPA_ELEMENT_HPP

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "lpa/graph.hpp"
#include "lpa/rational.hpp"

namespace lpa {

/// One generator symbol of the algebra: a vertex, an edge, or a ghost edge.
struct Gen {
  enum Kind { kVertex, kEdge, kGhost };
  Kind kind = kVertex;
  int vertex = -1;       // kVertex
  EdgeInstance inst;     // kEdge / kGhost

  static Gen v(int v) { return {kVertex, v, {}}; }
  static Gen e(EdgeInstance i) { return {kEdge, -1, i}; }
  static Gen ghost(EdgeInstance i) { return {kGhost, -1, i}; }
};

/// A formal linear combination of words over the generators, before
/// normalization.
struct RawTerm {
  Rational coeff;
  std::vector<Gen> word;
};

struct RawExpr {
  std::vector<RawTerm> terms;
};

/// k * alpha beta^* with r(alpha) = r(beta) and k != 0.
struct Monomial {
  Path alpha;
  Path beta;
  Rational coeff;
};

std::int64_t monomial_degree(const Monomial& m);

/// An element of L_K(E) held in canonical normal form: monomials are
/// junction-reduced (no alpha, beta both ending in the special edge of a
/// regular vertex), pairwise distinct, and sorted by the canonical order
/// (|a|+|b|, |a|, instance keys of a, then of b).
class Element {
public:
  Element() = default;
  Element(const Graph& g, Field f) : g_(&g), field_(f) {}

  static Element zero(const Graph& g, Field f) { return Element(g, f); }
  static Element vertex(const Graph& g, Field f, int v);
  static Element edge(const Graph& g, Field f, EdgeInstance i);
  static Element ghost(const Graph& g, Field f, EdgeInstance i);
  /// Builds k * alpha beta^* and reduces it to normal form.
  static Element monomial(const Graph& g, Field f, const Path& alpha,
                          const Path& beta, const Rational& k);

  const Graph& graph() const { return *g_; }
  const Field& field() const { return field_; }
  const std::vector<Monomial>& monomials() const { return mons_; }
  bool is_zero() const { return mons_.empty(); }
  bool is_normal_form() const { return true; }

  /// True when every monomial has |alpha| - |beta| == n for the same n.
  bool is_homogeneous() const;
  std::optional<std::int64_t> degree() const;

  bool operator==(const Element& other) const;
  bool operator!=(const Element& other) const { return !(*this == other); }

private:
  const Graph* g_ = nullptr;
  Field field_;
  std::vector<Monomial> mons_;

  friend class ElementBuilder;
};

/// Accumulates monomials and produces a canonical Element.
class ElementBuilder {
public:
  ElementBuilder(const Graph& g, Field f) : g_(&g), field_(f) {}
  /// Adds k * alpha beta^*, junction-reducing first.
  void add_monomial(const Path& alpha, const Path& beta, const Rational& k);
  /// Adds an already-reduced monomial.
  void add_reduced(const Path& alpha, const Path& beta, const Rational& k);
  void add(const Element& e, const Rational& scale);
  Element build();

private:
  const Graph* g_;
  Field field_;
  std::map<std::vector<std::int64_t>, Monomial> acc_;
};

enum class RewriteStrategy { kDeterministic, kRandomized };

/// Rewrites a raw expression to its unique normal form. The randomized
/// strategy picks an arbitrary redex each step (used by the confluence
/// tests); both strategies reach the same fixed point.
Element normalize(const RawExpr& raw, const Graph& g, const Field& f,
                  RewriteStrategy strategy = RewriteStrategy::kDeterministic,
                  std::mt19937_64* rng = nullptr);

Element add(const Element& a, const Element& b);
Element subtract(const Element& a, const Element& b);
Element scale(const Element& a, const Rational& k);
Element multiply(const Element& a, const Element& b);
Element star(const Element& a);

inline Element operator+(const Element& a, const Element& b) { return add(a, b); }
inline Element operator-(const Element& a, const Element& b) { return subtract(a, b); }
inline Element operator*(const Element& a, const Element& b) { return multiply(a, b); }
inline Element operator-(const Element& a) { return scale(a, Rational(-1)); }

std::map<std::int64_t, Element> homogeneous_components(const Element& a);

/// Sum of the vertices appearing as s(alpha) or s(beta) across the
/// monomials of a; satisfies u*a == a*u == a. Zero for a == 0.
Element local_unit(const Element& a);

/// Element literal syntax: `3/2 * e1 e2 e3^ e1^ + v - f#2 f#2^`
/// (caret = star, #k = parallel index). Serialization is canonical and
/// bit-exact.
Element parse_element(const std::string& text, const Graph& g, const Field& f);
RawExpr parse_raw_expr(const std::string& text, const Graph& g);
std::string to_string(const Element& a);
std::string monomial_name(const Graph& g, const Monomial& m);

}  // namespace lpa

#endif
