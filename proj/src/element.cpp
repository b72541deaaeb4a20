#include "lpa/element.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <sstream>

namespace lpa {

std::int64_t monomial_degree(const Monomial& m) {
  return static_cast<std::int64_t>(m.alpha.length()) -
         static_cast<std::int64_t>(m.beta.length());
}

namespace {

std::vector<std::int64_t> monomial_key(const Graph& g, const Path& a, const Path& b) {
  std::vector<std::int64_t> k;
  k.reserve(4 + 2 * (a.length() + b.length()));
  k.push_back(static_cast<std::int64_t>(a.length() + b.length()));
  k.push_back(static_cast<std::int64_t>(a.length()));
  for (const auto& e : a.edges()) {
    auto key = g.instance_key(e);
    k.push_back(key.first);
    k.push_back(key.second);
  }
  k.push_back(g.vertex_id_rank(a.source()));
  for (const auto& e : b.edges()) {
    auto key = g.instance_key(e);
    k.push_back(key.first);
    k.push_back(key.second);
  }
  k.push_back(g.vertex_id_rank(b.source()));
  return k;
}

bool is_special(const Graph& g, const EdgeInstance& i) {
  auto s = g.special_edge(g.edge(i.edge).src);
  return s && *s == i;
}

// all instances emitted by a regular vertex
std::vector<EdgeInstance> out_instances(const Graph& g, int v) {
  std::vector<EdgeInstance> out;
  for (int ei : g.out_edges(v)) {
    const Edge& e = g.edge(ei);
    if (e.mult.omega) throw InternalError("instance expansion at infinite emitter");
    for (std::int64_t k = 0; k < e.mult.count; ++k) out.push_back({ei, k});
  }
  return out;
}

}  // namespace

// ---- builder ----

void ElementBuilder::add_reduced(const Path& alpha, const Path& beta, const Rational& k) {
  Rational c = field_.canon(k);
  if (field_.is_zero(c)) return;
  auto key = monomial_key(*g_, alpha, beta);
  auto it = acc_.find(key);
  if (it == acc_.end()) {
    acc_.emplace(std::move(key), Monomial{alpha, beta, c});
  } else {
    it->second.coeff = field_.canon(it->second.coeff + c);
    if (field_.is_zero(it->second.coeff)) acc_.erase(it);
  }
}

void ElementBuilder::add_monomial(const Path& alpha, const Path& beta, const Rational& k) {
  if (alpha.range() != beta.range()) return;  // alpha beta^* = 0
  if (field_.is_zero(k)) return;
  Path a = alpha, b = beta;
  Rational c = k;
  // junction reduction: gamma gamma^* -> v - sum_{e != gamma} e e^*
  while (!a.empty() && !b.empty() && a.last() == b.last() && is_special(*g_, a.last())) {
    const EdgeInstance gamma = a.last();
    const int v = g_->edge(gamma.edge).src;
    Path a1 = a.prefix(*g_, a.length() - 1);
    Path b1 = b.prefix(*g_, b.length() - 1);
    for (const auto& e : out_instances(*g_, v)) {
      if (e == gamma) continue;
      std::vector<EdgeInstance> ae = a1.edges(); ae.push_back(e);
      std::vector<EdgeInstance> be = b1.edges(); be.push_back(e);
      // junction ends in a non-special edge: already reduced
      add_reduced(Path::of(*g_, std::move(ae)), Path::of(*g_, std::move(be)), -c);
    }
    a = std::move(a1);
    b = std::move(b1);
  }
  add_reduced(a, b, c);
}

void ElementBuilder::add(const Element& e, const Rational& scale) {
  for (const auto& m : e.monomials()) add_reduced(m.alpha, m.beta, m.coeff * scale);
}

Element ElementBuilder::build() {
  Element e(*g_, field_);
  e.mons_.reserve(acc_.size());
  for (auto& [key, m] : acc_) e.mons_.push_back(m);
  return e;
}

// ---- element basics ----

Element Element::vertex(const Graph& g, Field f, int v) {
  ElementBuilder b(g, f);
  Path p = Path::at_vertex(g, v);
  b.add_reduced(p, p, Rational(1));
  return b.build();
}

Element Element::edge(const Graph& g, Field f, EdgeInstance i) {
  g.check_instance(i);
  ElementBuilder b(g, f);
  Path a = Path::of(g, {i});
  b.add_reduced(a, Path::at_vertex(g, a.range()), Rational(1));
  return b.build();
}

Element Element::ghost(const Graph& g, Field f, EdgeInstance i) {
  g.check_instance(i);
  ElementBuilder b(g, f);
  Path bb = Path::of(g, {i});
  b.add_reduced(Path::at_vertex(g, bb.range()), bb, Rational(1));
  return b.build();
}

Element Element::monomial(const Graph& g, Field f, const Path& alpha, const Path& beta,
                          const Rational& k) {
  ElementBuilder b(g, f);
  b.add_monomial(alpha, beta, k);
  return b.build();
}

bool Element::is_homogeneous() const {
  if (mons_.empty()) return true;
  std::int64_t d = monomial_degree(mons_.front());
  for (const auto& m : mons_)
    if (monomial_degree(m) != d) return false;
  return true;
}

std::optional<std::int64_t> Element::degree() const {
  if (mons_.empty() || !is_homogeneous()) return std::nullopt;
  return monomial_degree(mons_.front());
}

bool Element::operator==(const Element& other) const {
  if (g_ != other.g_) throw Error("graph mismatch");
  if (!(field_ == other.field_)) throw Error("field mismatch");
  if (mons_.size() != other.mons_.size()) return false;
  for (std::size_t i = 0; i < mons_.size(); ++i) {
    if (!(mons_[i].alpha == other.mons_[i].alpha)) return false;
    if (!(mons_[i].beta == other.mons_[i].beta)) return false;
    if (mons_[i].coeff != other.mons_[i].coeff) return false;
  }
  return true;
}

// ---- arithmetic ----

namespace {

void check_compatible(const Element& a, const Element& b) {
  if (&a.graph() != &b.graph()) throw Error("graph mismatch");
  if (!(a.field() == b.field())) throw Error("field mismatch");
}

}  // namespace

Element add(const Element& a, const Element& b) {
  check_compatible(a, b);
  ElementBuilder out(a.graph(), a.field());
  out.add(a, Rational(1));
  out.add(b, Rational(1));
  return out.build();
}

Element subtract(const Element& a, const Element& b) {
  check_compatible(a, b);
  ElementBuilder out(a.graph(), a.field());
  out.add(a, Rational(1));
  out.add(b, Rational(-1));
  return out.build();
}

Element scale(const Element& a, const Rational& k) {
  ElementBuilder out(a.graph(), a.field());
  out.add(a, k);
  return out.build();
}

Element multiply(const Element& a, const Element& b) {
  check_compatible(a, b);
  const Graph& g = a.graph();
  ElementBuilder out(g, a.field());
  for (const auto& m1 : a.monomials()) {
    for (const auto& m2 : b.monomials()) {
      // (a1 b1^*)(a2 b2^*): absorb b1^* against a2 edge by edge (CK-1)
      const Path& b1 = m1.beta;
      const Path& a2 = m2.alpha;
      if (b1.source() != a2.source()) continue;
      const std::size_t t = std::min(b1.length(), a2.length());
      bool zero = false;
      for (std::size_t i = 0; i < t; ++i) {
        if (!(b1.edges()[i] == a2.edges()[i])) { zero = true; break; }
      }
      if (zero) continue;
      Rational c = m1.coeff * m2.coeff;
      if (b1.length() <= a2.length()) {
        Path rest = a2.suffix(g, b1.length());
        out.add_monomial(m1.alpha.concat(g, rest), m2.beta, c);
      } else {
        Path rest = b1.suffix(g, a2.length());
        out.add_monomial(m1.alpha, m2.beta.concat(g, rest), c);
      }
    }
  }
  return out.build();
}

Element star(const Element& a) {
  ElementBuilder out(a.graph(), a.field());
  for (const auto& m : a.monomials()) out.add_reduced(m.beta, m.alpha, m.coeff);
  return out.build();
}

std::map<std::int64_t, Element> homogeneous_components(const Element& a) {
  std::map<std::int64_t, ElementBuilder> parts;
  for (const auto& m : a.monomials()) {
    auto [it, ignore] =
        parts.try_emplace(monomial_degree(m), a.graph(), a.field());
    it->second.add_reduced(m.alpha, m.beta, m.coeff);
  }
  std::map<std::int64_t, Element> out;
  for (auto& [d, b] : parts) out.emplace(d, b.build());
  return out;
}

Element local_unit(const Element& a) {
  std::set<int> vs;
  for (const auto& m : a.monomials()) {
    vs.insert(m.alpha.source());
    vs.insert(m.beta.source());
  }
  ElementBuilder out(a.graph(), a.field());
  for (int v : vs) {
    Path p = Path::at_vertex(a.graph(), v);
    out.add_reduced(p, p, Rational(1));
  }
  return out.build();
}

// ---- word rewriting ----

namespace {

int s_of(const Graph& g, const Gen& x) {
  switch (x.kind) {
    case Gen::kVertex: return x.vertex;
    case Gen::kEdge: return g.edge(x.inst.edge).src;
    case Gen::kGhost: return g.edge(x.inst.edge).rng;
  }
  return -1;
}

int r_of(const Graph& g, const Gen& x) {
  switch (x.kind) {
    case Gen::kVertex: return x.vertex;
    case Gen::kEdge: return g.edge(x.inst.edge).rng;
    case Gen::kGhost: return g.edge(x.inst.edge).src;
  }
  return -1;
}

bool is_redex(const Graph& g, const std::vector<Gen>& w, std::size_t i) {
  const Gen& x = w[i];
  const Gen& y = w[i + 1];
  if (r_of(g, x) != s_of(g, y)) return true;                       // orthogonality
  if (x.kind == Gen::kVertex || y.kind == Gen::kVertex) return true;  // unit absorption
  if (x.kind == Gen::kGhost && y.kind == Gen::kEdge) return true;  // CK-1
  if (x.kind == Gen::kEdge && y.kind == Gen::kGhost && x.inst == y.inst &&
      is_special(g, x.inst))
    return true;  // CK-2
  return false;
}

struct PendingWord {
  Rational coeff;
  std::vector<Gen> word;
};

// Applies the redex at position i; children carry the parent coefficient.
std::vector<PendingWord> apply_redex(const Graph& g, const Field& f,
                                     const PendingWord& pw, std::size_t i) {
  const std::vector<Gen>& w = pw.word;
  const Gen& x = w[i];
  const Gen& y = w[i + 1];
  auto splice = [&](std::vector<Gen> middle) {
    std::vector<Gen> out(w.begin(), w.begin() + i);
    out.insert(out.end(), middle.begin(), middle.end());
    out.insert(out.end(), w.begin() + i + 2, w.end());
    return out;
  };

  if (r_of(g, x) != s_of(g, y)) return {};
  if (x.kind == Gen::kVertex) {
    std::vector<Gen> out(w.begin(), w.begin() + i);
    out.insert(out.end(), w.begin() + i + 1, w.end());
    return {{pw.coeff, std::move(out)}};
  }
  if (y.kind == Gen::kVertex) {
    std::vector<Gen> out(w.begin(), w.begin() + i + 1);
    out.insert(out.end(), w.begin() + i + 2, w.end());
    return {{pw.coeff, std::move(out)}};
  }
  if (x.kind == Gen::kGhost && y.kind == Gen::kEdge) {
    if (x.inst == y.inst) return {{pw.coeff, splice({Gen::v(g.edge(x.inst.edge).rng)})}};
    return {};  // e^* f = 0
  }
  if (x.kind == Gen::kEdge && y.kind == Gen::kGhost && x.inst == y.inst &&
      is_special(g, x.inst)) {
    const int v = g.edge(x.inst.edge).src;
    std::vector<PendingWord> out;
    out.push_back({pw.coeff, splice({Gen::v(v)})});
    for (const auto& e : out_instances(g, v)) {
      if (e == x.inst) continue;
      out.push_back({f.canon(-pw.coeff), splice({Gen::e(e), Gen::ghost(e)})});
    }
    return out;
  }
  throw InternalError("apply_redex called on a non-redex");
}

void add_irreducible_word(ElementBuilder& b, const Graph& g, const PendingWord& pw) {
  const std::vector<Gen>& w = pw.word;
  if (w.size() == 1 && w[0].kind == Gen::kVertex) {
    Path p = Path::at_vertex(g, w[0].vertex);
    b.add_reduced(p, p, pw.coeff);
    return;
  }
  std::vector<EdgeInstance> alpha;
  std::vector<EdgeInstance> beta;  // collected in reverse
  for (const Gen& x : w) {
    if (x.kind == Gen::kEdge) {
      if (!beta.empty()) throw InternalError("edge after ghost in irreducible word");
      alpha.push_back(x.inst);
    } else if (x.kind == Gen::kGhost) {
      beta.push_back(x.inst);
    } else {
      throw InternalError("vertex generator in a length>1 irreducible word");
    }
  }
  std::reverse(beta.begin(), beta.end());
  const bool alpha_empty = alpha.empty();
  const bool beta_empty = beta.empty();
  Path a = alpha_empty ? Path() : Path::of(g, std::move(alpha));
  Path bb = beta_empty ? Path() : Path::of(g, std::move(beta));
  if (alpha_empty) a = Path::at_vertex(g, bb.range());  // pure ghost word
  if (beta_empty) bb = Path::at_vertex(g, a.range());
  b.add_monomial(a, bb, pw.coeff);
}

void validate_gen(const Graph& g, const Gen& x) {
  if (x.kind == Gen::kVertex) {
    if (x.vertex < 0 || x.vertex >= g.vertex_count())
      throw Error("unknown vertex index " + std::to_string(x.vertex));
  } else {
    g.check_instance(x.inst);
  }
}

}  // namespace

Element normalize(const RawExpr& raw, const Graph& g, const Field& f,
                  RewriteStrategy strategy, std::mt19937_64* rng) {
  for (const auto& t : raw.terms)
    for (const auto& x : t.word) validate_gen(g, x);

  ElementBuilder builder(g, f);
  std::vector<PendingWord> pending;
  for (const auto& t : raw.terms) {
    Rational c = f.canon(t.coeff);
    if (f.is_zero(c)) continue;
    if (t.word.empty()) throw Error("empty word in raw expression");
    pending.push_back({c, t.word});
  }

  if (strategy == RewriteStrategy::kDeterministic) {
    while (!pending.empty()) {
      PendingWord pw = std::move(pending.back());
      pending.pop_back();
      std::size_t redex = pw.word.size();
      for (std::size_t i = 0; i + 1 < pw.word.size(); ++i) {
        if (is_redex(g, pw.word, i)) { redex = i; break; }
      }
      if (redex == pw.word.size()) {
        add_irreducible_word(builder, g, pw);
        continue;
      }
      for (auto& child : apply_redex(g, f, pw, redex)) pending.push_back(std::move(child));
    }
  } else {
    if (!rng) throw Error("randomized strategy needs an rng");
    while (!pending.empty()) {
      std::size_t wi = (*rng)() % pending.size();
      std::vector<std::size_t> redexes;
      for (std::size_t i = 0; i + 1 < pending[wi].word.size(); ++i)
        if (is_redex(g, pending[wi].word, i)) redexes.push_back(i);
      if (redexes.empty()) {
        add_irreducible_word(builder, g, pending[wi]);
        pending[wi] = std::move(pending.back());
        pending.pop_back();
        continue;
      }
      std::size_t ri = redexes[(*rng)() % redexes.size()];
      PendingWord pw = std::move(pending[wi]);
      pending[wi] = std::move(pending.back());
      pending.pop_back();
      for (auto& child : apply_redex(g, f, pw, ri)) pending.push_back(std::move(child));
    }
  }
  return builder.build();
}

// ---- literals ----

namespace {

bool looks_like_rational(const std::string& t) {
  std::size_t i = (t[0] == '+' || t[0] == '-') ? 1 : 0;
  if (i >= t.size()) return false;
  bool digits = false, slash = false;
  for (; i < t.size(); ++i) {
    if (std::isdigit(static_cast<unsigned char>(t[i]))) { digits = true; continue; }
    if (t[i] == '/' && !slash && digits) { slash = true; digits = false; continue; }
    return false;
  }
  return digits;
}

}  // namespace

RawExpr parse_raw_expr(const std::string& text, const Graph& g) {
  std::vector<std::string> tokens;
  {
    std::istringstream in(text);
    std::string t;
    while (in >> t) tokens.push_back(t);
  }
  RawExpr expr;
  std::size_t i = 0;
  Rational sign(1);
  bool first = true;
  while (i < tokens.size()) {
    if (!first) {
      if (tokens[i] == "+") { sign = 1; ++i; }
      else if (tokens[i] == "-") { sign = -1; ++i; }
      else throw ParseError("expected '+' or '-' before '" + tokens[i] + "'");
      if (i >= tokens.size()) throw ParseError("dangling sign at end of element literal");
    }
    first = false;
    Rational coeff = sign;
    if (looks_like_rational(tokens[i])) {
      Rational q = parse_rational(tokens[i]);
      if (i + 1 < tokens.size() && tokens[i + 1] == "*") {
        coeff *= q;
        i += 2;
      } else if (sgn(q) == 0 && (i + 1 == tokens.size() || tokens[i + 1] == "+" ||
                                 tokens[i + 1] == "-")) {
        ++i;       // a bare 0 term
        sign = 1;
        continue;
      } else {
        throw ParseError("scalar '" + tokens[i] + "' must be followed by '*'");
      }
    }
    std::vector<Gen> word;
    while (i < tokens.size() && tokens[i] != "+" && tokens[i] != "-") {
      std::string t = tokens[i];
      bool ghost = false;
      if (!t.empty() && t.back() == '^') { ghost = true; t.pop_back(); }
      if (t.empty()) throw ParseError("malformed factor '" + tokens[i] + "'");
      if (!ghost && t.find('#') == std::string::npos) {
        if (auto v = g.find_vertex(t)) {
          word.push_back(Gen::v(*v));
          ++i;
          continue;
        }
      }
      EdgeInstance inst = g.parse_instance(t);
      word.push_back(ghost ? Gen::ghost(inst) : Gen::e(inst));
      ++i;
    }
    if (word.empty()) throw ParseError("term without factors in element literal");
    expr.terms.push_back({coeff, std::move(word)});
    sign = 1;
  }
  return expr;
}

Element parse_element(const std::string& text, const Graph& g, const Field& f) {
  return normalize(parse_raw_expr(text, g), g, f);
}

std::string monomial_name(const Graph& g, const Monomial& m) {
  std::vector<std::string> factors;
  for (const auto& e : m.alpha.edges()) factors.push_back(g.instance_name(e));
  for (auto it = m.beta.edges().rbegin(); it != m.beta.edges().rend(); ++it)
    factors.push_back(g.instance_name(*it) + "^");
  if (factors.empty()) factors.push_back(g.vertex_name(m.alpha.source()));
  std::string out;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) out += " ";
    out += factors[i];
  }
  return out;
}

std::string to_string(const Element& a) {
  if (a.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& m : a.monomials()) {
    if (!first) out += " + ";
    first = false;
    if (m.coeff != 1) out += to_string(m.coeff) + " * ";
    out += monomial_name(a.graph(), m);
  }
  return out;
}

}  // namespace lpa
