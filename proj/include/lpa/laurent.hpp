#ifndef LPA_LAURENT_HPP
#define LPA_LAURENT_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lpa/rational.hpp"

namespace lpa {

/// Sparse exact-rational Laurent polynomial in one variable.
class LaurentPoly {
public:
  LaurentPoly() = default;

  static LaurentPoly term(std::int64_t exp, const Rational& c);
  static LaurentPoly constant(const Rational& c) { return term(0, c); }

  bool is_zero() const { return coeffs_.empty(); }
  const std::map<std::int64_t, Rational>& coeffs() const { return coeffs_; }

  void add_term(std::int64_t exp, const Rational& c, const Field& f);
  LaurentPoly add(const LaurentPoly& o, const Field& f) const;
  LaurentPoly mul(const LaurentPoly& o, const Field& f) const;
  /// x -> x^{-1}.
  LaurentPoly invert_variable() const;

  /// True when the polynomial is 0 or a single term x^e.
  bool is_monomial() const { return coeffs_.size() <= 1; }
  std::int64_t monomial_exponent() const { return coeffs_.begin()->first; }

  bool operator==(const LaurentPoly&) const = default;

  std::string str() const;

private:
  std::map<std::int64_t, Rational> coeffs_;
};

/// Square matrix over K (period 0) or K[x^d, x^{-d}] (period d > 0); every
/// nonzero exponent appearing in an entry must be a multiple of the period.
struct LaurentMatrix {
  int size = 0;
  std::int64_t period = 0;
  std::vector<LaurentPoly> entries;  // row-major, size*size

  static LaurentMatrix zero(int n, std::int64_t period);
  static LaurentMatrix identity(int n, std::int64_t period);

  const LaurentPoly& at(int i, int j) const { return entries[i * size + j]; }
  LaurentPoly& at(int i, int j) { return entries[i * size + j]; }

  LaurentMatrix add(const LaurentMatrix& o, const Field& f) const;
  LaurentMatrix mul(const LaurentMatrix& o, const Field& f) const;
  LaurentMatrix transpose() const;
  /// Entrywise x -> x^{-1} (the star-compatibility substitution).
  LaurentMatrix invert_variable() const;

  bool is_zero() const;
  /// Checks the exponent-divisibility invariant.
  bool exponents_divisible() const;

  bool operator==(const LaurentMatrix&) const = default;
};

}  // namespace lpa

#endif
