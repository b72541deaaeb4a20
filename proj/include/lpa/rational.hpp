#ifndef LPA_RATIONAL_HPP
#define LPA_RATIONAL_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace lpa {

using Rational = mpq_class;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Input that does not conform to a file format (CLI exit 1).
struct ParseError : Error {
  using Error::Error;
};

/// A precondition refusal: the input is well formed but the operation does
/// not apply to it (CLI exit 2).
struct PreconditionError : Error {
  using Error::Error;
};

/// A broken internal invariant, e.g. the two decision routes disagree.
struct InternalError : Error {
  using Error::Error;
};

/// Coefficient field: exact rationals (default) or a prime field GF(p).
/// GF(p) values are stored as canonical residues 0..p-1 with denominator 1.
class Field {
public:
  Field() = default;

  static Field rationals() { return Field{}; }

  static Field prime(unsigned long p);

  /// Parses "q" or "gf:<p>".
  static Field parse(const std::string& spec);

  bool is_rationals() const { return p_ == 0; }
  unsigned long characteristic() const { return p_; }

  /// Reduces a raw rational to the canonical field representative.
  Rational canon(const Rational& q) const;

  bool is_zero(const Rational& q) const { return sgn(q) == 0; }

  std::string name() const {
    return p_ == 0 ? "q" : "gf:" + std::to_string(p_);
  }

  bool operator==(const Field&) const = default;

private:
  unsigned long p_ = 0;  // 0 encodes the rationals
};

std::string to_string(const Rational& q);
Rational parse_rational(const std::string& text);

}  // namespace lpa

#endif
