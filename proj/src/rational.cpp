#include "lpa/rational.hpp"

namespace lpa {

Field Field::prime(unsigned long p) {
  mpz_class m(static_cast<unsigned long>(p));
  if (p < 2 || mpz_probab_prime_p(m.get_mpz_t(), 32) == 0) {
    throw Error("field characteristic must be prime, got " + std::to_string(p));
  }
  Field f;
  f.p_ = p;
  return f;
}

Field Field::parse(const std::string& spec) {
  if (spec == "q" || spec == "Q") return rationals();
  if (spec.rfind("gf:", 0) == 0) {
    const std::string digits = spec.substr(3);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
      throw ParseError("malformed field spec '" + spec + "'");
    }
    return prime(std::stoul(digits));
  }
  throw ParseError("unknown field spec '" + spec + "' (want q or gf:<p>)");
}

Rational Field::canon(const Rational& q) const {
  if (p_ == 0) {
    Rational r = q;
    r.canonicalize();
    return r;
  }
  const mpz_class p(static_cast<unsigned long>(p_));
  mpz_class den = q.get_den();
  mpz_class inv;
  if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t()) == 0) {
    throw Error("denominator not invertible mod " + std::to_string(p_));
  }
  mpz_class num = q.get_num() * inv;
  mpz_class res = num % p;
  if (res < 0) res += p;
  return Rational(res);
}

std::string to_string(const Rational& q) {
  return q.get_str();
}

Rational parse_rational(const std::string& text) {
  try {
    Rational q(text);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw ParseError("malformed rational '" + text + "'");
  }
}

}  // namespace lpa
