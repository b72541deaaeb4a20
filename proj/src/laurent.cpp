#include "lpa/laurent.hpp"

#include <sstream>

namespace lpa {

LaurentPoly LaurentPoly::term(std::int64_t exp, const Rational& c) {
  LaurentPoly p;
  if (sgn(c) != 0) p.coeffs_[exp] = c;
  return p;
}

void LaurentPoly::add_term(std::int64_t exp, const Rational& c, const Field& f) {
  auto it = coeffs_.find(exp);
  if (it == coeffs_.end()) {
    Rational v = f.canon(c);
    if (!f.is_zero(v)) coeffs_.emplace(exp, v);
  } else {
    it->second = f.canon(it->second + c);
    if (f.is_zero(it->second)) coeffs_.erase(it);
  }
}

LaurentPoly LaurentPoly::add(const LaurentPoly& o, const Field& f) const {
  LaurentPoly out = *this;
  for (const auto& [e, c] : o.coeffs_) out.add_term(e, c, f);
  return out;
}

LaurentPoly LaurentPoly::mul(const LaurentPoly& o, const Field& f) const {
  LaurentPoly out;
  for (const auto& [e1, c1] : coeffs_)
    for (const auto& [e2, c2] : o.coeffs_) out.add_term(e1 + e2, c1 * c2, f);
  return out;
}

LaurentPoly LaurentPoly::invert_variable() const {
  LaurentPoly out;
  for (const auto& [e, c] : coeffs_) out.coeffs_[-e] = c;
  return out;
}

std::string LaurentPoly::str() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : coeffs_) {
    if (!first) out << " + ";
    first = false;
    if (e == 0) {
      out << to_string(c);
    } else {
      if (c != 1) out << to_string(c) << "*";
      out << "x^" << e;
    }
  }
  return out.str();
}

LaurentMatrix LaurentMatrix::zero(int n, std::int64_t period) {
  LaurentMatrix m;
  m.size = n;
  m.period = period;
  m.entries.assign(static_cast<std::size_t>(n) * n, LaurentPoly{});
  return m;
}

LaurentMatrix LaurentMatrix::identity(int n, std::int64_t period) {
  LaurentMatrix m = zero(n, period);
  for (int i = 0; i < n; ++i) m.at(i, i) = LaurentPoly::constant(Rational(1));
  return m;
}

LaurentMatrix LaurentMatrix::add(const LaurentMatrix& o, const Field& f) const {
  if (size != o.size || period != o.period) throw Error("matrix shape mismatch");
  LaurentMatrix out = zero(size, period);
  for (std::size_t i = 0; i < entries.size(); ++i)
    out.entries[i] = entries[i].add(o.entries[i], f);
  return out;
}

LaurentMatrix LaurentMatrix::mul(const LaurentMatrix& o, const Field& f) const {
  if (size != o.size || period != o.period) throw Error("matrix shape mismatch");
  LaurentMatrix out = zero(size, period);
  for (int i = 0; i < size; ++i) {
    for (int k = 0; k < size; ++k) {
      const LaurentPoly& a = at(i, k);
      if (a.is_zero()) continue;
      for (int j = 0; j < size; ++j) {
        const LaurentPoly& b = o.at(k, j);
        if (b.is_zero()) continue;
        out.at(i, j) = out.at(i, j).add(a.mul(b, f), f);
      }
    }
  }
  return out;
}

LaurentMatrix LaurentMatrix::transpose() const {
  LaurentMatrix out = zero(size, period);
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j) out.at(j, i) = at(i, j);
  return out;
}

LaurentMatrix LaurentMatrix::invert_variable() const {
  LaurentMatrix out = zero(size, period);
  for (std::size_t i = 0; i < entries.size(); ++i)
    out.entries[i] = entries[i].invert_variable();
  return out;
}

bool LaurentMatrix::is_zero() const {
  for (const auto& e : entries)
    if (!e.is_zero()) return false;
  return true;
}

bool LaurentMatrix::exponents_divisible() const {
  for (const auto& e : entries)
    for (const auto& [exp, c] : e.coeffs())
      if (period == 0 ? exp != 0 : exp % period != 0) return false;
  return true;
}

}  // namespace lpa
