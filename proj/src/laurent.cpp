#include "plumbline/laurent.hpp"

#include <sstream>

#include "plumbline/errors.hpp"

namespace plumbline {

LaurentPoly LaurentPoly::monomial(std::int64_t coeff, int exponent) {
  LaurentPoly p;
  p.set(exponent, coeff);
  return p;
}

std::int64_t LaurentPoly::coeff(int exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? 0 : it->second;
}

int LaurentPoly::min_exponent() const {
  if (terms_.empty()) throw InputError("min_exponent of zero polynomial");
  return terms_.begin()->first;
}

int LaurentPoly::max_exponent() const {
  if (terms_.empty()) throw InputError("max_exponent of zero polynomial");
  return terms_.rbegin()->first;
}

void LaurentPoly::set(int exponent, std::int64_t value) {
  if (value == 0)
    terms_.erase(exponent);
  else
    terms_[exponent] = value;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.terms_) set(e, coeff(e) + c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.terms_) set(e, coeff(e) - c);
  return *this;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  LaurentPoly out = *this;
  out += o;
  return out;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const {
  LaurentPoly out = *this;
  out -= o;
  return out;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  LaurentPoly out;
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) out.set(e1 + e2, out.coeff(e1 + e2) + c1 * c2);
  return out;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly out;
  for (const auto& [e, c] : terms_) out.terms_[e] = -c;
  return out;
}

LaurentPoly LaurentPoly::pow(unsigned n) const {
  LaurentPoly out = one();
  LaurentPoly base = *this;
  while (n > 0) {
    if (n & 1) out = out * base;
    base = base * base;
    n >>= 1;
  }
  return out;
}

LaurentPoly LaurentPoly::invert_variable() const {
  LaurentPoly out;
  for (const auto& [e, c] : terms_) out.terms_[-e] = c;
  return out;
}

LaurentPoly LaurentPoly::shifted(std::int64_t coeff, int delta) const {
  LaurentPoly out;
  for (const auto& [e, c] : terms_) out.set(e + delta, c * coeff);
  return out;
}

namespace {

void append_term(std::ostringstream& os, bool first, std::int64_t c, const std::string& body) {
  if (first) {
    if (c < 0) os << "-";
  } else {
    os << (c < 0 ? " - " : " + ");
  }
  std::int64_t mag = c < 0 ? -c : c;
  os << mag << "*" << body;
}

}  // namespace

std::string LaurentPoly::to_string_int(const std::string& var) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    append_term(os, first, c, var + "^" + std::to_string(e));
    first = false;
  }
  return os.str();
}

std::string LaurentPoly::to_string_half(const std::string& var) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    append_term(os, first, c, var + "^(" + std::to_string(e) + "/2)");
    first = false;
  }
  return os.str();
}

}  // namespace plumbline
