#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace plumbline {

/// Laurent polynomial with exact 64-bit integer coefficients in one formal
/// variable. The exponent unit is context-dependent: bracket values live in
/// integer powers of A, Jones values in integer powers of t^(1/2)
/// (t = A^-4). No zero coefficients are stored.
class LaurentPoly {
public:
  LaurentPoly() = default;

  static LaurentPoly zero() { return {}; }
  static LaurentPoly one() { return monomial(1, 0); }
  static LaurentPoly monomial(std::int64_t coeff, int exponent);

  bool is_zero() const { return terms_.empty(); }
  std::int64_t coeff(int exponent) const;
  int min_exponent() const;
  int max_exponent() const;
  const std::map<int, std::int64_t>& terms() const { return terms_; }

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  LaurentPoly operator-() const;
  bool operator==(const LaurentPoly& o) const { return terms_ == o.terms_; }
  bool operator!=(const LaurentPoly& o) const { return terms_ != o.terms_; }
  bool operator<(const LaurentPoly& o) const { return terms_ < o.terms_; }

  LaurentPoly pow(unsigned n) const;

  /// Substitute x -> x^-1 (negate every exponent).
  LaurentPoly invert_variable() const;

  /// Shift all exponents by delta and scale by coeff.
  LaurentPoly shifted(std::int64_t coeff, int delta) const;

  /// `coeff*A^e` terms sorted by exponent.
  std::string to_string_int(const std::string& var) const;

  /// `coeff*t^(p/2)` terms sorted by exponent; the denominator is always
  /// written so half-integer exponents stay unambiguous.
  std::string to_string_half(const std::string& var) const;

private:
  void set(int exponent, std::int64_t value);
  std::map<int, std::int64_t> terms_;
};

}  // namespace plumbline
