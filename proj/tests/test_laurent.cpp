#include <doctest.h>

#include "plumbline/errors.hpp"
#include "plumbline/laurent.hpp"

using namespace plumbline;

TEST_CASE("arithmetic keeps no zero coefficients") {
  LaurentPoly a = LaurentPoly::monomial(2, 3) + LaurentPoly::monomial(-1, 0);
  LaurentPoly b = LaurentPoly::monomial(-2, 3) + LaurentPoly::monomial(5, -2);
  LaurentPoly s = a + b;
  CHECK(s.coeff(3) == 0);
  CHECK(s.terms().count(3) == 0);
  CHECK(s.coeff(0) == -1);
  CHECK(s.coeff(-2) == 5);
  CHECK((a - a).is_zero());
}

TEST_CASE("multiplication and powers") {
  // (x + x^-1)^2 = x^2 + 2 + x^-2
  LaurentPoly x = LaurentPoly::monomial(1, 1) + LaurentPoly::monomial(1, -1);
  LaurentPoly sq = x * x;
  CHECK(sq.coeff(2) == 1);
  CHECK(sq.coeff(0) == 2);
  CHECK(sq.coeff(-2) == 1);
  CHECK(x.pow(2) == sq);
  CHECK(x.pow(0) == LaurentPoly::one());
}

TEST_CASE("invert_variable flips exponents") {
  LaurentPoly p = LaurentPoly::monomial(3, 5) + LaurentPoly::monomial(-1, -2);
  LaurentPoly q = p.invert_variable();
  CHECK(q.coeff(-5) == 3);
  CHECK(q.coeff(2) == -1);
  CHECK(q.invert_variable() == p);
}

TEST_CASE("shifted scales and shifts") {
  LaurentPoly p = LaurentPoly::monomial(1, 0) + LaurentPoly::monomial(2, 4);
  LaurentPoly q = p.shifted(-3, -1);
  CHECK(q.coeff(-1) == -3);
  CHECK(q.coeff(3) == -6);
}

TEST_CASE("text forms") {
  CHECK(LaurentPoly::zero().to_string_int("A") == "0");
  CHECK(LaurentPoly::zero().to_string_half("t") == "0");
  LaurentPoly p = LaurentPoly::monomial(-1, -4) + LaurentPoly::monomial(-1, 4);
  CHECK(p.to_string_int("A") == "-1*A^-4 - 1*A^4");
  LaurentPoly j = LaurentPoly::monomial(-1, 1) + LaurentPoly::monomial(-1, 5);
  CHECK(j.to_string_half("t") == "-1*t^(1/2) - 1*t^(5/2)");
}

TEST_CASE("min and max exponent, zero polynomial throws") {
  LaurentPoly p = LaurentPoly::monomial(1, -7) + LaurentPoly::monomial(1, 3);
  CHECK(p.min_exponent() == -7);
  CHECK(p.max_exponent() == 3);
  CHECK_THROWS_AS(LaurentPoly::zero().min_exponent(), InputError);
}
