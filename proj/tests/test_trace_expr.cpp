#include "closed_forms.hpp"
#include "doctest.h"
#include "fsrigid/trace_expr.hpp"

#include <cmath>

using namespace fsrigid;

TEST_CASE("f expands to m^2 - (n+m) tr(U^-1)") {
  TraceExpr f = TraceExpr::f();
  CHECK(f.degree() == 1);
  CHECK(f.terms().at(TraceWord{}) == MPoly::m() * MPoly::m());
  CHECK(f.terms().at(TraceWord{1, 0, 0}) == -(MPoly::m() + MPoly::n()));
}

TEST_CASE("integral of f cubed") {
  TraceExpr f = TraceExpr::f();
  RatFunc i = (f * f * f).integrate();
  CHECK(rf_equal(i, closed_forms::int_f_cubed()));
  CHECK(rf_eval(i, 2, 3) == make_rational(-1, 7));
  CHECK(rf_eval(i, 2, 2) == 0);
  CHECK(rf_eval(i, 3, 3) == 0);
}

TEST_CASE("lower moments of f") {
  TraceExpr f = TraceExpr::f();
  // f is an eigenfunction orthogonal to constants
  CHECK(f.integrate().is_zero());
  CHECK(rf_equal(TraceExpr(1).integrate(), RatFunc(1)));
}

TEST_CASE("product above degree 3 is rejected") {
  TraceExpr t2 = TraceExpr::tr_u(2);
  CHECK_THROWS_AS(t2 * t2, UnsupportedDegree);
  CHECK_THROWS_AS(TraceExpr::tr_u(4), UnsupportedDegree);
}

TEST_CASE("Q elimination and numeric evaluation") {
  TraceValues t{0.7, 0.4, 0.3};
  const int m0 = 2, n0 = 3;
  for (int k = 1; k <= 3; ++k) {
    CHECK(std::abs(TraceExpr::tr_q(k).evaluate(m0, n0, t) - ((n0 - m0) + t[k - 1])) < 1e-14);
  }
  TraceExpr f = TraceExpr::f();
  double fv = m0 * m0 - (m0 + n0) * t[0];
  CHECK(std::abs((f * f * f).evaluate(m0, n0, t) - fv * fv * fv) < 1e-12);
}

TEST_CASE("linear algebra of expressions") {
  TraceExpr a = TraceExpr::tr_u(1) * MPoly::m() + TraceExpr(3);
  TraceExpr b = TraceExpr::tr_u(2);
  CHECK((a + b) - b == a);
  CHECK((a - a).is_zero());
  CHECK((a * MPoly(0)).is_zero());
  CHECK(rf_equal((a + b).integrate(), a.integrate() + b.integrate()));
}
