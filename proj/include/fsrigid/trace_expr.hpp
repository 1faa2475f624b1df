#pragma once

// Polynomial-coefficient linear combinations of trace words, the pointwise
// integrand algebra for the special eigenfunction.

#include "fsrigid/ratfunc.hpp"
#include "fsrigid/schur_selberg.hpp"

#include <array>
#include <map>
#include <string>

namespace fsrigid {

/// Numeric values of tr(U^{-1}), tr(U^{-2}), tr(U^{-3}) at a chart point.
using TraceValues = std::array<double, 3>;

class TraceExpr {
 public:
  using Terms = std::map<TraceWord, MPoly>;

  TraceExpr() = default;
  TraceExpr(MPoly constant);  // NOLINT(google-explicit-constructor)
  TraceExpr(long constant) : TraceExpr(MPoly(constant)) {}  // NOLINT(google-explicit-constructor)

  /// tr(U^{-k}), k in {1, 2, 3}.
  static TraceExpr tr_u(int k);
  /// tr(Q^{-k}) eliminated through tr(Q^{-k}) = (n - m) + tr(U^{-k}).
  static TraceExpr tr_q(int k);
  /// f = m^2 - (n + m) tr(U^{-1}) for the special gamma.
  static TraceExpr f();

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;

  TraceExpr& operator+=(const TraceExpr& o);
  TraceExpr& operator-=(const TraceExpr& o);
  TraceExpr& operator*=(const MPoly& c);

  friend TraceExpr operator+(TraceExpr a, const TraceExpr& b) { return a += b; }
  friend TraceExpr operator-(TraceExpr a, const TraceExpr& b) { return a -= b; }
  friend TraceExpr operator-(TraceExpr a) { return a *= MPoly(-1); }
  friend TraceExpr operator*(TraceExpr a, const MPoly& c) { return a *= c; }
  friend TraceExpr operator*(const MPoly& c, TraceExpr a) { return a *= c; }
  /// Throws UnsupportedDegree if the product exceeds degree 3.
  friend TraceExpr operator*(const TraceExpr& a, const TraceExpr& b);
  friend bool operator==(const TraceExpr& a, const TraceExpr& b) { return a.terms_ == b.terms_; }

  double evaluate(int m0, int n0, const TraceValues& traces) const;

  /// Normalized integral, over integral_denominator(3).
  RatFunc integrate() const;

  std::string to_string() const;

 private:
  void add(const TraceWord& w, const MPoly& c);

  Terms terms_;
};

}  // namespace fsrigid
