#pragma once

// Exact bivariate polynomials and rational functions in the indeterminates
// m and n over arbitrary-precision rationals.

#include <gmpxx.h>

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace fsrigid {

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
using BigRational = mpq_class;

BigRational make_rational(long num, long den = 1);
std::string to_string(const BigRational& q);

class DivisionByZeroFunction : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Exponent pair (deg_m, deg_n).
struct Monomial {
  int deg_m = 0;
  int deg_n = 0;

  int total() const { return deg_m + deg_n; }
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Graded-lex order: higher total degree first, then higher m-degree.
struct GradedLexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.total() != b.total()) return a.total() > b.total();
    return a.deg_m > b.deg_m;
  }
};

class MPoly {
 public:
  using Terms = std::map<Monomial, BigRational, GradedLexGreater>;

  MPoly() = default;
  MPoly(long c);  // NOLINT(google-explicit-constructor)
  MPoly(const BigRational& c);  // NOLINT(google-explicit-constructor)

  static MPoly m();
  static MPoly n();
  static MPoly monomial(BigRational coeff, int deg_m, int deg_n);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Coefficient of m^a n^b (zero if absent).
  BigRational coeff(int deg_m, int deg_n) const;
  int total_degree() const;
  /// Leading term in graded-lex order; requires !is_zero().
  const std::pair<const Monomial, BigRational>& leading() const;

  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  MPoly& operator*=(const MPoly& o);
  MPoly& operator*=(const BigRational& c);

  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  friend MPoly operator-(MPoly a);
  friend bool operator==(const MPoly& a, const MPoly& b);

  MPoly pow(unsigned k) const;

  /// Exact quotient a / b. Throws std::domain_error if b does not divide a.
  static MPoly exact_div(const MPoly& a, const MPoly& b);

  BigRational eval(const BigRational& m0, const BigRational& n0) const;
  double eval(double m0, double n0) const;

  /// Substitute m -> n and n -> m.
  MPoly swapped() const;
  /// Substitute m -> m0, leaving a polynomial in n.
  MPoly at_m(const BigRational& m0) const;

  /// "coeff*m^a*n^b" terms in graded-lex order joined by " + ", or "0".
  std::string to_string() const;
  static MPoly parse(std::string_view text);

 private:
  void add_term(const Monomial& mono, const BigRational& c);

  Terms terms_;
};

/// Polynomial addition, subtraction and multiplication.
enum class PolyOp { add, sub, mul };
MPoly poly_arith(PolyOp op, const MPoly& a, const MPoly& b);

/// num / den with den != 0. The representation is not canonical; equality is
/// semantic (cross-multiplication).
class RatFunc {
 public:
  RatFunc() : num_(0), den_(1) {}
  RatFunc(MPoly num);  // NOLINT(google-explicit-constructor)
  RatFunc(long c) : RatFunc(MPoly(c)) {}  // NOLINT(google-explicit-constructor)
  RatFunc(MPoly num, MPoly den);

  const MPoly& num() const { return num_; }
  const MPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator/=(const RatFunc& o);

  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  friend RatFunc operator-(const RatFunc& a) { return RatFunc(-a.num_, a.den_); }

  /// Exact value at integer (m0, n0). Throws PoleError if den vanishes there.
  BigRational eval(long m0, long n0) const;
  BigRational eval(const BigRational& m0, const BigRational& n0) const;

  /// Same function with content cleared: the denominator is an integer
  /// polynomial with unit content and positive graded-lex leading coefficient.
  RatFunc normalized() const;

  /// Substitute m -> m0. Throws PoleError if the denominator becomes zero.
  RatFunc at_m(const BigRational& m0) const;

  /// Canonical printing "num_terms / den_terms" of normalized().
  std::string to_string() const;
  static RatFunc parse(std::string_view text);

 private:
  MPoly num_;
  MPoly den_;
};

enum class RfOp { add, sub, mul, div };
RatFunc rf_arith(RfOp op, const RatFunc& a, const RatFunc& b);

/// True iff a.num*b.den - b.num*a.den expands to the zero polynomial.
bool rf_equal(const RatFunc& a, const RatFunc& b);

BigRational rf_eval(const RatFunc& a, long m0, long n0);

/// cm*m + cn*n + c0.
MPoly linear(long cm, long cn, long c0);

}  // namespace fsrigid
