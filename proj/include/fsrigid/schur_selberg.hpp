#pragma once

// Normalized Selberg-type integrals over the eigenvalues of U^{-1}:
//
//   <F> = int_{[0,1]^m} F(z) Delta_m(z)^2 prod_i (1 - z_i)^{n-m} dz / int (same with F = 1)
//
// evaluated exactly through Schur expansions and the Kaneko closed form, plus a
// tensor-product Gauss-Legendre oracle for the unnormalized integral.

#include "fsrigid/ratfunc.hpp"

#include <compare>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fsrigid {

class UnsupportedDegree : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Weakly decreasing nonnegative parts; trailing zeros are dropped.
class Partition {
 public:
  Partition() = default;
  Partition(std::initializer_list<int> parts);
  explicit Partition(std::vector<int> parts);

  const std::vector<int>& parts() const { return parts_; }
  int size() const;  // |lambda|
  int length() const { return static_cast<int>(parts_.size()); }
  std::string to_string() const;

  friend auto operator<=>(const Partition&, const Partition&) = default;

 private:
  std::vector<int> parts_;
};

/// tr(U^{-1})^a tr(U^{-2})^b tr(U^{-3})^c.
struct TraceWord {
  int a = 0;
  int b = 0;
  int c = 0;

  int degree() const { return a + 2 * b + 3 * c; }
  std::string to_string() const;

  friend auto operator<=>(const TraceWord&, const TraceWord&) = default;
};

/// Maximum degree of any integrand that occurs.
inline constexpr int kMaxTraceDegree = 3;

/// Every TraceWord of degree <= 3, empty word first.
std::vector<TraceWord> all_trace_words();

using SchurCombo = std::vector<std::pair<BigRational, Partition>>;

/// s_lambda(1, ..., 1) with m ones, via the hook-content product.
MPoly schur_at_ones(const Partition& lambda);

/// Schur expansion of the power-sum product p_1^a p_2^b p_3^c.
/// Throws UnsupportedDegree above degree 3.
SchurCombo power_to_schur(const TraceWord& word);

/// Normalized integral <s_lambda> as an exact function of (m, n).
RatFunc kaneko_normalized(const Partition& lambda);

/// prod_{k=-(d-1)}^{d-1} (n + m + k); every normalized integral of degree d
/// has a denominator dividing this.
MPoly integral_denominator(int degree);

/// Normalized integral <word>, returned over integral_denominator(word.degree()).
RatFunc trace_word_integral(const TraceWord& word);

/// Unnormalized int 1 = prod_{j=1}^{m} j!(n-j)!(m-j)!/(n+m-j)!. Requires n >= m >= 1.
BigRational selberg_normalizer(int m0, int n0);

/// Exact numeric value of <word> at (m0, n0); requires n0 >= m0.
BigRational trace_word_value(const TraceWord& word, int m0, int n0);

struct GaussLegendreRule {
  std::vector<double> nodes;    // on [0, 1]
  std::vector<double> weights;  // sum to 1
};

GaussLegendreRule gauss_legendre_unit(int order);

/// p_1(z)^a p_2(z)^b p_3(z)^c.
double power_sum_value(const TraceWord& word, std::span<const double> z);

/// Tensor-product Gauss-Legendre approximation of the unnormalized integral
/// int P(z) Delta^2 prod (1 - z_i)^{n0-m0} dz over [0,1]^{m0}.
double selberg_quadrature(const TraceWord& word, int m0, int n0, int order);

}  // namespace fsrigid
