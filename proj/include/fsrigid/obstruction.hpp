#pragma once

// Koiso's second-order obstruction for D = n(1-m^2) h1 + m(1-n^2) h2 + (n^2-m^2) h3
// with the special gamma: pointwise Z/D/S quantities as numeric contractions and as
// trace expressions, their exact integrals, and the assembled total.

#include "fsrigid/geometry.hpp"
#include "fsrigid/ratfunc.hpp"
#include "fsrigid/report.hpp"
#include "fsrigid/trace_expr.hpp"

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fsrigid {

class AssemblyMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class RiemKind { cubic, grad_pair, mixed_pair };
enum class ZdsKind { Z, D, S };
enum class TermKind { cubic, grad, mixed };

std::string to_string(ZdsKind k);
std::string to_string(TermKind k);

/// Multiplier taking a complex-coordinate bracket to the Riemannian one: 2, 4, 2.
int riem_factor(RiemKind kind);

/// Z_abc = tr(H_a H_b H_c),
/// D_abc = <(nabla_Jbar h_a)_{K Lbar}, (H_b)^Ibar_Jbar (nabla_Ibar h_c)_{K Lbar}>,
/// S_abc = <(nabla_Jbar h_a)_{K Lbar}, (H_b)^Ibar_Lbar (nabla_Ibar h_c)_{K Jbar}>,
/// contracted in a unitary frame of g at the point.
class ZdsEvaluator {
 public:
  explicit ZdsEvaluator(const ChartPoint& p);

  Complex operator()(ZdsKind kind, int a, int b, int c) const;
  const TraceValues& traces() const { return traces_; }
  const ChartPoint& point() const { return point_; }

 private:
  ChartPoint point_;
  TraceValues traces_{};
  std::array<CMatrix, 3> h_;                 // frame components of h1, h2, h3
  std::array<std::vector<CMatrix>, 3> nh_;   // frame components of nabla h_a
};

/// One-shot numeric contraction at p for the special gamma.
Complex zds_contract(const ChartPoint& p, ZdsKind kind, int a, int b, int c);

/// Pointwise closed form as a trace expression, Q-traces and f eliminated.
TraceExpr zds_traceword(ZdsKind kind, int a, int b, int c);

/// The coefficient vector (n(1-m^2), m(1-n^2), n^2-m^2) of D.
std::array<MPoly, 3> deformation_coefficients();

/// sum_{a,b,c} w_a w_b w_c X_abc for X the table of the given kind.
TraceExpr trilinear(ZdsKind kind, const std::array<MPoly, 3>& w);

/// Riemannian bracket: cubic = 2 int sum Z, grad = -4 int sum D, mixed = -2 int sum S.
RatFunc assemble_term(TermKind kind);

/// int f^3 for the special gamma.
RatFunc integral_f_cubed();

/// Closed forms of the brackets, each a multiple of int f^3.
RatFunc expected_term(TermKind kind);
/// 4(m^2-1)^2(n^2-1)^2(m+n)^4(mn-1)/(n-m) int f^3.
RatFunc expected_total();

struct ScanRow {
  int m = 0;
  int n = 0;
  BigRational value;
  bool nonzero = false;
  bool asserted = false;  // n + m odd
  std::string note;
};

struct ObstructionReport {
  RatFunc cubic_term;
  RatFunc grad_term;
  RatFunc mixed_term;
  RatFunc f_cubed;
  RatFunc total;
  std::array<bool, 3> term_matches{};
  bool total_matches = false;
  std::vector<ScanRow> scan;
};

/// total = 2(n+m) cubic + 3 grad - 6 mixed. Throws AssemblyMismatch unless it equals
/// expected_total().
ObstructionReport koiso_obstruction();

/// Rows 2 <= m < n with m + n <= max_dim. Odd rows are asserted nonzero; even rows
/// are included only on request. Requires max_dim >= 5.
std::vector<ScanRow> rigidity_scan(int max_dim, bool include_even = false);
std::vector<ScanRow> rigidity_scan(const RatFunc& total, int max_dim, bool include_even = false);

struct BridgeConfig {
  int m = 2;
  int n = 3;
  std::uint64_t seed = 42;
  int samples = 3;
  double tol = 1e-8;
};

/// Numeric contraction vs trace-expression evaluation for every kind and triple at
/// random W and at W = 0, plus Z cyclicity.
Report zds_bridge(const BridgeConfig& config);

}  // namespace fsrigid
