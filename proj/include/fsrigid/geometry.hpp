#pragma once

// Fubini-Study geometry of G_m(C^{n+m}) in the affine chart span(I_m; W), W an
// n x m complex matrix. Chart coordinates w_I, I = (i1, i2), are flattened as
// I = i1 * m + i2 (0-based). Hermitian 2-tensors h_{I Jbar} are stored as d x d
// matrices H(I, J), d = nm.

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

namespace fsrigid {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

class InvalidGamma : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ChartPoint {
  int m = 1;
  int n = 1;
  CMatrix W;  // n x m

  ChartPoint() = default;
  ChartPoint(int m0, int n0, CMatrix w);

  static ChartPoint origin(int m0, int n0);
  /// Entries drawn uniformly from the unit disc.
  static ChartPoint random(int m0, int n0, std::mt19937_64& rng);

  int dim() const { return n * m; }
  int index(int i1, int i2) const { return i1 * m + i2; }
  Complex w(int flat) const { return W(flat / m, flat % m); }
};

/// Traceless Hermitian (n+m) x (n+m) matrix, validated on construction.
class GammaMatrix {
 public:
  explicit GammaMatrix(CMatrix gamma, double tol = 1e-12);

  /// diag(-n, ..., -n, m, ..., m) with m entries -n followed by n entries m.
  static GammaMatrix special(int m0, int n0);
  static GammaMatrix random(int m0, int n0, std::mt19937_64& rng);

  const CMatrix& matrix() const { return gamma_; }
  int size() const { return static_cast<int>(gamma_.rows()); }
  bool is_special(int m0, int n0, double tol = 1e-12) const;

 private:
  CMatrix gamma_;
};

/// Symmetric 2-tensor h_{I Jbar} as the d x d matrix H(I, J).
using HermTensor = CMatrix;

struct GramMatrices {
  CMatrix U;      // I_m + W^T conj(W)
  CMatrix Q;      // I_n + conj(W) W^T
  CMatrix U_inv;
  CMatrix Q_inv;
};

GramMatrices gram_matrices(const ChartPoint& p);

struct FsMetric {
  CMatrix g;      // g_{I Jbar} = (U^{-1})_{j2 i2} (Q^{-1})_{i1 j1}
  CMatrix g_inv;  // g^{I Jbar}, with sum_L g^{K Lbar} g_{M Lbar} = delta_{KM}
};

FsMetric fs_metric(const ChartPoint& p);
FsMetric fs_metric(const GramMatrices& gm, int m, int n);

/// Gamma^K_{IJ}, stored as upper[K](I, J).
struct ChristoffelField {
  std::vector<CMatrix> upper;

  Complex operator()(int K, int I, int J) const { return upper[K](I, J); }
};

ChristoffelField christoffel(const ChartPoint& p);

/// (nabla_J h)_{K Lbar}, stored as by_direction[J](K, L).
struct NablaH {
  std::vector<CMatrix> by_direction;

  Complex operator()(int J, int K, int L) const { return by_direction[J](K, L); }
  double max_abs_diff(const NablaH& o) const;
  double max_abs() const;
};

/// M^U = (M^* gamma M)^T with M = (I_m; W), and M^Q = (N^* gamma N)^T with N = (-W^*; I_n).
struct SesquilinearBlocks {
  CMatrix MU;  // m x m
  CMatrix MQ;  // n x n
};

SesquilinearBlocks gamma_blocks(const ChartPoint& p, const GammaMatrix& gamma);

/// f_gamma = tr(U^{-1} M^U).
double eigenfunction(const ChartPoint& p, const GammaMatrix& gamma);
/// The same function written through Q: -tr(Q^{-1} M^Q).
double eigenfunction_quotient_form(const ChartPoint& p, const GammaMatrix& gamma);

/// df/dw_I for the special gamma, from f = m^2 - (n+m) tr(U^{-1}).
Eigen::VectorXcd special_eigenfunction_gradient(const ChartPoint& p);

struct Deformations {
  HermTensor h1;  // (U^{-1})_{j2 i2} (Q^{-1} M^Q Q^{-1})_{i1 j1}
  HermTensor h2;  // (U^{-1} M^U U^{-1})_{j2 i2} (Q^{-1})_{i1 j1}
  HermTensor h3;  // f g
  HermTensor D;   // n(1-m^2) h1 + m(1-n^2) h2 + (n^2-m^2) h3
  double f = 0.0;

  const HermTensor& operator[](int a) const;  // a in {1, 2, 3}
};

Deformations deformation_tensors(const ChartPoint& p, const GammaMatrix& gamma);

/// Closed-form nabla h_which (which in {1, 2, 3}) for the special gamma.
/// Throws InvalidGamma for any other gamma.
NablaH nabla_h(const ChartPoint& p, const GammaMatrix& gamma, int which);

/// Coefficients (n(1-m^2), m(1-n^2), n^2-m^2) of D.
std::array<double, 3> d_coefficients(int m, int n);

}  // namespace fsrigid
