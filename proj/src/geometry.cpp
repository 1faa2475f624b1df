#include "fsrigid/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fsrigid {

namespace {

// T(I, J) = A(j2, i2) B(i1, j1) for A m x m, B n x n.
CMatrix chart_product(const CMatrix& A, const CMatrix& B, int m, int n) {
  const int d = n * m;
  CMatrix T(d, d);
  for (int i1 = 0; i1 < n; ++i1) {
    for (int i2 = 0; i2 < m; ++i2) {
      for (int j1 = 0; j1 < n; ++j1) {
        for (int j2 = 0; j2 < m; ++j2) {
          T(i1 * m + i2, j1 * m + j2) = A(j2, i2) * B(i1, j1);
        }
      }
    }
  }
  return T;
}

}  // namespace

ChartPoint::ChartPoint(int m0, int n0, CMatrix w) : m(m0), n(n0), W(std::move(w)) {
  if (m < 1 || n < 1) throw std::invalid_argument("chart dimensions must be positive");
  if (W.rows() != n || W.cols() != m) throw std::invalid_argument("W must be n x m");
}

ChartPoint ChartPoint::origin(int m0, int n0) { return ChartPoint(m0, n0, CMatrix::Zero(n0, m0)); }

ChartPoint ChartPoint::random(int m0, int n0, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> radius(0.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  CMatrix w(n0, m0);
  for (int i = 0; i < n0; ++i) {
    for (int j = 0; j < m0; ++j) {
      const double r = std::sqrt(radius(rng));
      w(i, j) = std::polar(r, angle(rng));
    }
  }
  return ChartPoint(m0, n0, std::move(w));
}

GammaMatrix::GammaMatrix(CMatrix gamma, double tol) : gamma_(std::move(gamma)) {
  if (gamma_.rows() != gamma_.cols() || gamma_.rows() < 2) {
    throw InvalidGamma("gamma must be a square matrix of size n + m");
  }
  const double scale = std::max(1.0, gamma_.cwiseAbs().maxCoeff());
  const double herm = (gamma_ - gamma_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol * scale) {
    throw InvalidGamma("gamma is not Hermitian (defect " + std::to_string(herm) + ")");
  }
  const double tr = std::abs(gamma_.trace());
  if (tr > tol * scale * gamma_.rows()) {
    throw InvalidGamma("gamma is not traceless (trace " + std::to_string(tr) + ")");
  }
}

GammaMatrix GammaMatrix::special(int m0, int n0) {
  Eigen::VectorXcd diag(m0 + n0);
  for (int i = 0; i < m0; ++i) diag(i) = -static_cast<double>(n0);
  for (int i = 0; i < n0; ++i) diag(m0 + i) = static_cast<double>(m0);
  return GammaMatrix(diag.asDiagonal().toDenseMatrix());
}

GammaMatrix GammaMatrix::random(int m0, int n0, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int N = m0 + n0;
  CMatrix a(N, N);
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) a(i, j) = Complex(gauss(rng), gauss(rng));
  }
  CMatrix h = 0.5 * (a + a.adjoint());
  h -= (h.trace() / static_cast<double>(N)) * CMatrix::Identity(N, N);
  h = 0.5 * (h + h.adjoint());
  return GammaMatrix(h);
}

bool GammaMatrix::is_special(int m0, int n0, double tol) const {
  if (size() != m0 + n0) return false;
  return (gamma_ - special(m0, n0).matrix()).cwiseAbs().maxCoeff() <= tol;
}

GramMatrices gram_matrices(const ChartPoint& p) {
  GramMatrices gm;
  gm.U = CMatrix::Identity(p.m, p.m) + p.W.transpose() * p.W.conjugate();
  gm.Q = CMatrix::Identity(p.n, p.n) + p.W.conjugate() * p.W.transpose();
  gm.U_inv = gm.U.inverse();
  gm.Q_inv = gm.Q.inverse();
  return gm;
}

FsMetric fs_metric(const GramMatrices& gm, int m, int n) {
  FsMetric metric;
  metric.g = chart_product(gm.U_inv, gm.Q_inv, m, n);
  // g^{I Jbar} = U(i2, j2) Q(j1, i1)
  metric.g_inv = chart_product(gm.U.transpose(), gm.Q.transpose(), m, n);
  return metric;
}

FsMetric fs_metric(const ChartPoint& p) { return fs_metric(gram_matrices(p), p.m, p.n); }

ChristoffelField christoffel(const ChartPoint& p) {
  const GramMatrices gm = gram_matrices(p);
  const CMatrix X = p.W.conjugate() * gm.U_inv;  // X(i1, j2) = sum_s wbar(i1, s) Uinv(s, j2)
  const int d = p.dim();
  ChristoffelField field;
  field.upper.assign(d, CMatrix::Zero(d, d));
  for (int I = 0; I < d; ++I) {
    const int i1 = I / p.m;
    const int i2 = I % p.m;
    for (int J = 0; J < d; ++J) {
      const int j1 = J / p.m;
      const int j2 = J % p.m;
      field.upper[p.index(j1, i2)](I, J) -= X(i1, j2);
      field.upper[p.index(i1, j2)](I, J) -= X(j1, i2);
    }
  }
  return field;
}

double NablaH::max_abs_diff(const NablaH& o) const {
  double e = 0.0;
  for (size_t J = 0; J < by_direction.size(); ++J) {
    e = std::max(e, (by_direction[J] - o.by_direction[J]).cwiseAbs().maxCoeff());
  }
  return e;
}

double NablaH::max_abs() const {
  double e = 0.0;
  for (const auto& m : by_direction) e = std::max(e, m.cwiseAbs().maxCoeff());
  return e;
}

SesquilinearBlocks gamma_blocks(const ChartPoint& p, const GammaMatrix& gamma) {
  if (gamma.size() != p.m + p.n) throw InvalidGamma("gamma size must equal n + m");
  const int N = p.m + p.n;
  CMatrix M(N, p.m);
  M.topRows(p.m) = CMatrix::Identity(p.m, p.m);
  M.bottomRows(p.n) = p.W;
  CMatrix Nm(N, p.n);
  Nm.topRows(p.m) = -p.W.adjoint();
  Nm.bottomRows(p.n) = CMatrix::Identity(p.n, p.n);
  SesquilinearBlocks b;
  b.MU = (M.adjoint() * gamma.matrix() * M).transpose();
  b.MQ = (Nm.adjoint() * gamma.matrix() * Nm).transpose();
  return b;
}

double eigenfunction(const ChartPoint& p, const GammaMatrix& gamma) {
  const GramMatrices gm = gram_matrices(p);
  return (gm.U_inv * gamma_blocks(p, gamma).MU).trace().real();
}

double eigenfunction_quotient_form(const ChartPoint& p, const GammaMatrix& gamma) {
  const GramMatrices gm = gram_matrices(p);
  return -(gm.Q_inv * gamma_blocks(p, gamma).MQ).trace().real();
}

Eigen::VectorXcd special_eigenfunction_gradient(const ChartPoint& p) {
  const GramMatrices gm = gram_matrices(p);
  const CMatrix G = static_cast<double>(p.n + p.m) * p.W.conjugate() * gm.U_inv * gm.U_inv;
  Eigen::VectorXcd grad(p.dim());
  for (int i1 = 0; i1 < p.n; ++i1) {
    for (int i2 = 0; i2 < p.m; ++i2) grad(p.index(i1, i2)) = G(i1, i2);
  }
  return grad;
}

std::array<double, 3> d_coefficients(int m, int n) {
  const double md = m;
  const double nd = n;
  return {nd * (1.0 - md * md), md * (1.0 - nd * nd), nd * nd - md * md};
}

const HermTensor& Deformations::operator[](int a) const {
  switch (a) {
    case 1:
      return h1;
    case 2:
      return h2;
    case 3:
      return h3;
    default:
      throw std::out_of_range("deformation index must be 1, 2 or 3");
  }
}

Deformations deformation_tensors(const ChartPoint& p, const GammaMatrix& gamma) {
  const GramMatrices gm = gram_matrices(p);
  const SesquilinearBlocks b = gamma_blocks(p, gamma);
  Deformations t;
  t.f = (gm.U_inv * b.MU).trace().real();
  const CMatrix g = chart_product(gm.U_inv, gm.Q_inv, p.m, p.n);
  t.h1 = chart_product(gm.U_inv, gm.Q_inv * b.MQ * gm.Q_inv, p.m, p.n);
  t.h2 = chart_product(gm.U_inv * b.MU * gm.U_inv, gm.Q_inv, p.m, p.n);
  t.h3 = t.f * g;
  const auto c = d_coefficients(p.m, p.n);
  t.D = c[0] * t.h1 + c[1] * t.h2 + c[2] * t.h3;
  return t;
}

NablaH nabla_h(const ChartPoint& p, const GammaMatrix& gamma, int which) {
  if (which < 1 || which > 3) throw std::out_of_range("nabla_h index must be 1, 2 or 3");
  if (!gamma.is_special(p.m, p.n)) {
    throw InvalidGamma("closed-form nabla h requires the special gamma");
  }
  const int m = p.m;
  const int n = p.n;
  const int d = p.dim();
  const double N = n + m;
  const CMatrix g = fs_metric(p).g;
  const CMatrix wb = p.W.conjugate();
  NablaH out;
  out.by_direction.assign(d, CMatrix::Zero(d, d));
  if (which == 3) {
    // N (sum_alpha g_{J alphabar} wbar_alpha) g_{K Lbar}
    for (int J = 0; J < d; ++J) {
      Complex s = 0.0;
      for (int A = 0; A < d; ++A) s += g(J, A) * wb(A / m, A % m);
      out.by_direction[J] = N * s * g;
    }
    return out;
  }
  const double sign = which == 1 ? -N : N;
  for (int J = 0; J < d; ++J) {
    CMatrix& T = out.by_direction[J];
    for (int K = 0; K < d; ++K) {
      for (int l1 = 0; l1 < n; ++l1) {
        for (int l2 = 0; l2 < m; ++l2) {
          Complex s = 0.0;
          for (int a1 = 0; a1 < n; ++a1) {
            for (int a2 = 0; a2 < m; ++a2) {
              if (which == 1) {
                s += g(J, p.index(l1, a2)) * g(K, p.index(a1, l2)) * wb(a1, a2);
              } else {
                s += g(J, p.index(a1, l2)) * g(K, p.index(l1, a2)) * wb(a1, a2);
              }
            }
          }
          T(K, p.index(l1, l2)) = sign * s;
        }
      }
    }
  }
  return out;
}

}  // namespace fsrigid
