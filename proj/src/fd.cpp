#include "fsrigid/fd.hpp"

namespace fsrigid {

namespace {

// Real Hessian R(a, b) = d^2 F / dx_a dx_b over the 2d real coordinates.
Eigen::MatrixXcd real_hessian(const std::function<Complex(const ChartPoint&)>& field,
                              const ChartPoint& p, double h) {
  const int r = 2 * p.dim();
  Eigen::MatrixXcd R(r, r);
  for (int a = 0; a < r; ++a) {
    for (int b = a; b < r; ++b) {
      Complex acc = 0.0;
      for (int sa : {1, -1}) {
        for (int sb : {1, -1}) {
          ChartPoint q = p;
          detail::shift_coordinate(q, a, sa * h);
          detail::shift_coordinate(q, b, sb * h);
          acc += static_cast<double>(sa * sb) * field(q);
        }
      }
      R(a, b) = acc / (4.0 * h * h);
      R(b, a) = R(a, b);
    }
  }
  return R;
}

}  // namespace

CMatrix fd_complex_hessian(const std::function<Complex(const ChartPoint&)>& field,
                           const ChartPoint& p, double step, bool richardson) {
  if (!(step > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
  Eigen::MatrixXcd R = real_hessian(field, p, step);
  if (richardson) R = (4.0 * R - real_hessian(field, p, 2.0 * step)) / 3.0;
  const int d = p.dim();
  const Complex i(0.0, 1.0);
  CMatrix H(d, d);
  for (int I = 0; I < d; ++I) {
    for (int J = 0; J < d; ++J) {
      const Complex xx = R(2 * I, 2 * J);
      const Complex xy = R(2 * I, 2 * J + 1);
      const Complex yx = R(2 * I + 1, 2 * J);
      const Complex yy = R(2 * I + 1, 2 * J + 1);
      H(I, J) = 0.25 * (xx + i * xy - i * yx + yy);
    }
  }
  return H;
}

std::vector<CMatrix> fd_holomorphic_gradient(const std::function<CMatrix(const ChartPoint&)>& field,
                                             const ChartPoint& p, double step) {
  std::vector<CMatrix> out;
  out.reserve(p.dim());
  for (int J = 0; J < p.dim(); ++J) {
    const Wirtinger dir{J, false};
    out.push_back(fd_derivative<CMatrix>(field, p, std::span<const Wirtinger>(&dir, 1), step));
  }
  return out;
}

NablaH fd_covariant_derivative(const std::function<CMatrix(const ChartPoint&)>& field,
                               const ChartPoint& p, double step) {
  const std::vector<CMatrix> dh = fd_holomorphic_gradient(field, p, step);
  const CMatrix h = field(p);
  const ChristoffelField gamma = christoffel(p);
  const int d = p.dim();
  NablaH out;
  out.by_direction.resize(d);
  for (int J = 0; J < d; ++J) {
    // Gamma^M_{JK} h_{M Lbar} = sum_M upper[M](J, K) h(M, L)
    CMatrix G(d, d);
    for (int K = 0; K < d; ++K) {
      for (int M = 0; M < d; ++M) G(K, M) = gamma.upper[M](J, K);
    }
    out.by_direction[J] = dh[J] - G * h;
  }
  return out;
}

}  // namespace fsrigid
