#pragma once

// Central finite differences in the 2nm real coordinates of the chart, combined
// into Wirtinger derivatives d/dw = (d/dx - i d/dy)/2, d/dwbar = (d/dx + i d/dy)/2.

#include "fsrigid/geometry.hpp"

#include <array>
#include <functional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace fsrigid {

/// d/dw_I (conjugate = false) or d/dwbar_I (conjugate = true), I a flat index.
struct Wirtinger {
  int index = 0;
  bool conjugate = false;
};

namespace detail {

/// Shift the real (part 0) or imaginary (part 1) component of w_I by h.
inline void shift_coordinate(ChartPoint& p, int real_coord, double h) {
  const int flat = real_coord / 2;
  const int i1 = flat / p.m;
  const int i2 = flat % p.m;
  if (real_coord % 2 == 0) {
    p.W(i1, i2) += Complex(h, 0.0);
  } else {
    p.W(i1, i2) += Complex(0.0, h);
  }
}

/// Real-coordinate expansion of a Wirtinger derivative.
inline std::array<std::pair<int, Complex>, 2> real_weights(const Wirtinger& d) {
  const double s = d.conjugate ? 0.5 : -0.5;
  return {{{2 * d.index, Complex(0.5, 0.0)}, {2 * d.index + 1, Complex(0.0, s)}}};
}

template <class T>
T scaled(const T& v, Complex c) {
  return T(c * v);
}

template <class T>
T central(const std::function<T(const ChartPoint&)>& field, const ChartPoint& p,
          std::span<const Wirtinger> dirs, double h) {
  if (dirs.size() == 1) {
    // sum_r c_r (F(+h e_r) - F(-h e_r)) / 2h
    std::vector<std::pair<Complex, ChartPoint>> stencil;
    for (const auto& [coord, c] : real_weights(dirs[0])) {
      ChartPoint plus = p;
      ChartPoint minus = p;
      shift_coordinate(plus, coord, h);
      shift_coordinate(minus, coord, -h);
      stencil.emplace_back(c / (2.0 * h), plus);
      stencil.emplace_back(-c / (2.0 * h), minus);
    }
    T acc = scaled(field(stencil[0].second), stencil[0].first);
    for (size_t i = 1; i < stencil.size(); ++i) acc += scaled(field(stencil[i].second), stencil[i].first);
    return acc;
  }
  if (dirs.size() == 2) {
    std::vector<std::pair<Complex, ChartPoint>> stencil;
    for (const auto& [ra, ca] : real_weights(dirs[0])) {
      for (const auto& [rb, cb] : real_weights(dirs[1])) {
        const Complex w = ca * cb / (4.0 * h * h);
        for (int sa : {1, -1}) {
          for (int sb : {1, -1}) {
            ChartPoint q = p;
            shift_coordinate(q, ra, sa * h);
            shift_coordinate(q, rb, sb * h);
            stencil.emplace_back(w * static_cast<double>(sa * sb), q);
          }
        }
      }
    }
    T acc = scaled(field(stencil[0].second), stencil[0].first);
    for (size_t i = 1; i < stencil.size(); ++i) acc += scaled(field(stencil[i].second), stencil[i].first);
    return acc;
  }
  throw std::invalid_argument("fd_derivative supports one or two directions");
}

}  // namespace detail

/// Central-difference Wirtinger derivative of order dirs.size() (1 or 2).
/// With richardson = true, returns (4 D(h) - D(2h)) / 3.
template <class T>
T fd_derivative(const std::function<T(const ChartPoint&)>& field, const ChartPoint& p,
                std::span<const Wirtinger> dirs, double step, bool richardson = false) {
  if (!(step > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
  T d = detail::central(field, p, dirs, step);
  if (!richardson) return d;
  T coarse = detail::central(field, p, dirs, 2.0 * step);
  return T((4.0 * d - coarse) / 3.0);
}

/// Full mixed Hessian H(I, J) = d^2 F / dw_I dwbar_J of a scalar field,
/// computed from one pass over the real Hessian.
CMatrix fd_complex_hessian(const std::function<Complex(const ChartPoint&)>& field,
                           const ChartPoint& p, double step, bool richardson = false);

/// d/dw_J of a matrix field for every J (entry J of the result).
std::vector<CMatrix> fd_holomorphic_gradient(const std::function<CMatrix(const ChartPoint&)>& field,
                                             const ChartPoint& p, double step);

/// Covariant derivative oracle (nabla_J h)_{K Lbar} = d_J h_{K Lbar} - Gamma^M_{JK} h_{M Lbar},
/// with d_J by finite differences and Gamma from the closed form.
NablaH fd_covariant_derivative(const std::function<CMatrix(const ChartPoint&)>& field,
                               const ChartPoint& p, double step);

}  // namespace fsrigid
