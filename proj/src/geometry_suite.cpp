#include "fsrigid/geometry_suite.hpp"

#include "fsrigid/fd.hpp"
#include "fsrigid/geometry.hpp"
#include "fsrigid/parallel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

namespace fsrigid {

namespace {

double max_abs(const CMatrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

double scaled_error(const CMatrix& computed, const CMatrix& reference) {
  return max_abs(computed - reference) / std::max(1.0, max_abs(reference));
}

double scaled_error(Complex computed, Complex reference) {
  return std::abs(computed - reference) / std::max(1.0, std::abs(reference));
}

enum Check : int {
  kGramHermitian,
  kGramShift,
  kGramTraceShift,
  kMetricInverse,
  kMetricKahler,
  kChristoffelFd,
  kChristoffelSymmetric,
  kEinstein,
  kFTwoForms,
  kFSpecialForm,
  kFGradient,
  kFLaplacian,
  kHessGG,
  kDeformHermitian,
  kDeformTraces,
  kDeformM1,
  kQuadratic,
  kNablaFd,
  kNablaH3Gradient,
  kCodiffCovariant,
  kSigma3,
  kDivFree,
  kExploreCodiff,
  kExploreLaplacian,
  kCheckCount
};

struct CheckSpec {
  const char* name;
  bool special_only;
  bool asserted;
};

constexpr std::array<CheckSpec, kCheckCount> kSpecs{{
    {"gram.hermitian_positive", false, true},
    {"gram.shift_identity", false, true},
    {"gram.trace_shift", false, true},
    {"metric.inverse", false, true},
    {"metric.kahler_fd", false, true},
    {"christoffel.formula_vs_fd", false, true},
    {"christoffel.symmetric", false, true},
    {"ricci.einstein_fd", false, true},
    {"eigenfunction.two_forms", false, true},
    {"eigenfunction.special_closed_form", true, true},
    {"eigenfunction.gradient_vs_fd", true, true},
    {"eigenfunction.laplacian_fd", false, true},
    {"hessian.h1_minus_h2_fd", false, true},
    {"deformation.hermitian", false, true},
    {"deformation.traces", false, true},
    {"deformation.vanishes_m1", false, true},
    {"quadratic.identities", true, true},
    {"nabla_h.formula_vs_fd", true, true},
    {"nabla_h3.gradient_form", true, true},
    {"codifferential.covariant_fd", false, true},
    {"sigma3.identities", true, true},
    {"deformation.divergence_free_fd", false, true},
    {"exploratory.codifferential_coordinate_form", false, false},
    {"exploratory.laplacian_coordinate_form", false, false},
}};

struct SampleResult {
  std::array<double, kCheckCount> err{};
  std::array<bool, kCheckCount> ran{};
  int richardson_fallbacks = 0;
};

struct SuiteContext {
  int m;
  int n;
  GammaMatrix gamma;
  bool special;
  double step;
  double tol;
};

using ScalarField = std::function<Complex(const ChartPoint&)>;
using MatrixField = std::function<CMatrix(const ChartPoint&)>;

/// Mixed Hessian with a Richardson retry at the coarser step when the plain
/// estimate misses the tolerance.
CMatrix hessian_with_fallback(const ScalarField& f, const ChartPoint& p, double step,
                              const std::function<double(const CMatrix&)>& error, double tol,
                              int& fallbacks) {
  CMatrix H = fd_complex_hessian(f, p, step);
  if (error(H) <= tol) return H;
  ++fallbacks;
  return fd_complex_hessian(f, p, kRichardsonStep, true);
}

Eigen::VectorXcd fd_gradient(const ScalarField& f, const ChartPoint& p, double step) {
  Eigen::VectorXcd g(p.dim());
  for (int I = 0; I < p.dim(); ++I) {
    const Wirtinger d{I, false};
    g(I) = fd_derivative<Complex>(f, p, std::span<const Wirtinger>(&d, 1), step);
  }
  return g;
}

/// sum_{K,J} g^{K Jbar} (nabla_K h)_{I Jbar}.
Eigen::VectorXcd covariant_divergence(const NablaH& nh, const CMatrix& g_inv) {
  const int d = static_cast<int>(g_inv.rows());
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d);
  for (int K = 0; K < d; ++K) {
    for (int I = 0; I < d; ++I) {
      for (int J = 0; J < d; ++J) v(I) += g_inv(K, J) * nh(K, I, J);
    }
  }
  return v;
}

double vec_error(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  return scaled_error(CMatrix(a), CMatrix(b));
}

/// Second Wirtinger derivative d^2 F / dw_A dwbar_B of a matrix field.
CMatrix mixed_second(const MatrixField& F, const ChartPoint& p, int A, int B, double step) {
  const std::array<Wirtinger, 2> dirs{Wirtinger{A, false}, Wirtinger{B, true}};
  return fd_derivative<CMatrix>(F, p, dirs, step);
}

/// -m Hess f - (A - B) from the two second-derivative blocks of h2, in the chart
/// coordinates with no connection terms.
CMatrix laplacian_sigma2_coordinate(const SuiteContext& ctx, const ChartPoint& p, double step) {
  const int d = p.dim();
  MatrixField h2 = [&](const ChartPoint& q) { return deformation_tensors(q, ctx.gamma).h2; };
  ScalarField f = [&](const ChartPoint& q) { return Complex(eigenfunction(q, ctx.gamma)); };
  CMatrix Hf = fd_complex_hessian(f, p, step, true);
  CMatrix A = CMatrix::Zero(d, d);
  CMatrix B = CMatrix::Zero(d, d);
  for (int K = 0; K < d; ++K) A += mixed_second(h2, p, K, K, step);
  for (int K = 0; K < d; ++K) {
    for (int J = 0; J < d; ++J) {
      // B(I, J) = sum_K d^2 h2(I, K) / dw_K dwbar_J
      B.col(J) += mixed_second(h2, p, K, J, step).col(K);
    }
  }
  return -static_cast<double>(p.m) * Hf - (A - B);
}

SampleResult run_sample(const SuiteContext& ctx, const ChartPoint& p, bool explore_laplacian) {
  SampleResult r;
  auto put = [&](Check c, double e) {
    r.err[c] = std::max(r.err[c], std::isnan(e) ? std::numeric_limits<double>::infinity() : e);
    r.ran[c] = true;
  };
  const int m = p.m;
  const int n = p.n;
  const int d = p.dim();
  const double N = n + m;

  const GramMatrices gm = gram_matrices(p);
  {
    double herm = std::max(max_abs(gm.U - gm.U.adjoint()), max_abs(gm.Q - gm.Q.adjoint()));
    double lu = Eigen::SelfAdjointEigenSolver<CMatrix>(gm.U).eigenvalues().minCoeff();
    double lq = Eigen::SelfAdjointEigenSolver<CMatrix>(gm.Q).eigenvalues().minCoeff();
    put(kGramHermitian, std::max({herm, 1.0 - lu, 1.0 - lq, 0.0}));
    put(kGramShift, scaled_error(CMatrix(gm.Q_inv * p.W.conjugate()), CMatrix(p.W.conjugate() * gm.U_inv)));
    CMatrix Uk = CMatrix::Identity(m, m);
    CMatrix Qk = CMatrix::Identity(n, n);
    for (int k = 1; k <= 3; ++k) {
      Uk = Uk * gm.U_inv;
      Qk = Qk * gm.Q_inv;
      put(kGramTraceShift, scaled_error(Qk.trace(), Uk.trace() + Complex(n - m)));
    }
  }

  const FsMetric metric = fs_metric(gm, m, n);
  const CMatrix& g = metric.g;
  const CMatrix& gi = metric.g_inv;
  put(kMetricInverse, max_abs(gi * g.transpose() - CMatrix::Identity(d, d)));

  MatrixField gfield = [](const ChartPoint& q) { return fs_metric(q).g; };
  const std::vector<CMatrix> dg = fd_holomorphic_gradient(gfield, p, ctx.step);
  {
    double e = 0.0;
    double scale = 1.0;
    for (int K = 0; K < d; ++K) scale = std::max(scale, max_abs(dg[K]));
    for (int K = 0; K < d; ++K) {
      for (int I = 0; I < d; ++I) {
        for (int J = 0; J < d; ++J) e = std::max(e, std::abs(dg[K](I, J) - dg[I](K, J)));
      }
    }
    put(kMetricKahler, e / scale);
  }

  const ChristoffelField gamma = christoffel(p);
  {
    // Gamma^K_{IJ} = sum_L g^{K Lbar} d_I g_{J Lbar}
    double e = 0.0;
    double scale = 1.0;
    double sym = 0.0;
    for (int K = 0; K < d; ++K) {
      CMatrix fd(d, d);
      for (int I = 0; I < d; ++I) {
        for (int J = 0; J < d; ++J) fd(I, J) = (gi.row(K) * dg[I].row(J).transpose())(0, 0);
      }
      e = std::max(e, max_abs(fd - gamma.upper[K]));
      scale = std::max(scale, max_abs(fd));
      sym = std::max(sym, max_abs(gamma.upper[K] - gamma.upper[K].transpose()));
    }
    put(kChristoffelFd, e / scale);
    put(kChristoffelSymmetric, sym);
  }

  {
    ScalarField logdet = [](const ChartPoint& q) {
      return Complex(std::log(fs_metric(q).g.determinant().real()));
    };
    CMatrix ric = -fd_complex_hessian(logdet, p, kEinsteinStep);
    put(kEinstein, scaled_error(ric, CMatrix(N * g)));
  }

  const double f = eigenfunction(p, ctx.gamma);
  put(kFTwoForms, scaled_error(Complex(f), Complex(eigenfunction_quotient_form(p, ctx.gamma))));
  ScalarField ffield = [&](const ChartPoint& q) { return Complex(eigenfunction(q, ctx.gamma)); };
  Eigen::VectorXcd df;
  if (ctx.special) {
    const double t1 = gm.U_inv.trace().real();
    put(kFSpecialForm, scaled_error(Complex(f), Complex(m * m - N * t1)));
    df = special_eigenfunction_gradient(p);
    put(kFGradient, vec_error(fd_gradient(ffield, p, ctx.step), df));
  } else {
    df = fd_gradient(ffield, p, ctx.step);
  }

  const Deformations t = deformation_tensors(p, ctx.gamma);
  {
    auto lap_err = [&](const CMatrix& H) {
      Complex lap = (gi.cwiseProduct(H)).sum();
      return scaled_error(lap, Complex(-N * f));
    };
    CMatrix Hf = hessian_with_fallback(ffield, p, ctx.step, lap_err, ctx.tol, r.richardson_fallbacks);
    put(kFLaplacian, lap_err(Hf));
    const CMatrix target = t.h1 - t.h2;
    auto gg_err = [&](const CMatrix& H) { return scaled_error(H, target); };
    if (gg_err(Hf) > ctx.tol) {
      ++r.richardson_fallbacks;
      Hf = fd_complex_hessian(ffield, p, kRichardsonStep, true);
    }
    put(kHessGG, gg_err(Hf));
  }

  {
    double herm = 0.0;
    for (int a = 1; a <= 3; ++a) herm = std::max(herm, max_abs(t[a] - t[a].adjoint()));
    herm = std::max(herm, max_abs(t.D - t.D.adjoint()));
    put(kDeformHermitian, herm);
    auto tr = [&](const CMatrix& h) { return (gi.cwiseProduct(h)).sum(); };
    const double s = std::abs(m * n * f);
    auto rel = [&](Complex a, double b) { return std::abs(a - b) / std::max(1.0, std::max(s, std::abs(b))); };
    put(kDeformTraces, std::max({rel(tr(t.h1), -m * f), rel(tr(t.h2), n * f), rel(tr(t.h3), m * n * f),
                                 rel(tr(t.D), 0.0)}));
    if (m == 1) put(kDeformM1, max_abs(t.D) / std::max(1.0, max_abs(t.h2)));
  }

  const CMatrix Ginv = gi.transpose();
  if (ctx.special) {
    auto ip = [&](const CMatrix& a, const CMatrix& b) { return (a * Ginv * b * Ginv).trace(); };
    CMatrix Qk = gm.Q_inv;
    const double q1 = Qk.trace().real();
    const double q2 = (Qk * Qk).trace().real();
    const double t1 = gm.U_inv.trace().real();
    const double t2 = (gm.U_inv * gm.U_inv).trace().real();
    const double f2 = f * f;
    const std::array<std::pair<Complex, double>, 6> quad{{
        {ip(t.h1, t.h1), m * (n * n * n - 2 * n * N * q1 + N * N * q2)},
        {ip(t.h2, t.h2), n * (m * m * m - 2 * m * N * t1 + N * N * t2)},
        {ip(t.h1, t.h2), -f2},
        {ip(t.h1, t.h3), -m * f2},
        {ip(t.h2, t.h3), n * f2},
        {ip(t.h3, t.h3), m * n * f2},
    }};
    for (const auto& [lhs, rhs] : quad) put(kQuadratic, scaled_error(lhs, Complex(rhs)));
  }

  std::array<std::optional<NablaH>, 4> nabla_fd;
  for (int a = 1; a <= 3; ++a) {
    MatrixField field = [&, a](const ChartPoint& q) { return deformation_tensors(q, ctx.gamma)[a]; };
    nabla_fd[a] = fd_covariant_derivative(field, p, ctx.step);
  }
  if (ctx.special) {
    for (int a = 1; a <= 3; ++a) {
      NablaH closed = nabla_h(p, ctx.gamma, a);
      put(kNablaFd, closed.max_abs_diff(*nabla_fd[a]) / std::max(1.0, closed.max_abs()));
      if (a == 3) {
        double e = 0.0;
        for (int J = 0; J < d; ++J) e = std::max(e, scaled_error(closed.by_direction[J], CMatrix(df(J) * g)));
        put(kNablaH3Gradient, e);
        // Lambda(sigma3) = mn f and dbar^* sigma3 = sqrt(-1) d f
        put(kSigma3, vec_error(covariant_divergence(closed, gi), df));
        put(kSigma3, scaled_error((gi.cwiseProduct(t.h3)).sum(), Complex(m * n * f)));
      }
    }
  }

  {
    const std::array<double, 4> coeff{0.0, -static_cast<double>(n), static_cast<double>(m), 1.0};
    for (int a = 1; a <= 3; ++a) {
      Eigen::VectorXcd expected = coeff[a] * df;
      put(kCodiffCovariant, vec_error(covariant_divergence(*nabla_fd[a], gi), expected));
    }
    const auto c = d_coefficients(m, n);
    NablaH nd;
    nd.by_direction.resize(d);
    for (int J = 0; J < d; ++J) {
      nd.by_direction[J] = c[0] * nabla_fd[1]->by_direction[J] + c[1] * nabla_fd[2]->by_direction[J] +
                           c[2] * nabla_fd[3]->by_direction[J];
    }
    put(kDivFree, max_abs(CMatrix(covariant_divergence(nd, gi))) / std::max(1.0, nd.max_abs()));

    // Flat-coordinate divergence sum_J d h(I, J) / dw_J, exact only where Gamma = 0.
    for (int a = 1; a <= 3; ++a) {
      MatrixField field = [&, a](const ChartPoint& q) { return deformation_tensors(q, ctx.gamma)[a]; };
      const std::vector<CMatrix> dh = fd_holomorphic_gradient(field, p, ctx.step);
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d);
      for (int J = 0; J < d; ++J) v += dh[J].col(J);
      put(kExploreCodiff, vec_error(v, Eigen::VectorXcd(coeff[a] * df)));
    }
  }

  if (explore_laplacian) {
    CMatrix lap = laplacian_sigma2_coordinate(ctx, p, kRichardsonStep);
    put(kExploreLaplacian, scaled_error(lap, CMatrix(N * t.h2)));
  }
  return r;
}

double spec_tolerance(Check c, const SuiteContext& ctx) {
  switch (c) {
    case kGramHermitian:
    case kGramShift:
    case kMetricInverse:
    case kChristoffelSymmetric:
    case kFTwoForms:
    case kFSpecialForm:
    case kDeformHermitian:
    case kDeformM1:
    case kNablaH3Gradient:
      return kTolMachine;
    case kGramTraceShift:
    case kDeformTraces:
    case kQuadratic:
    case kSigma3:
      return kTolAlgebraic;
    case kMetricKahler:
      return kTolKahler;
    case kEinstein:
      return kTolEinstein;
    case kExploreLaplacian:
      return kTolLaplacianOrigin;
    default:
      return ctx.tol;
  }
}

void origin_checks(const SuiteContext& ctx, Report& report) {
  const int m = ctx.m;
  const int n = ctx.n;
  const int d = n * m;
  const ChartPoint o = ChartPoint::origin(m, n);
  const CMatrix& G = ctx.gamma.matrix();
  const CMatrix I = CMatrix::Identity(d, d);

  {
    const FsMetric metric = fs_metric(o);
    const ChristoffelField gamma = christoffel(o);
    double e = max_abs(metric.g - I) + max_abs(metric.g_inv - I);
    for (const auto& c : gamma.upper) e = std::max(e, max_abs(c));
    report.add(CheckRecord::measured("origin.metric_and_christoffel", e, kTolMachine,
                                     "g = Id and Gamma = 0 at W = 0"));
    MatrixField uinv = [](const ChartPoint& q) { return gram_matrices(q).U_inv; };
    MatrixField qinv = [](const ChartPoint& q) { return gram_matrices(q).Q_inv; };
    double e1 = 0.0;
    for (const auto& dU : fd_holomorphic_gradient(uinv, o, ctx.step)) e1 = std::max(e1, max_abs(dU));
    for (const auto& dQ : fd_holomorphic_gradient(qinv, o, ctx.step)) e1 = std::max(e1, max_abs(dQ));
    report.add(CheckRecord::measured("origin.first_derivatives_vanish", e1, kTolAlgebraic,
                                     "d U^{-1} = d Q^{-1} = 0 at W = 0"));
  }

  if (ctx.special) {
    const Deformations t = deformation_tensors(o, ctx.gamma);
    double e = std::max({max_abs(t.h1 - m * I), max_abs(t.h2 + n * I), max_abs(t.h3 + (m * n) * I),
                         max_abs(t.D), std::abs(t.f + m * n)});
    for (int a = 1; a <= 3; ++a) e = std::max(e, nabla_h(o, ctx.gamma, a).max_abs());
    report.add(CheckRecord::measured("origin.special_deformations", e, kTolMachine,
                                     "h1 = m Id, h2 = -n Id, h3 = -mn Id, D = 0, f = -mn, nabla h = 0"));
  }

  ScalarField ffield = [&](const ChartPoint& q) { return Complex(eigenfunction(q, ctx.gamma)); };
  CMatrix expected_hess(d, d);
  for (int i1 = 0; i1 < n; ++i1) {
    for (int i2 = 0; i2 < m; ++i2) {
      for (int j1 = 0; j1 < n; ++j1) {
        for (int j2 = 0; j2 < m; ++j2) {
          Complex v = 0.0;
          if (i1 == j1) v -= G(i2, j2);
          if (i2 == j2) v += G(m + j1, m + i1);
          expected_hess(i1 * m + i2, j1 * m + j2) = v;
        }
      }
    }
  }
  {
    CMatrix H = fd_complex_hessian(ffield, o, ctx.step);
    report.add(CheckRecord::measured("origin.hessian_f", scaled_error(H, expected_hess), ctx.tol,
                                     "d dbar f(0) = -delta_{i1 j1} gamma_{i2 j2} + delta_{i2 j2} gamma_{j1+m, i1+m}"));
  }

  {
    Eigen::VectorXcd df0(d);
    for (int i1 = 0; i1 < n; ++i1) {
      for (int i2 = 0; i2 < m; ++i2) df0(i1 * m + i2) = G(i2, m + i1);
    }
    Eigen::VectorXcd df_fd(d);
    for (int I = 0; I < d; ++I) {
      const Wirtinger w{I, false};
      df_fd(I) = fd_derivative<Complex>(ffield, o, std::span<const Wirtinger>(&w, 1), ctx.step);
    }
    double e = vec_error(df_fd, df0);
    const std::array<double, 4> coeff{0.0, -static_cast<double>(n), static_cast<double>(m), 1.0};
    for (int a = 1; a <= 3; ++a) {
      MatrixField field = [&, a](const ChartPoint& q) { return deformation_tensors(q, ctx.gamma)[a]; };
      const std::vector<CMatrix> dh = fd_holomorphic_gradient(field, o, ctx.step);
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d);
      for (int J = 0; J < d; ++J) v += dh[J].col(J);
      e = std::max(e, vec_error(v, Eigen::VectorXcd(coeff[a] * df0)));
    }
    report.add(CheckRecord::measured("origin.codifferential", e, ctx.tol,
                                     "d f(0)_I = gamma_{i2, i1+m}; dbar^* sigma_a = (-n, m, 1) sqrt(-1) d f"));
  }

  {
    CMatrix lap = laplacian_sigma2_coordinate(ctx, o, kRichardsonStep);
    const CMatrix h2 = deformation_tensors(o, ctx.gamma).h2;
    report.add(CheckRecord::measured("origin.laplacian_sigma2",
                                     scaled_error(lap, CMatrix(static_cast<double>(n + m) * h2)),
                                     kTolLaplacianOrigin, "Delta sigma2 = (n+m) sigma2 at W = 0"));
  }
}

}  // namespace

Report verify_geometry_suite(const GeometryConfig& config) {
  if (config.m < 1 || config.n < 1) throw std::invalid_argument("m and n must be positive");
  if (config.samples < 1) throw std::invalid_argument("samples must be at least 1");
  if (!(config.fd_step > 0.0) || !(config.tol > 0.0)) {
    throw std::invalid_argument("fd step and tolerance must be positive");
  }
  std::mt19937_64 rng(config.seed);
  const bool special = config.gamma == GammaKind::special;
  SuiteContext ctx{config.m,
                   config.n,
                   special ? GammaMatrix::special(config.m, config.n)
                           : GammaMatrix::random(config.m, config.n, rng),
                   special,
                   config.fd_step,
                   config.tol};
  std::vector<ChartPoint> points;
  points.reserve(config.samples);
  for (int s = 0; s < config.samples; ++s) points.push_back(ChartPoint::random(config.m, config.n, rng));

  const std::vector<SampleResult> results = parallel_map(
      config.samples, [&](int s) { return run_sample(ctx, points[s], s == 0); });

  Report report;
  report.command = "verify geometry";
  origin_checks(ctx, report);

  SampleResult total;
  int fallbacks = 0;
  for (const auto& r : results) {
    for (int c = 0; c < kCheckCount; ++c) {
      if (!r.ran[c]) continue;
      total.ran[c] = true;
      total.err[c] = std::max(total.err[c], r.err[c]);
    }
    fallbacks += r.richardson_fallbacks;
  }
  for (int c = 0; c < kCheckCount; ++c) {
    if (!total.ran[c]) continue;
    const auto& spec = kSpecs[c];
    const double tol = spec_tolerance(static_cast<Check>(c), ctx);
    std::string details = std::to_string(config.samples) + " samples";
    if (c == kFLaplacian || c == kHessGG) {
      details += ", richardson fallbacks " + std::to_string(fallbacks);
    }
    if (c == kEinstein) details += ", step 1e-3";
    if (c == kExploreCodiff) details += ", flat-coordinate divergence at general W";
    if (c == kExploreLaplacian) details = "first sample, flat-coordinate Laplacian at general W";
    if (spec.asserted) {
      report.add(CheckRecord::measured(spec.name, total.err[c], tol, details));
    } else {
      report.add(CheckRecord::flagged(spec.name, total.err[c], tol, details));
    }
  }
  if (special && config.m == config.n) {
    report.add(CheckRecord::flagged("special_gamma.equal_ranks", 0.0, 0.0,
                                    "m = n: the integral of f^3 vanishes although f is not identically zero"));
  }
  return report;
}

}  // namespace fsrigid
