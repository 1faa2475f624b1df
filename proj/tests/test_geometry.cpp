#include "doctest.h"
#include "fsrigid/fd.hpp"
#include "fsrigid/geometry.hpp"
#include "fsrigid/geometry_suite.hpp"

#include <cmath>

using namespace fsrigid;

namespace {

double max_abs(const CMatrix& a) { return a.cwiseAbs().maxCoeff(); }

ChartPoint sample(int m, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return ChartPoint::random(m, n, rng);
}

const CheckRecord* find(const Report& r, const std::string& name) {
  for (const auto& c : r.checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("gram matrices at the origin and at W = I") {
  GramMatrices o = gram_matrices(ChartPoint::origin(2, 3));
  CHECK(max_abs(o.U - CMatrix::Identity(2, 2)) == 0.0);
  CHECK(max_abs(o.Q - CMatrix::Identity(3, 3)) == 0.0);

  ChartPoint p(2, 2, CMatrix::Identity(2, 2));
  GramMatrices g = gram_matrices(p);
  CHECK(max_abs(g.U - 2.0 * CMatrix::Identity(2, 2)) < 1e-15);
  CHECK(max_abs(g.Q - 2.0 * CMatrix::Identity(2, 2)) < 1e-15);
}

TEST_CASE("trace shift between Q and U") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    ChartPoint p = sample(2, 5, seed);
    GramMatrices g = gram_matrices(p);
    CMatrix Uk = CMatrix::Identity(2, 2);
    CMatrix Qk = CMatrix::Identity(5, 5);
    for (int k = 1; k <= 3; ++k) {
      Uk = Uk * g.U_inv;
      Qk = Qk * g.Q_inv;
      CHECK(std::abs(Qk.trace() - Uk.trace() - 3.0) < 1e-12);
    }
  }
}

TEST_CASE("metric at the origin and inverse contraction") {
  FsMetric o = fs_metric(ChartPoint::origin(2, 3));
  CHECK(max_abs(o.g - CMatrix::Identity(6, 6)) == 0.0);

  ChartPoint p = sample(2, 3, 7);
  FsMetric g = fs_metric(p);
  // sum_K g(I, K) g_inv(J, K) = delta
  CMatrix c = g.g * g.g_inv.transpose();
  CHECK(max_abs(c - CMatrix::Identity(6, 6)) < 1e-12);
}

TEST_CASE("metric is Kaehler") {
  ChartPoint p = sample(2, 3, 11);
  std::function<CMatrix(const ChartPoint&)> field = [](const ChartPoint& q) { return fs_metric(q).g; };
  std::vector<CMatrix> dg = fd_holomorphic_gradient(field, p, 1e-4);
  double err = 0.0;
  for (int K = 0; K < 6; ++K) {
    for (int I = 0; I < 6; ++I) {
      for (int J = 0; J < 6; ++J) err = std::max(err, std::abs(dg[K](I, J) - dg[I](K, J)));
    }
  }
  CHECK(err < 1e-6);
}

TEST_CASE("Christoffel symbols") {
  ChristoffelField o = christoffel(ChartPoint::origin(2, 3));
  for (const auto& c : o.upper) CHECK(max_abs(c) == 0.0);

  ChartPoint p = sample(2, 3, 5);
  ChristoffelField G = christoffel(p);
  FsMetric g = fs_metric(p);
  std::function<CMatrix(const ChartPoint&)> field = [](const ChartPoint& q) { return fs_metric(q).g; };
  std::vector<CMatrix> dg = fd_holomorphic_gradient(field, p, 1e-4);
  double err = 0.0;
  double sym = 0.0;
  for (int K = 0; K < 6; ++K) {
    sym = std::max(sym, max_abs(G.upper[K] - G.upper[K].transpose()));
    for (int I = 0; I < 6; ++I) {
      for (int J = 0; J < 6; ++J) {
        Complex fd = 0.0;
        for (int L = 0; L < 6; ++L) fd += g.g_inv(K, L) * dg[I](J, L);
        err = std::max(err, std::abs(fd - G(K, I, J)));
      }
    }
  }
  CHECK(sym == 0.0);
  CHECK(err < 1e-5);
}

TEST_CASE("special eigenfunction") {
  const GammaMatrix gamma = GammaMatrix::special(2, 3);
  CHECK(eigenfunction(ChartPoint::origin(2, 3), gamma) == doctest::Approx(-6.0).epsilon(1e-15));
  for (std::uint64_t seed : {3u, 4u}) {
    ChartPoint p = sample(2, 3, seed);
    CHECK(std::abs(eigenfunction(p, gamma) - eigenfunction_quotient_form(p, gamma)) < 1e-12);
  }
}

TEST_CASE("eigenfunction Laplacian") {
  std::mt19937_64 rng(19);
  const GammaMatrix gamma = GammaMatrix::random(2, 3, rng);
  ChartPoint p = ChartPoint::random(2, 3, rng);
  std::function<Complex(const ChartPoint&)> f = [&](const ChartPoint& q) { return Complex(eigenfunction(q, gamma)); };
  CMatrix H = fd_complex_hessian(f, p, 1e-3, true);
  FsMetric g = fs_metric(p);
  Complex lap = 0.0;
  for (int I = 0; I < 6; ++I) {
    for (int J = 0; J < 6; ++J) lap += g.g_inv(I, J) * H(I, J);
  }
  const double expected = -5.0 * eigenfunction(p, gamma);
  CHECK(std::abs(lap - expected) / std::max(1.0, std::abs(expected)) < 1e-5);
}

TEST_CASE("deformations at the origin") {
  const int m = 2, n = 3;
  Deformations d = deformation_tensors(ChartPoint::origin(m, n), GammaMatrix::special(m, n));
  const CMatrix id = CMatrix::Identity(6, 6);
  CHECK(max_abs(d.h1 - m * id) < 1e-14);
  CHECK(max_abs(d.h2 + n * id) < 1e-14);
  CHECK(max_abs(d.h3 + m * n * id) < 1e-14);
  CHECK(max_abs(d.D) < 1e-13);
}

TEST_CASE("deformation vanishes for m = 1") {
  std::mt19937_64 rng(23);
  const GammaMatrix gamma = GammaMatrix::random(1, 4, rng);
  for (int s = 0; s < 3; ++s) {
    ChartPoint p = ChartPoint::random(1, 4, rng);
    CHECK(max_abs(deformation_tensors(p, gamma).D) < 1e-12);
  }
}

TEST_CASE("Hessian of f is h1 - h2") {
  std::mt19937_64 rng(29);
  const GammaMatrix gamma = GammaMatrix::random(2, 3, rng);
  ChartPoint p = ChartPoint::random(2, 3, rng);
  std::function<Complex(const ChartPoint&)> f = [&](const ChartPoint& q) { return Complex(eigenfunction(q, gamma)); };
  CMatrix H = fd_complex_hessian(f, p, 1e-4);
  Deformations d = deformation_tensors(p, gamma);
  CHECK(max_abs(H - (d.h1 - d.h2)) / std::max(1.0, max_abs(d.h1 - d.h2)) < 1e-5);
}

TEST_CASE("nabla h closed forms") {
  const GammaMatrix gamma = GammaMatrix::special(2, 3);
  for (int which = 1; which <= 3; ++which) {
    NablaH o = nabla_h(ChartPoint::origin(2, 3), gamma, which);
    CHECK(o.max_abs() == 0.0);
  }
  ChartPoint p = sample(2, 3, 31);
  FsMetric g = fs_metric(p);
  NablaH n3 = nabla_h(p, gamma, 3);
  double err = 0.0;
  for (int J = 0; J < 6; ++J) {
    Complex s = 0.0;
    for (int a = 0; a < 6; ++a) s += g.g(J, a) * std::conj(p.w(a));
    err = std::max(err, max_abs(n3.by_direction[J] - 5.0 * s * g.g));
  }
  CHECK(err < 1e-12);

  std::function<CMatrix(const ChartPoint&)> h1 = [&](const ChartPoint& q) { return deformation_tensors(q, gamma).h1; };
  NablaH fd = fd_covariant_derivative(h1, p, 1e-4);
  NablaH n1 = nabla_h(p, gamma, 1);
  CHECK(n1.max_abs_diff(fd) / std::max(1.0, fd.max_abs()) < 1e-5);

  std::mt19937_64 rng(1);
  CHECK_THROWS_AS(nabla_h(p, GammaMatrix::random(2, 3, rng), 1), InvalidGamma);
}

TEST_CASE("finite differences of coordinate functions") {
  ChartPoint p = sample(2, 3, 37);
  for (int I = 0; I < 6; ++I) {
    std::function<Complex(const ChartPoint&)> w = [I](const ChartPoint& q) { return q.w(I); };
    for (int K = 0; K < 6; ++K) {
      const Wirtinger hol[] = {{K, false}};
      const Wirtinger anti[] = {{K, true}};
      CHECK(std::abs(fd_derivative(w, p, std::span<const Wirtinger>(hol), 1e-4) - (I == K ? 1.0 : 0.0)) < 1e-10);
      CHECK(std::abs(fd_derivative(w, p, std::span<const Wirtinger>(anti), 1e-4)) < 1e-10);
    }
  }
}

TEST_CASE("first derivatives of U inverse vanish at the origin") {
  ChartPoint o = ChartPoint::origin(2, 3);
  std::function<CMatrix(const ChartPoint&)> uinv = [](const ChartPoint& q) { return gram_matrices(q).U_inv; };
  for (int K = 0; K < 6; ++K) {
    for (bool conj : {false, true}) {
      const Wirtinger d[] = {{K, conj}};
      CHECK(max_abs(fd_derivative(uinv, o, std::span<const Wirtinger>(d), 1e-4)) < 1e-10);
    }
  }
}

TEST_CASE("Hessian of f at the origin") {
  const int m = 2, n = 3;
  std::mt19937_64 rng(41);
  const GammaMatrix gamma = GammaMatrix::random(m, n, rng);
  const CMatrix& gm = gamma.matrix();
  std::function<Complex(const ChartPoint&)> f = [&](const ChartPoint& q) { return Complex(eigenfunction(q, gamma)); };
  ChartPoint o = ChartPoint::origin(m, n);
  CMatrix H = fd_complex_hessian(f, o, 1e-4);
  double err = 0.0;
  for (int i1 = 0; i1 < n; ++i1) {
    for (int i2 = 0; i2 < m; ++i2) {
      for (int j1 = 0; j1 < n; ++j1) {
        for (int j2 = 0; j2 < m; ++j2) {
          Complex e = 0.0;
          if (i1 == j1) e -= gm(i2, j2);
          if (i2 == j2) e += gm(j1 + m, i1 + m);
          err = std::max(err, std::abs(H(o.index(i1, i2), o.index(j1, j2)) - e));
        }
      }
    }
  }
  CHECK(err < 1e-6);
}

TEST_CASE("gamma validation") {
  CMatrix bad = CMatrix::Identity(5, 5);
  CHECK_THROWS_AS(GammaMatrix{bad}, InvalidGamma);
  CMatrix nonherm = CMatrix::Zero(5, 5);
  nonherm(0, 1) = 1.0;
  CHECK_THROWS_AS(GammaMatrix{nonherm}, InvalidGamma);
  CHECK(GammaMatrix::special(2, 3).is_special(2, 3));
  std::mt19937_64 rng(3);
  CHECK_FALSE(GammaMatrix::random(2, 3, rng).is_special(2, 3));
}

TEST_CASE("geometry suite") {
  SUBCASE("(2, 3) special") {
    GeometryConfig c;
    Report r = verify_geometry_suite(c);
    CHECK(r.overall_pass());
    CHECK(find(r, "ricci.einstein_fd") != nullptr);
  }
  SUBCASE("(3, 4) random") {
    GeometryConfig c;
    c.m = 3;
    c.n = 4;
    c.gamma = GammaKind::random;
    c.samples = 10;
    CHECK(verify_geometry_suite(c).overall_pass());
  }
  SUBCASE("(2, 2) special flags equal ranks") {
    GeometryConfig c;
    c.m = 2;
    c.n = 2;
    c.samples = 5;
    Report r = verify_geometry_suite(c);
    CHECK(r.overall_pass());
    const CheckRecord* flag = find(r, "special_gamma.equal_ranks");
    REQUIRE(flag != nullptr);
    CHECK(flag->status == CheckStatus::flagged);
  }
  SUBCASE("same seed, same report") {
    GeometryConfig c;
    c.samples = 4;
    CHECK(verify_geometry_suite(c).to_json("t") == verify_geometry_suite(c).to_json("t"));
  }
}
