#include "fsrigid/obstruction.hpp"

#include "fsrigid/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

namespace fsrigid {

std::string to_string(ZdsKind k) {
  switch (k) {
    case ZdsKind::Z:
      return "Z";
    case ZdsKind::D:
      return "D";
    case ZdsKind::S:
      return "S";
  }
  return "?";
}

std::string to_string(TermKind k) {
  switch (k) {
    case TermKind::cubic:
      return "cubic";
    case TermKind::grad:
      return "grad";
    case TermKind::mixed:
      return "mixed";
  }
  return "?";
}

int riem_factor(RiemKind kind) {
  switch (kind) {
    case RiemKind::cubic:
      return 2;
    case RiemKind::grad_pair:
      return 4;
    case RiemKind::mixed_pair:
      return 2;
  }
  throw std::invalid_argument("unknown RiemKind");
}

namespace {

void check_triple(int a, int b, int c) {
  for (int x : {a, b, c}) {
    if (x < 1 || x > 3) throw std::out_of_range("Z/D/S indices must be 1, 2 or 3");
  }
}

}  // namespace

// ------------------------------------------------------------ numeric side

ZdsEvaluator::ZdsEvaluator(const ChartPoint& p) : point_(p) {
  const GammaMatrix gamma = GammaMatrix::special(p.m, p.n);
  const GramMatrices gm = gram_matrices(p);
  CMatrix Uk = CMatrix::Identity(p.m, p.m);
  for (int k = 0; k < 3; ++k) {
    Uk = Uk * gm.U_inv;
    traces_[k] = Uk.trace().real();
  }
  const CMatrix g = fs_metric(gm, p.m, p.n).g;
  const CMatrix L = Eigen::SelfAdjointEigenSolver<CMatrix>(g).operatorInverseSqrt();
  const Deformations t = deformation_tensors(p, gamma);
  const int d = p.dim();
  for (int a = 0; a < 3; ++a) {
    h_[a] = L * t[a + 1] * L;
    const NablaH nh = nabla_h(p, gamma, a + 1);
    std::vector<CMatrix> inner(d);
    for (int J = 0; J < d; ++J) inner[J] = L * nh.by_direction[J] * L;
    // N'[x] = sum_J L(x, J) L N[J] L
    nh_[a].assign(d, CMatrix::Zero(d, d));
    for (int x = 0; x < d; ++x) {
      for (int J = 0; J < d; ++J) nh_[a][x] += L(x, J) * inner[J];
    }
  }
}

Complex ZdsEvaluator::operator()(ZdsKind kind, int a, int b, int c) const {
  check_triple(a, b, c);
  const CMatrix& Ha = h_[a - 1];
  const CMatrix& Hb = h_[b - 1];
  const CMatrix& Hc = h_[c - 1];
  const auto& Na = nh_[a - 1];
  const auto& Nc = nh_[c - 1];
  const int d = static_cast<int>(Hb.rows());
  Complex acc = 0.0;
  switch (kind) {
    case ZdsKind::Z:
      return (Ha * Hb * Hc).trace();
    case ZdsKind::D:
      // sum_{j,i} Hb(j, i) <Na[j], Nc[i]>
      for (int j = 0; j < d; ++j) {
        for (int i = 0; i < d; ++i) acc += Hb(j, i) * (Na[j].conjugate().cwiseProduct(Nc[i])).sum();
      }
      return acc;
    case ZdsKind::S:
      // sum conj(Na[j](l, k)) Hb(l, i) Nc[i](j, k)
      for (int l = 0; l < d; ++l) {
        CMatrix R = CMatrix::Zero(d, d);  // R(j, k) = sum_i Hb(l, i) Nc[i](j, k)
        for (int i = 0; i < d; ++i) R += Hb(l, i) * Nc[i];
        for (int j = 0; j < d; ++j) acc += (Na[j].row(l).conjugate().cwiseProduct(R.row(j))).sum();
      }
      return acc;
  }
  throw std::invalid_argument("unknown ZdsKind");
}

Complex zds_contract(const ChartPoint& p, ZdsKind kind, int a, int b, int c) {
  return ZdsEvaluator(p)(kind, a, b, c);
}

// ----------------------------------------------------------- symbolic side

namespace {

using Table = std::map<std::array<int, 3>, TraceExpr>;

MPoly M() { return MPoly::m(); }
MPoly Nn() { return MPoly::n(); }
MPoly Ntot() { return MPoly::m() + MPoly::n(); }
TraceExpr t(int k) { return TraceExpr::tr_u(k); }
TraceExpr q(int k) { return TraceExpr::tr_q(k); }
TraceExpr F() { return TraceExpr::f(); }

TraceExpr z_entry(int a, int b, int c) {
  const MPoly m = M(), n = Nn(), N = Ntot();
  const TraceExpr f = F();
  const std::array<int, 3> tt{a, b, c};
  auto trH = [&](int x) {
    if (x == 1) return -m * f;
    if (x == 2) return n * f;
    return m * n * f;
  };
  auto trHH = [&](int x, int y) -> TraceExpr {
    if (x == 1 && y == 1) return m * (TraceExpr(n.pow(3)) - MPoly(2) * n * N * q(1) + N * N * q(2));
    if (x == 2 && y == 2) return n * (TraceExpr(m.pow(3)) - MPoly(2) * m * N * t(1) + N * N * t(2));
    return -(f * f);
  };
  auto it = std::find(tt.begin(), tt.end(), 3);
  if (it != tt.end()) {
    const int k = static_cast<int>(it - tt.begin());
    const int x = tt[(k + 1) % 3];
    const int y = tt[(k + 2) % 3];
    if (x == 3 && y == 3) return m * n * (f * f * f);
    if (x == 3) return (f * f) * trH(y);
    if (y == 3) return (f * f) * trH(x);
    return f * trHH(x, y);
  }
  const int ones = static_cast<int>(std::count(tt.begin(), tt.end(), 1));
  switch (ones) {
    case 3:
      return m * (TraceExpr(-n.pow(4)) + MPoly(3) * n * n * N * q(1) - MPoly(3) * n * N * N * q(2) +
                  N.pow(3) * q(3));
    case 0:
      return -(n * (TraceExpr(-m.pow(4)) + MPoly(3) * m * m * N * t(1) - MPoly(3) * m * N * N * t(2) +
                    N.pow(3) * t(3)));
    case 2:
      return f * (TraceExpr(n.pow(3)) - MPoly(2) * n * N * q(1) + N * N * q(2));
    default:
      return -(f * (TraceExpr(m.pow(3)) - MPoly(2) * m * N * t(1) + N * N * t(2)));
  }
}

Table build_d() {
  const MPoly m = M(), n = Nn(), N = Ntot();
  const MPoly N2 = N * N;
  const TraceExpr f = F();
  const TraceExpr AU = m * t(1) - m * t(2) - N * t(2) + N * t(3);
  const TraceExpr AQm = -n * q(1) + n * q(2) + N * q(2) - N * q(3);
  const TraceExpr BU = f * (t(1) - t(2));
  const TraceExpr BQ = f * (q(1) - q(2));
  Table D;
  D[{1, 1, 1}] = -m * N2 * BU;
  D[{1, 2, 1}] = n * m * N2 * AU;
  D[{1, 3, 1}] = m * n * N2 * BU;
  D[{1, 1, 2}] = -N2 * AQm;
  D[{1, 2, 2}] = -N2 * AU;
  D[{1, 3, 2}] = -N2 * BU;
  D[{2, 1, 2}] = -(n * m * N2) * (n * q(1) - n * q(2) - N * q(2) + N * q(3));
  D[{2, 2, 2}] = n * N2 * BQ;
  D[{2, 3, 2}] = m * n * N2 * BQ;
  for (int i = 1; i <= 3; ++i) {
    D[{1, i, 3}] = m * D[{1, i, 2}];
    D[{2, i, 1}] = D[{1, i, 2}];
    D[{2, i, 3}] = -n * D[{1, i, 2}];
  }
  for (int i = 1; i <= 3; ++i) {
    D[{3, i, 1}] = D[{1, i, 3}];
    D[{3, i, 2}] = D[{2, i, 3}];
    D[{3, i, 3}] = -(m * n) * D[{1, i, 2}];
  }
  return D;
}

Table build_s() {
  const MPoly m = M(), n = Nn(), N = Ntot();
  const MPoly N2 = N * N;
  const TraceExpr f = F();
  const TraceExpr AU = m * t(1) - m * t(2) - N * t(2) + N * t(3);
  const TraceExpr AQm = -n * q(1) + n * q(2) + N * q(2) - N * q(3);
  const TraceExpr BU = f * (t(1) - t(2));
  Table S;
  S[{1, 1, 1}] = N2 * AQm;
  S[{1, 2, 1}] = N2 * AU;
  S[{1, 3, 1}] = N2 * BU;
  S[{1, 1, 2}] = -(m * n * N2) * AQm;
  S[{1, 2, 2}] = -n * N2 * BU;
  S[{1, 3, 2}] = -(m * n * N2) * BU;
  S[{2, 1, 1}] = m * N2 * BU;
  S[{2, 2, 1}] = -(m * n * N2) * AU;
  S[{2, 3, 1}] = -(m * n * N2) * BU;
  S[{3, 1, 1}] = N2 * BU;
  S[{3, 2, 1}] = -n * N2 * AU;
  S[{3, 3, 1}] = -n * N2 * BU;
  S[{3, 1, 2}] = m * N2 * AQm;
  S[{3, 2, 2}] = N2 * BU;
  S[{3, 3, 2}] = m * N2 * BU;
  for (int i = 1; i <= 3; ++i) {
    S[{1, i, 3}] = -n * S[{1, i, 1}];
    S[{2, i, 2}] = S[{1, i, 1}];
  }
  for (int i = 1; i <= 3; ++i) {
    S[{2, i, 3}] = m * S[{2, i, 2}];
    S[{3, i, 3}] = S[{1, i, 1}];
  }
  return S;
}

const Table& d_table() {
  static const Table table = build_d();
  return table;
}

const Table& s_table() {
  static const Table table = build_s();
  return table;
}

}  // namespace

TraceExpr zds_traceword(ZdsKind kind, int a, int b, int c) {
  check_triple(a, b, c);
  switch (kind) {
    case ZdsKind::Z:
      return z_entry(a, b, c);
    case ZdsKind::D:
      return d_table().at({a, b, c});
    case ZdsKind::S:
      return s_table().at({a, b, c});
  }
  throw std::invalid_argument("unknown ZdsKind");
}

std::array<MPoly, 3> deformation_coefficients() {
  const MPoly m = M(), n = Nn();
  return {n * (MPoly(1) - m * m), m * (MPoly(1) - n * n), n * n - m * m};
}

TraceExpr trilinear(ZdsKind kind, const std::array<MPoly, 3>& w) {
  TraceExpr sum;
  for (int a = 1; a <= 3; ++a) {
    for (int b = 1; b <= 3; ++b) {
      for (int c = 1; c <= 3; ++c) {
        const MPoly coeff = w[a - 1] * w[b - 1] * w[c - 1];
        if (coeff.is_zero()) continue;
        sum += coeff * zds_traceword(kind, a, b, c);
      }
    }
  }
  return sum;
}

RatFunc assemble_term(TermKind kind) {
  const auto w = deformation_coefficients();
  switch (kind) {
    case TermKind::cubic:
      return RatFunc(riem_factor(RiemKind::cubic)) * trilinear(ZdsKind::Z, w).integrate();
    case TermKind::grad:
      return RatFunc(-riem_factor(RiemKind::grad_pair)) * trilinear(ZdsKind::D, w).integrate();
    case TermKind::mixed:
      return RatFunc(-riem_factor(RiemKind::mixed_pair)) * trilinear(ZdsKind::S, w).integrate();
  }
  throw std::invalid_argument("unknown TermKind");
}

RatFunc integral_f_cubed() {
  const TraceExpr f = F();
  return (f * f * f).integrate();
}

RatFunc expected_term(TermKind kind) {
  const MPoly m = M(), n = Nn(), N = Ntot();
  const MPoly m2 = m * m, n2 = n * n;
  const MPoly base = (m2 - MPoly(1)) * (n2 - MPoly(1));
  MPoly num;
  switch (kind) {
    case TermKind::cubic:
      num = -(base * N.pow(3) *
              (m.pow(3) * n.pow(3) - MPoly(4) * m.pow(3) * n - MPoly(4) * m * n.pow(3) + MPoly(2) * m2 * n2 +
               m2 + n2 + MPoly(7) * m * n - MPoly(4)));
      break;
    case TermKind::grad:
      num = MPoly(2) * m * n * base * N * N *
            (m.pow(4) * n2 + m2 * n.pow(4) - MPoly(2) * m.pow(4) - MPoly(2) * n.pow(4) - MPoly(4) * m2 * n2 +
             MPoly(5) * m2 + MPoly(5) * n2 - MPoly(4));
      break;
    case TermKind::mixed:
      num = -(base * N * N *
              (MPoly(2) * m.pow(4) * n.pow(4) - MPoly(4) * m.pow(4) * n2 - MPoly(4) * m2 * n.pow(4) +
               MPoly(8) * m2 * n2 + m.pow(4) + n.pow(4) - MPoly(2) * m2 - MPoly(2) * n2));
      break;
  }
  return RatFunc(num, n - m) * integral_f_cubed();
}

RatFunc expected_total() {
  const MPoly m = M(), n = Nn(), N = Ntot();
  const MPoly a = m * m - MPoly(1);
  const MPoly b = n * n - MPoly(1);
  MPoly num = MPoly(4) * a * a * b * b * N.pow(4) * (m * n - MPoly(1));
  return RatFunc(num, n - m) * integral_f_cubed();
}

ObstructionReport koiso_obstruction() {
  ObstructionReport r;
  r.cubic_term = assemble_term(TermKind::cubic);
  r.grad_term = assemble_term(TermKind::grad);
  r.mixed_term = assemble_term(TermKind::mixed);
  r.f_cubed = integral_f_cubed();
  r.total = RatFunc(MPoly(2) * Ntot()) * r.cubic_term + RatFunc(3) * r.grad_term - RatFunc(6) * r.mixed_term;
  r.term_matches = {rf_equal(r.cubic_term, expected_term(TermKind::cubic)),
                    rf_equal(r.grad_term, expected_term(TermKind::grad)),
                    rf_equal(r.mixed_term, expected_term(TermKind::mixed))};
  r.total_matches = rf_equal(r.total, expected_total());
  if (!r.total_matches) {
    throw AssemblyMismatch("assembled obstruction " + r.total.to_string() +
                           " differs from the product formula " + expected_total().to_string());
  }
  r.scan = rigidity_scan(r.total, 11);
  return r;
}

std::vector<ScanRow> rigidity_scan(const RatFunc& total, int max_dim, bool include_even) {
  if (max_dim < 5) throw std::invalid_argument("rigidity scan requires max_dim >= 5");
  std::vector<ScanRow> rows;
  for (int m0 = 2; 2 * m0 + 1 <= max_dim; ++m0) {
    for (int n0 = m0 + 1; m0 + n0 <= max_dim; ++n0) {
      const bool odd = (m0 + n0) % 2 == 1;
      if (!odd && !include_even) continue;
      ScanRow row;
      row.m = m0;
      row.n = n0;
      row.value = rf_eval(total, m0, n0);
      row.nonzero = row.value != 0;
      row.asserted = odd;
      if (!odd) row.note = "n + m even: outside the rigidity statement";
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<ScanRow> rigidity_scan(int max_dim, bool include_even) {
  return rigidity_scan(expected_total(), max_dim, include_even);
}

Report zds_bridge(const BridgeConfig& config) {
  if (config.m < 1 || config.n < 1 || config.samples < 1) {
    throw std::invalid_argument("bridge requires m, n >= 1 and samples >= 1");
  }
  std::mt19937_64 rng(config.seed);
  std::vector<ChartPoint> points{ChartPoint::origin(config.m, config.n)};
  for (int s = 0; s < config.samples; ++s) points.push_back(ChartPoint::random(config.m, config.n, rng));

  struct Errors {
    std::array<std::array<double, 27>, 3> err{};
    double cyclic = 0.0;
  };
  const std::vector<Errors> per_point = parallel_map(static_cast<int>(points.size()), [&](int s) {
    Errors e;
    const ZdsEvaluator ev(points[s]);
    const std::array<ZdsKind, 3> kinds{ZdsKind::Z, ZdsKind::D, ZdsKind::S};
    for (int k = 0; k < 3; ++k) {
      for (int idx = 0; idx < 27; ++idx) {
        const int a = idx / 9 + 1, b = (idx / 3) % 3 + 1, c = idx % 3 + 1;
        const Complex num = ev(kinds[k], a, b, c);
        const double sym = zds_traceword(kinds[k], a, b, c).evaluate(config.m, config.n, ev.traces());
        e.err[k][idx] = std::abs(num - sym) / std::max(1.0, std::abs(sym));
        if (k == 0) {
          const Complex rot = ev(ZdsKind::Z, b, c, a);
          e.cyclic = std::max(e.cyclic, std::abs(rot - num) / std::max(1.0, std::abs(num)));
          e.cyclic = std::max(e.cyclic, std::abs(num.imag()) / std::max(1.0, std::abs(num)));
        }
      }
    }
    return e;
  });

  Report report;
  report.command = "bridge";
  const std::array<ZdsKind, 3> kinds{ZdsKind::Z, ZdsKind::D, ZdsKind::S};
  Json triples = Json::array();
  double cyclic = 0.0;
  for (const auto& e : per_point) cyclic = std::max(cyclic, e.cyclic);
  for (int k = 0; k < 3; ++k) {
    double kind_max = 0.0;
    int origin_only = 0;
    for (int idx = 0; idx < 27; ++idx) {
      const int a = idx / 9 + 1, b = (idx / 3) % 3 + 1, c = idx % 3 + 1;
      const double at_origin = per_point[0].err[k][idx];
      double general = 0.0;
      for (size_t s = 1; s < per_point.size(); ++s) general = std::max(general, per_point[s].err[k][idx]);
      const bool origin_ok = at_origin <= config.tol;
      const bool general_ok = general <= config.tol;
      const std::string label = to_string(kinds[k]) + std::to_string(a) + std::to_string(b) + std::to_string(c);
      std::string holds = general_ok && origin_ok ? "pointwise" : origin_ok ? "origin only" : "fails";
      Json row;
      row["triple"] = label;
      row["origin_error"] = at_origin;
      row["general_error"] = general;
      row["holds"] = holds;
      triples.push_back(row);
      if (origin_ok && !general_ok) {
        ++origin_only;
        report.add(CheckRecord::flagged("bridge." + label + ".general", general, config.tol,
                                        "holds at W = 0 only"));
      } else {
        kind_max = std::max(kind_max, std::max(at_origin, general));
      }
    }
    report.add(CheckRecord::measured("bridge." + to_string(kinds[k]), kind_max, config.tol,
                                     "27 triples, W = 0 and " + std::to_string(config.samples) +
                                         " random points" +
                                         (origin_only ? ", " + std::to_string(origin_only) + " flagged" : "")));
  }
  report.add(CheckRecord::measured("bridge.Z_cyclic_real", cyclic, 1e-12, "cyclic rotation and reality of Z"));
  report.results["triples"] = triples;
  return report;
}

}  // namespace fsrigid
