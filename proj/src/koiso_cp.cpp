#include "fsrigid/koiso_cp.hpp"

#include <stdexcept>

namespace fsrigid {

std::string to_string(KoisoLabel label) {
  switch (label) {
    case KoisoLabel::hess_koi_1:
      return "HessKoi_1";
    case KoisoLabel::hess_koi_2:
      return "HessKoi_2";
    case KoisoLabel::hess_koi_3:
      return "HessKoi_3";
  }
  return "?";
}

IdentityCheck koiso_identity(KoisoLabel label) {
  const MPoly m = MPoly::m(), n = MPoly::n(), N = m + n;
  const std::array<MPoly, 3> w{MPoly(1), MPoly(-1), MPoly(0)};
  const RatFunc f3 = integral_f_cubed();
  const BigRational one = 1;
  // lambda = n + 1 and c = 1 at m = 1
  const MPoly lambda3 = (n + MPoly(1)).pow(3);
  IdentityCheck r;
  r.label = label;
  RiemKind riem = RiemKind::cubic;
  MPoly expected_multiple;
  switch (label) {
    case KoisoLabel::hess_koi_1:
      r.computed = trilinear(ZdsKind::Z, w).integrate();
      r.general_form = RatFunc(N.pow(3), MPoly(2)) * f3;
      expected_multiple = lambda3;
      riem = RiemKind::cubic;
      break;
    case KoisoLabel::hess_koi_2:
      r.computed = -trilinear(ZdsKind::D, w).integrate();
      r.general_form = RatFunc(-(N * N * (m * n + MPoly(1))), MPoly(2)) * f3;
      expected_multiple = MPoly(-2) * lambda3;
      riem = RiemKind::grad_pair;
      break;
    case KoisoLabel::hess_koi_3:
      r.computed = -trilinear(ZdsKind::S, w).integrate();
      r.general_form = RatFunc(-(N * N * (m * n + MPoly(1))), MPoly(2)) * f3;
      expected_multiple = -lambda3;
      riem = RiemKind::mixed_pair;
      break;
  }
  r.riem_scaled = (RatFunc(riem_factor(riem)) * r.computed).at_m(one);
  r.expected = RatFunc(expected_multiple) * f3.at_m(one);
  r.general_verdict = rf_equal(r.computed, r.general_form);
  r.verdict = rf_equal(r.riem_scaled, r.expected);
  return r;
}

std::vector<IdentityCheck> koiso_identities() {
  return {koiso_identity(KoisoLabel::hess_koi_1), koiso_identity(KoisoLabel::hess_koi_2),
          koiso_identity(KoisoLabel::hess_koi_3)};
}

Report koiso_report() {
  Report report;
  report.command = "koiso-cp";
  Json rows = Json::array();
  for (const auto& c : koiso_identities()) {
    const std::string name = to_string(c.label);
    std::string details = "general m and m = 1";
    if (!c.general_verdict) {
      details = "general-m mismatch: computed " + c.computed.to_string() + " expected " + c.general_form.to_string();
    } else if (!c.verdict) {
      details = "m = 1 mismatch: computed " + c.riem_scaled.to_string() + " expected " + c.expected.to_string();
    }
    report.add(CheckRecord::exact("koiso." + name, c.general_verdict && c.verdict, details));
    Json row;
    row["label"] = name;
    row["computed"] = c.computed.to_string();
    row["general_form"] = c.general_form.to_string();
    row["riem_scaled_m1"] = c.riem_scaled.to_string();
    row["expected_m1"] = c.expected.to_string();
    row["general_verdict"] = c.general_verdict;
    row["verdict"] = c.verdict;
    rows.push_back(row);
  }
  report.results["identities"] = rows;
  return report;
}

}  // namespace fsrigid
