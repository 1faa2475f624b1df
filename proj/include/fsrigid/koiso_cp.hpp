#pragma once

// Koiso's three Hessian identities on CP^n recovered from the Z/D/S tables with the
// coefficient vector (1, -1, 0), then specialized to m = 1.

#include "fsrigid/obstruction.hpp"
#include "fsrigid/ratfunc.hpp"
#include "fsrigid/report.hpp"

#include <string>
#include <vector>

namespace fsrigid {

enum class KoisoLabel { hess_koi_1, hess_koi_2, hess_koi_3 };

std::string to_string(KoisoLabel label);

struct IdentityCheck {
  KoisoLabel label = KoisoLabel::hess_koi_1;
  RatFunc computed;        // eight-term combo, integrated, complex coordinates
  RatFunc general_form;    // (n+m)^3/2 or -(n+m)^2(mn+1)/2, times int f^3
  RatFunc riem_scaled;     // riem_factor * computed, at m = 1
  RatFunc expected;        // lambda^3, -2c lambda^3, -c lambda^3 times int f^3 at m = 1
  bool general_verdict = false;
  bool verdict = false;
};

IdentityCheck koiso_identity(KoisoLabel label);
std::vector<IdentityCheck> koiso_identities();

/// One exact check per identity, passing iff both verdicts hold.
Report koiso_report();

}  // namespace fsrigid
