#pragma once

// Command dispatch and report rendering for the fsrigid executable.

#include "fsrigid/geometry_suite.hpp"
#include "fsrigid/report.hpp"

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace fsrigid {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Command { verify_geometry, verify_integrals, obstruction, scan, koiso_cp };
enum class OutputFormat { text, json };

std::string to_string(Command c);

struct RunConfig {
  Command command = Command::obstruction;
  int m = 2;
  int n = 3;
  GammaKind gamma = GammaKind::special;
  std::uint64_t seed = 42;
  int samples = 25;
  double fd_step = 1e-4;
  double tol = 1e-5;
  int quad_order = 32;
  int max_dim = 11;
  bool symbolic = false;      // obstruction: skip the numeric bridge
  bool include_even = false;  // scan: also list n + m even rows
  OutputFormat output = OutputFormat::text;
};

/// Tolerance for the quadrature oracle in `verify integrals`.
inline constexpr double kTolQuadrature = 1e-10;
/// Tolerance for the numeric Z/D/S bridge.
inline constexpr double kTolBridge = 1e-8;
/// Samples for the bridge run by `obstruction` without --symbolic.
inline constexpr int kBridgeSamples = 3;

/// Throws UsageError for values outside the documented ranges.
void validate(const RunConfig& config);

Json config_json(const RunConfig& config);

/// Deterministic given the configuration. Throws UsageError.
Report run(const RunConfig& config);

std::string render(const Report& report, OutputFormat format, const std::string& timestamp);

/// Exit 0 on pass, 1 on a failed check, 2 on a usage error.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fsrigid
