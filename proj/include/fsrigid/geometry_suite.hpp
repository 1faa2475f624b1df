#pragma once

// Batched numeric verification of the chart-level geometry at seeded random points.

#include "fsrigid/report.hpp"

#include <cstdint>

namespace fsrigid {

enum class GammaKind { special, random };

struct GeometryConfig {
  int m = 2;
  int n = 3;
  GammaKind gamma = GammaKind::special;
  std::uint64_t seed = 42;
  int samples = 25;
  double fd_step = 1e-4;
  double tol = 1e-5;
};

/// Tolerances that do not come from the configuration.
inline constexpr double kTolMachine = 1e-12;
inline constexpr double kTolAlgebraic = 1e-10;
inline constexpr double kTolKahler = 1e-6;
inline constexpr double kTolEinstein = 1e-4;
inline constexpr double kEinsteinStep = 1e-3;
inline constexpr double kTolLaplacianOrigin = 1e-4;
inline constexpr double kRichardsonStep = 1e-3;

/// Errors are max |computed - reference| / max(1, max |reference|) over all
/// entries and samples.
Report verify_geometry_suite(const GeometryConfig& config);

}  // namespace fsrigid
