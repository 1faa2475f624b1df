#pragma once

// Check records and run reports shared by every subcommand.

#include "json.hpp"

#include <string>
#include <vector>

namespace fsrigid {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchema = 1;
inline constexpr const char* kToolVersion = "0.1.0";

enum class CheckStatus { pass, fail, flagged };

std::string to_string(CheckStatus s);

struct CheckRecord {
  std::string name;
  CheckStatus status = CheckStatus::pass;
  bool asserted = true;
  double max_error = 0.0;
  double tolerance = 0.0;
  std::string details;

  /// Asserted check: pass iff max_error is finite and <= tolerance.
  static CheckRecord measured(std::string name, double max_error, double tolerance,
                              std::string details = {});
  /// Asserted exact check.
  static CheckRecord exact(std::string name, bool ok, std::string details = {});
  /// Exploratory record; never affects the overall status.
  static CheckRecord flagged(std::string name, double max_error, double tolerance,
                             std::string details = {});

  bool failed() const { return asserted && status == CheckStatus::fail; }
  Json to_json() const;
};

struct Report {
  std::string command;
  Json config = Json::object();
  std::vector<CheckRecord> checks;
  Json results = Json::object();

  void add(CheckRecord r) { checks.push_back(std::move(r)); }
  void append(const Report& other);
  bool overall_pass() const;
  int exit_code() const { return overall_pass() ? 0 : 1; }

  /// schema, tool, version, timestamp, command, config, checks, results, overall.
  Json to_json(const std::string& timestamp) const;
  std::string to_text() const;
};

/// ISO-8601 UTC time of the call.
std::string utc_timestamp();

/// Shortest round-trip decimal form of a double.
std::string format_double(double x);

}  // namespace fsrigid
