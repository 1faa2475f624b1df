#include "fsrigid/report.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <sstream>

namespace fsrigid {

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass:
      return "pass";
    case CheckStatus::fail:
      return "fail";
    case CheckStatus::flagged:
      return "flagged";
  }
  return "unknown";
}

CheckRecord CheckRecord::measured(std::string name, double max_error, double tolerance,
                                  std::string details) {
  CheckRecord r;
  r.name = std::move(name);
  r.max_error = max_error;
  r.tolerance = tolerance;
  r.details = std::move(details);
  r.status = std::isfinite(max_error) && max_error <= tolerance ? CheckStatus::pass : CheckStatus::fail;
  return r;
}

CheckRecord CheckRecord::exact(std::string name, bool ok, std::string details) {
  CheckRecord r;
  r.name = std::move(name);
  r.max_error = ok ? 0.0 : 1.0;
  r.tolerance = 0.0;
  r.details = std::move(details);
  r.status = ok ? CheckStatus::pass : CheckStatus::fail;
  return r;
}

CheckRecord CheckRecord::flagged(std::string name, double max_error, double tolerance,
                                 std::string details) {
  CheckRecord r;
  r.name = std::move(name);
  r.asserted = false;
  r.status = CheckStatus::flagged;
  r.max_error = max_error;
  r.tolerance = tolerance;
  r.details = std::move(details);
  return r;
}

Json CheckRecord::to_json() const {
  Json j;
  j["name"] = name;
  j["status"] = to_string(status);
  j["asserted"] = asserted;
  j["max_error"] = std::isfinite(max_error) ? Json(max_error) : Json(format_double(max_error));
  j["tolerance"] = tolerance;
  j["details"] = details;
  return j;
}

void Report::append(const Report& other) {
  for (const auto& c : other.checks) checks.push_back(c);
}

bool Report::overall_pass() const {
  for (const auto& c : checks) {
    if (c.failed()) return false;
  }
  return true;
}

Json Report::to_json(const std::string& timestamp) const {
  Json j;
  j["schema"] = kReportSchema;
  j["tool"] = "fsrigid";
  j["version"] = kToolVersion;
  j["timestamp"] = timestamp;
  j["command"] = command;
  j["config"] = config;
  Json arr = Json::array();
  for (const auto& c : checks) arr.push_back(c.to_json());
  j["checks"] = arr;
  j["results"] = results;
  j["overall"] = overall_pass() ? "pass" : "fail";
  return j;
}

std::string Report::to_text() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    std::string tag = c.status == CheckStatus::pass ? "PASS" : c.status == CheckStatus::fail ? "FAIL" : "FLAG";
    os << tag << "  " << c.name << "  max_error=" << format_double(c.max_error)
       << "  tol=" << format_double(c.tolerance);
    if (!c.details.empty()) os << "  " << c.details;
    os << '\n';
  }
  os << "overall: " << (overall_pass() ? "pass" : "fail") << '\n';
  return os.str();
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

}  // namespace fsrigid
