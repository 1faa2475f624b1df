#include "fsrigid/cli.hpp"

#include "CLI11.hpp"
#include "fsrigid/koiso_cp.hpp"
#include "fsrigid/obstruction.hpp"
#include "fsrigid/schur_selberg.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

namespace fsrigid {

std::string to_string(Command c) {
  switch (c) {
    case Command::verify_geometry:
      return "verify geometry";
    case Command::verify_integrals:
      return "verify integrals";
    case Command::obstruction:
      return "obstruction";
    case Command::scan:
      return "scan";
    case Command::koiso_cp:
      return "koiso-cp";
  }
  return "?";
}

namespace {

std::string rational_string(const BigRational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

void require(bool ok, const std::string& message) {
  if (!ok) throw UsageError(message);
}

// ------------------------------------------------------------ verify geometry

Report run_geometry(const RunConfig& c) {
  GeometryConfig g;
  g.m = c.m;
  g.n = c.n;
  g.gamma = c.gamma;
  g.seed = c.seed;
  g.samples = c.samples;
  g.fd_step = c.fd_step;
  g.tol = c.tol;
  return verify_geometry_suite(g);
}

// ----------------------------------------------------------- verify integrals

Report run_integrals(const RunConfig& c) {
  Report report;
  const BigRational norm = selberg_normalizer(c.m, c.n);
  const double norm_d = norm.get_d();
  const double norm_quad = selberg_quadrature(TraceWord{}, c.m, c.n, c.quad_order);
  report.add(CheckRecord::measured("integrals.normalizer", std::abs(norm_quad - norm_d) / norm_d, kTolQuadrature,
                                   "constant word against the Selberg normalizer"));
  Json rows = Json::array();
  for (const TraceWord& w : all_trace_words()) {
    if (w.degree() == 0) continue;
    const BigRational exact = trace_word_value(w, c.m, c.n);
    const double value = exact.get_d();
    const double quad = selberg_quadrature(w, c.m, c.n, c.quad_order) / norm_d;
    const double abs_err = std::abs(quad - value);
    const double rel_err = abs_err / std::abs(value);
    report.add(CheckRecord::measured("integrals." + w.to_string(), rel_err, kTolQuadrature, "relative error"));
    Json row;
    row["word"] = w.to_string();
    row["exact"] = rational_string(exact);
    row["value"] = value;
    row["quadrature"] = quad;
    row["abs_error"] = abs_err;
    row["rel_error"] = rel_err;
    rows.push_back(row);
  }
  report.results["rows"] = rows;
  return report;
}

// ---------------------------------------------------------------- obstruction

Report run_obstruction(const RunConfig& c) {
  Report report;
  ObstructionReport r;
  try {
    r = koiso_obstruction();
  } catch (const AssemblyMismatch& e) {
    report.add(CheckRecord::exact("obstruction.total", false, e.what()));
    return report;
  }
  const std::array<std::string, 3> names{"cubic", "grad", "mixed"};
  const std::array<const RatFunc*, 3> terms{&r.cubic_term, &r.grad_term, &r.mixed_term};
  for (int k = 0; k < 3; ++k) {
    report.add(CheckRecord::exact("obstruction." + names[k], r.term_matches[k], "equals the closed-form multiple of int f^3"));
  }
  report.add(CheckRecord::exact("obstruction.total", r.total_matches,
                                "2(n+m) cubic + 3 grad - 6 mixed equals the product formula"));

  // (n - m) total has no pole on m = n and vanishes there
  const RatFunc cleared = (RatFunc(MPoly::n() - MPoly::m()) * r.total).normalized();
  bool cleared_ok = true;
  for (int k = 2; k <= 8; ++k) {
    cleared_ok = cleared_ok && cleared.den().eval(BigRational(k), BigRational(k)) != 0 &&
                 cleared.num().eval(BigRational(k), BigRational(k)) == 0;
  }
  report.add(CheckRecord::exact("obstruction.cleared_vanishes_on_diagonal", cleared_ok, "(n - m) times total at m = n, 2 <= m <= 8"));

  Json res = Json::object();
  res["cubic"] = r.cubic_term.to_string();
  res["grad"] = r.grad_term.to_string();
  res["mixed"] = r.mixed_term.to_string();
  res["f_cubed"] = r.f_cubed.to_string();
  res["total"] = r.total.to_string();
  res["product_formula"] = expected_total().to_string();
  res["verdict"] = r.total_matches;
  Json at = Json::object();
  at["m"] = c.m;
  at["n"] = c.n;
  if (c.m != c.n) {
    for (int k = 0; k < 3; ++k) at[names[k]] = rational_string(rf_eval(*terms[k], c.m, c.n));
    at["f_cubed"] = rational_string(rf_eval(r.f_cubed, c.m, c.n));
    at["total"] = rational_string(rf_eval(r.total, c.m, c.n));
  } else {
    at["note"] = "n = m: the closed forms have a removable denominator n - m";
  }
  res["at"] = at;
  report.results = res;

  if (!c.symbolic) {
    BridgeConfig b;
    b.m = c.m;
    b.n = c.n;
    b.seed = c.seed;
    b.samples = kBridgeSamples;
    b.tol = kTolBridge;
    const Report bridge = zds_bridge(b);
    report.append(bridge);
    report.results["bridge"] = bridge.results;
  }
  return report;
}

// ----------------------------------------------------------------------- scan

Report run_scan(const RunConfig& c) {
  Report report;
  const RatFunc total = expected_total();
  const auto rows = rigidity_scan(total, c.max_dim, c.include_even);
  Json table = Json::array();
  bool all_nonzero = true;
  int asserted = 0;
  for (const auto& row : rows) {
    Json j;
    j["m"] = row.m;
    j["n"] = row.n;
    j["value"] = rational_string(row.value);
    j["nonzero"] = row.nonzero;
    j["asserted"] = row.asserted;
    if (!row.note.empty()) j["note"] = row.note;
    table.push_back(j);
    if (row.asserted) {
      ++asserted;
      all_nonzero = all_nonzero && row.nonzero;
    }
  }
  report.add(CheckRecord::exact("scan.odd_rows_nonzero", all_nonzero && asserted > 0,
                                std::to_string(asserted) + " rows with n + m odd"));
  report.add(CheckRecord::exact("scan.vanishes_at_m1", total.at_m(BigRational(1)).is_zero(),
                                "total restricted to m = 1"));
  const RatFunc f3 = integral_f_cubed();
  bool diagonal = true;
  for (int k = 2; 2 * k <= c.max_dim; ++k) diagonal = diagonal && rf_eval(f3, k, k) == 0;
  report.add(CheckRecord::exact("scan.f_cubed_vanishes_on_diagonal", diagonal, "int f^3 at m = n"));
  report.results["rows"] = table;
  return report;
}

// ------------------------------------------------------------------ rendering

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void render_results(std::ostream& os, const Json& results, const std::string& prefix) {
  for (const auto& [key, value] : results.items()) {
    if (value.is_array()) {
      os << prefix << key << ":\n";
      for (const auto& row : value) {
        os << prefix << "  ";
        if (row.is_object()) {
          bool first = true;
          for (const auto& [k, v] : row.items()) {
            os << (first ? "" : "  ") << k << '=' << scalar_text(v);
            first = false;
          }
        } else {
          os << scalar_text(row);
        }
        os << '\n';
      }
    } else if (value.is_object()) {
      os << prefix << key << ":\n";
      render_results(os, value, prefix + "  ");
    } else {
      os << prefix << key << ": " << scalar_text(value) << '\n';
    }
  }
}

}  // namespace

void validate(const RunConfig& c) {
  switch (c.command) {
    case Command::verify_geometry:
      require(c.m >= 1 && c.m <= 6 && c.n >= 1 && c.n <= 6, "geometry requires 1 <= m, n <= 6");
      require(c.samples >= 1 && c.samples <= 10000, "samples must be in [1, 10000]");
      require(c.fd_step > 0.0 && c.fd_step < 0.1, "fd-step must be in (0, 0.1)");
      require(c.tol > 0.0, "tol must be positive");
      break;
    case Command::verify_integrals:
      require(c.m >= 1 && c.m <= 4, "integrals require 1 <= m <= 4");
      require(c.n >= c.m && c.n <= 60, "integrals require m <= n <= 60");
      require(c.quad_order >= 2 && c.quad_order <= 200, "quad-order must be in [2, 200]");
      break;
    case Command::obstruction:
      require(c.m >= 1 && c.m <= 6 && c.n >= 1 && c.n <= 6, "obstruction requires 1 <= m, n <= 6");
      break;
    case Command::scan:
      require(c.max_dim >= 5 && c.max_dim <= 60, "max-dim must be in [5, 60]");
      break;
    case Command::koiso_cp:
      break;
  }
}

Json config_json(const RunConfig& c) {
  Json j;
  j["command"] = to_string(c.command);
  switch (c.command) {
    case Command::verify_geometry:
      j["m"] = c.m;
      j["n"] = c.n;
      j["gamma"] = c.gamma == GammaKind::special ? "special" : "random";
      j["seed"] = c.seed;
      j["samples"] = c.samples;
      j["fd_step"] = c.fd_step;
      j["tol"] = c.tol;
      break;
    case Command::verify_integrals:
      j["m"] = c.m;
      j["n"] = c.n;
      j["quad_order"] = c.quad_order;
      break;
    case Command::obstruction:
      j["m"] = c.m;
      j["n"] = c.n;
      j["symbolic"] = c.symbolic;
      if (!c.symbolic) {
        j["seed"] = c.seed;
        j["bridge_samples"] = kBridgeSamples;
      }
      break;
    case Command::scan:
      j["max_dim"] = c.max_dim;
      j["include_even"] = c.include_even;
      break;
    case Command::koiso_cp:
      break;
  }
  j["output"] = c.output == OutputFormat::json ? "json" : "text";
  return j;
}

Report run(const RunConfig& c) {
  validate(c);
  Report report;
  switch (c.command) {
    case Command::verify_geometry:
      report = run_geometry(c);
      break;
    case Command::verify_integrals:
      report = run_integrals(c);
      break;
    case Command::obstruction:
      report = run_obstruction(c);
      break;
    case Command::scan:
      report = run_scan(c);
      break;
    case Command::koiso_cp:
      report = koiso_report();
      break;
  }
  report.command = to_string(c.command);
  report.config = config_json(c);
  return report;
}

std::string render(const Report& report, OutputFormat format, const std::string& timestamp) {
  if (format == OutputFormat::json) return report.to_json(timestamp).dump(2) + "\n";
  std::ostringstream os;
  os << "fsrigid " << kToolVersion << "  " << report.command << '\n';
  render_results(os, report.results, "");
  os << report.to_text();
  return os.str();
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Verification engine for the Fubini-Study rigidity computation"};
  app.require_subcommand(1);
  RunConfig c;
  bool json = false;

  auto add_json = [&](CLI::App* sub) { sub->add_flag("--json", json, "Emit a JSON report"); };

  CLI::App* verify = app.add_subcommand("verify", "Numeric verification suites");
  verify->require_subcommand(1);

  CLI::App* geometry = verify->add_subcommand("geometry", "Chart geometry at seeded random points");
  std::string gamma = "special";
  geometry->add_option("--m", c.m, "Rank m")->capture_default_str();
  geometry->add_option("--n", c.n, "Corank n")->capture_default_str();
  geometry->add_option("--gamma", gamma, "special or random")
      ->check(CLI::IsMember({"special", "random"}))
      ->capture_default_str();
  geometry->add_option("--samples", c.samples, "Random chart points")->capture_default_str();
  geometry->add_option("--seed", c.seed, "RNG seed")->capture_default_str();
  geometry->add_option("--fd-step", c.fd_step, "Finite-difference step")->capture_default_str();
  geometry->add_option("--tol", c.tol, "Tolerance for finite-difference checks")->capture_default_str();
  add_json(geometry);

  CLI::App* integrals = verify->add_subcommand("integrals", "Exact integrals against quadrature");
  integrals->add_option("--m", c.m, "Rank m")->capture_default_str();
  integrals->add_option("--n", c.n, "Corank n")->capture_default_str();
  integrals->add_option("--quad-order", c.quad_order, "Gauss-Legendre order")->capture_default_str();
  add_json(integrals);

  CLI::App* obstruction = app.add_subcommand("obstruction", "Assembled second-order obstruction");
  obstruction->add_flag("--symbolic", c.symbolic, "Symbolic assembly only, no numeric bridge");
  obstruction->add_option("--m", c.m, "Rank for evaluation and the bridge")->capture_default_str();
  obstruction->add_option("--n", c.n, "Corank for evaluation and the bridge")->capture_default_str();
  obstruction->add_option("--seed", c.seed, "RNG seed for the bridge")->capture_default_str();
  add_json(obstruction);

  CLI::App* scan = app.add_subcommand("scan", "Rigidity table over (m, n)");
  scan->add_option("--max-dim", c.max_dim, "Largest n + m")->capture_default_str();
  scan->add_flag("--include-even", c.include_even, "Also list rows with n + m even");
  add_json(scan);

  CLI::App* koiso = app.add_subcommand("koiso-cp", "Koiso's identities on CP^n");
  add_json(koiso);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "usage error: " << e.what() << '\n';
    return 2;
  }

  if (geometry->parsed()) {
    c.command = Command::verify_geometry;
  } else if (integrals->parsed()) {
    c.command = Command::verify_integrals;
  } else if (obstruction->parsed()) {
    c.command = Command::obstruction;
  } else if (scan->parsed()) {
    c.command = Command::scan;
  } else {
    c.command = Command::koiso_cp;
  }
  c.gamma = gamma == "random" ? GammaKind::random : GammaKind::special;
  c.output = json ? OutputFormat::json : OutputFormat::text;

  Report report;
  try {
    report = run(c);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  out << render(report, c.output, utc_timestamp());
  return report.exit_code();
}

}  // namespace fsrigid
