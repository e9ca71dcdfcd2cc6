// fpl - certify contraction classes on finite metric spaces and audit
// Picard-iteration convergence bounds against them.
//
// Exit codes: 0 success/verified, 1 violation or counterexample found,
// 2 usage or input error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fpl/checks.hpp"
#include "fpl/classify.hpp"
#include "fpl/fuzz.hpp"
#include "fpl/json_io.hpp"
#include "fpl/orbit.hpp"
#include "fpl/version.hpp"

namespace {

using fpl::Json;

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw fpl::InvalidInput("cannot open '" + path + "'");
  Json j;
  in >> j;
  return j;
}

struct CommonOpts {
  bool exact = false;
  bool json = false;
  double tol = 1e-9;
};

void emit(const Json& payload, const std::string& summary, bool as_json) {
  if (as_json) {
    std::cout << payload.dump(2) << "\n";
    std::cerr << summary << "\n";
  } else {
    std::cout << summary << "\n";
  }
}

int cmd_validate(const std::string& path, const CommonOpts& opts) {
  auto run = [&](auto tag) {
    using S = decltype(tag);
    const Json j = load_json(path);
    auto dist = fpl::io::matrix_from_json<S>(j.at("dist"));
    S tol(0);
    if constexpr (!fpl::kExactMode<S>) tol = opts.tol;
    auto report = fpl::validate_metric(dist, tol);
    std::string summary = report.ok
        ? "ok: all metric axioms hold"
        : "violations: " + std::to_string(report.violations.size());
    if (!report.ok && !opts.json) {
      for (const auto& v : report.violations) {
        summary += std::string("\n  ") + fpl::to_string(v.axiom) + " at (";
        for (std::size_t i = 0; i < v.index.size(); ++i)
          summary += (i ? "," : "") + std::to_string(v.index[i]);
        summary += "), magnitude " + fpl::scalar_to_string(v.magnitude);
      }
    }
    emit(fpl::io::validation_report_to_json(report), summary, opts.json);
    return report.ok ? 0 : 1;
  };
  return opts.exact ? run(fpl::Rational()) : run(double());
}

int cmd_classify(const std::string& klass, const std::string& space_path,
                 const std::string& map_path, const CommonOpts& opts) {
  auto run = [&](auto tag) {
    using S = decltype(tag);
    S tol(0);
    if constexpr (!fpl::kExactMode<S>) tol = opts.tol;
    auto space = fpl::io::space_from_json<S>(load_json(space_path), tol);
    auto map = fpl::io::map_from_json(load_json(map_path));
    fpl::Certificate<S> cert = [&] {
      if (klass == "crr") return fpl::classify_crr(space, map, tol);
      if (klass == "gen-crr") return fpl::classify_gen_crr(space, map, tol);
      if (klass == "gen-kannan") return fpl::classify_gen_kannan(space, map, tol);
      return fpl::classify_perimeter(space, map, tol);
    }();
    std::string summary = std::string(fpl::to_string(cert.mapping_class)) + ": " +
                          (cert.feasible ? "feasible" : "infeasible");
    if (cert.strictness)
      summary += ", strictness " + fpl::scalar_to_string(*cert.strictness) +
                 " (threshold " + fpl::scalar_to_string(cert.threshold) + ")";
    for (const auto& [name, value] : cert.coefficients)
      summary += ", " + name + " = " + fpl::scalar_to_string(value);
    emit(fpl::io::certificate_to_json(cert), summary, opts.json);
    return cert.feasible ? 0 : 1;
  };
  return opts.exact ? run(fpl::Rational()) : run(double());
}

int cmd_check_triple(const std::string& d6_path, const std::string& alpha,
                     const std::string& lambda, const CommonOpts& opts) {
  auto run = [&](auto tag) {
    using S = decltype(tag);
    auto table = fpl::io::triple_table_from_json<S>(load_json(d6_path));
    const S a = fpl::scalar_from_string<S>(alpha);
    const S l = fpl::scalar_from_string<S>(lambda);
    const S slack = fpl::check_gen_crr_triple(table, a, l);
    const bool holds = slack >= S(0);
    emit(Json{{"slack", fpl::io::scalar_to_json(slack)}, {"holds", holds}},
         std::string("slack ") + fpl::scalar_to_string(slack) +
             (holds ? " (inequality holds)" : " (inequality violated)"),
         opts.json);
    return holds ? 0 : 1;
  };
  return opts.exact ? run(fpl::Rational()) : run(double());
}

int cmd_fixed_points(const std::string& map_path, const CommonOpts& opts) {
  auto map = fpl::io::map_from_json(load_json(map_path));
  map.check_against(map.size());
  auto fixed = fpl::fixed_points(map);
  auto p2 = fpl::period2_points(map);
  Json j{{"fixed_points", std::vector<int>(fixed.begin(), fixed.end())},
         {"period2_points", std::vector<int>(p2.begin(), p2.end())}};
  std::string summary = "fixed points: " + std::to_string(fixed.size()) +
                        ", prime period 2 points: " + std::to_string(p2.size());
  emit(j, summary, opts.json);
  return 0;
}

int cmd_orbit(const std::string& space_path, const std::string& map_path,
              const std::string& start, const CommonOpts& opts) {
  auto space = fpl::io::space_from_json<double>(load_json(space_path), opts.tol);
  auto map = fpl::io::map_from_json(load_json(map_path));
  const auto report = fpl::orbit_finite(space, map, space.index_of(start));
  std::string summary = "orbit:";
  for (int i : report.sequence) summary += " " + space.labels()[i];
  summary += std::string(" -> ") + fpl::to_string(report.outcome);
  emit(fpl::io::orbit_report_to_json(report, space), summary, opts.json);
  return 0;
}

int cmd_certify(const std::string& space_path, const std::string& map_path,
                const std::string& start, const CommonOpts& opts) {
  auto space = fpl::io::space_from_json<double>(load_json(space_path), opts.tol);
  auto map = fpl::io::map_from_json(load_json(map_path));
  const auto cert = fpl::classify_gen_crr(space, map, opts.tol);
  const auto run = fpl::certified_run(space, map, cert, space.index_of(start), opts.tol);
  std::string summary = std::string("verdict: ") + fpl::to_string(run.verdict);
  if (!run.note.empty()) summary += " (" + run.note + ")";
  if (run.verdict != fpl::TheoremVerdict::premises_unmet)
    summary += ", audited bounds: " + std::to_string(run.audits.size());
  emit(fpl::io::certified_run_to_json(run, space), summary, opts.json);
  return run.verdict == fpl::TheoremVerdict::counterexample ? 1 : 0;
}

int cmd_iterate(const std::string& expr, double x0, double tol, int max_iter,
                const CommonOpts& opts) {
  const auto map = fpl::dsl::parse_map(expr);
  const auto report = fpl::iterate_real(map, x0, tol, max_iter);
  std::string summary =
      (report.converged ? "converged" : "did not converge") + std::string(" after ") +
      std::to_string(report.iterations) + " iterations, final gap " +
      std::to_string(report.final_gap) +
      (report.asymptotically_regular ? " (asymptotically regular)"
                                     : " (not asymptotically regular within budget)");
  emit(fpl::io::real_orbit_to_json(report), summary, opts.json);
  return 0;
}

int cmd_eval(const std::string& expr, double x, const CommonOpts& opts) {
  const auto map = fpl::dsl::parse_map(expr);
  const double value = fpl::dsl::eval_map(map, x);
  emit(Json{{"value", value}}, std::to_string(value), opts.json);
  return 0;
}

int cmd_spotcheck(const std::string& f, const std::string& beta, const std::string& phi,
                  const CommonOpts& opts) {
  fpl::dsl::SpotcheckReport report;
  if (!f.empty()) {
    report = fpl::dsl::spotcheck_f_class(fpl::dsl::parse_func(f, 3));
  } else if (!beta.empty()) {
    report = fpl::dsl::spotcheck_scalar_class(fpl::dsl::parse_func(beta, 1),
                                              fpl::dsl::ScalarClassKind::beta);
  } else if (!phi.empty()) {
    report = fpl::dsl::spotcheck_scalar_class(fpl::dsl::parse_func(phi, 1),
                                              fpl::dsl::ScalarClassKind::phi);
  } else {
    throw fpl::ConfigError("one of --f, --beta, --phi is required");
  }
  std::string summary = report.ok ? "pass" : "fail";
  for (const auto& item : report.items)
    summary += "\n  " + item.name + ": " + (item.pass ? "pass" : "FAIL") + " - " + item.detail;
  emit(fpl::io::spotcheck_to_json(report), summary, opts.json);
  return report.ok ? 0 : 1;
}

int cmd_fuzz(const fpl::FuzzConfig& config, const CommonOpts& opts) {
  const auto report = fpl::fuzz(config);
  std::string summary = "cases: " + std::to_string(config.count) +
                        ", verified: " + std::to_string(report.verified) +
                        ", premises_unmet: " + std::to_string(report.premises_unmet) +
                        ", counterexamples: " + std::to_string(report.counterexample);
  for (const auto& [label, count] : report.labels)
    summary += "\n  " + label + ": " + std::to_string(count);
  emit(fpl::report_to_json(report), summary, opts.json);
  return report.counterexample > 0 ? 1 : 0;
}

int parse_range(const std::string& text, int& lo, int& hi) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) return -1;
  try {
    lo = std::stoi(text.substr(0, dots));
    hi = std::stoi(text.substr(dots + 2));
  } catch (const std::exception&) {
    return -1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certify contraction classes on finite metric spaces and run "
               "Picard iteration with a-priori convergence bounds"};
  app.set_version_flag("--version", std::string(fpl::kToolName) + " " + fpl::kToolVersion);
  app.require_subcommand(1);

  CommonOpts opts;

  auto add_common = [&](CLI::App* cmd, bool with_exact = true) {
    cmd->add_flag("--json", opts.json, "machine-readable output on stdout");
    cmd->add_option("--tol", opts.tol, "float-mode tolerance")->check(CLI::PositiveNumber);
    if (with_exact) cmd->add_flag("--exact", opts.exact, "exact rational arithmetic");
  };

  std::string space_path, map_path, klass, start, expr, alpha = "0", lambda = "0";
  std::string f_expr, beta_expr, phi_expr;
  double x0 = 0, x_at = 0, iter_tol = 1e-12;
  int max_iter = 100000;

  auto* validate = app.add_subcommand("validate", "check the metric axioms of a space file");
  validate->add_option("space", space_path)->required();
  add_common(validate);

  auto* classify = app.add_subcommand("classify", "certify membership in a contraction class");
  classify->add_option("--class", klass, "crr | gen-crr | gen-kannan | perim")
      ->required()
      ->check(CLI::IsMember({"crr", "gen-crr", "gen-kannan", "perim"}));
  classify->add_option("space", space_path)->required();
  classify->add_option("map", map_path)->required();
  add_common(classify);

  auto* check = app.add_subcommand("check-triple",
                                   "slack of the three-point inequality on a distance table");
  check->add_option("--alpha", alpha)->required();
  check->add_option("--lambda", lambda)->required();
  check->add_option("--d6", space_path, "distance table over x,y,z,Tx,Ty,Tz")->required();
  add_common(check);

  auto* fixed = app.add_subcommand("fixed-points", "fixed and prime-period-2 points of a map");
  fixed->add_option("map", map_path)->required();
  add_common(fixed, false);

  auto* orbit = app.add_subcommand("orbit", "Picard orbit from a start point");
  orbit->add_option("space", space_path)->required();
  orbit->add_option("map", map_path)->required();
  orbit->add_option("--start", start)->required();
  add_common(orbit, false);

  auto* certify = app.add_subcommand("certify",
                                     "classify gen-crr and audit the orbit bounds from a start");
  certify->add_option("space", space_path)->required();
  certify->add_option("map", map_path)->required();
  certify->add_option("--start", start)->required();
  add_common(certify, false);

  auto* iterate = app.add_subcommand("iterate", "iterate a real map expression");
  iterate->add_option("--map", expr)->required();
  iterate->add_option("--x0", x0)->required();
  iterate->add_option("--tol", iter_tol);
  iterate->add_option("--max-iter", max_iter)->check(CLI::PositiveNumber);
  iterate->add_flag("--json", opts.json);

  auto* eval = app.add_subcommand("eval", "evaluate a map expression at a point");
  eval->add_option("--map", expr)->required();
  eval->add_option("--x", x_at)->required();
  eval->add_flag("--json", opts.json);

  auto* spot = app.add_subcommand("spotcheck", "advisory checks of F / beta / phi classes");
  spot->add_option("--f", f_expr, "ternary F(u,v,w)");
  spot->add_option("--beta", beta_expr, "unary beta(t)");
  spot->add_option("--phi", phi_expr, "unary phi(t)");
  spot->add_flag("--json", opts.json);

  fpl::FuzzConfig config;
  std::string n_range = "3..6", generator = "euclidean", scenario = "thm31";
  auto* fuzz = app.add_subcommand("fuzz", "seeded scenario runs over random spaces and maps");
  fuzz->add_option("--seed", config.seed);
  fuzz->add_option("--count", config.count)->required();
  fuzz->add_option("--n", n_range, "point count range MIN..MAX");
  fuzz->add_option("--generator", generator)->check(CLI::IsMember({"euclidean", "closure"}));
  fuzz->add_option("--scenario", scenario)
      ->check(CLI::IsMember({"thm31", "thm42", "prop21", "independence", "period2_search"}));
  fuzz->add_option("--tol", config.tol)->check(CLI::PositiveNumber);
  fuzz->add_flag("--json", opts.json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (validate->parsed()) return cmd_validate(space_path, opts);
    if (classify->parsed()) return cmd_classify(klass, space_path, map_path, opts);
    if (check->parsed()) return cmd_check_triple(space_path, alpha, lambda, opts);
    if (fixed->parsed()) return cmd_fixed_points(map_path, opts);
    if (orbit->parsed()) return cmd_orbit(space_path, map_path, start, opts);
    if (certify->parsed()) return cmd_certify(space_path, map_path, start, opts);
    if (iterate->parsed()) return cmd_iterate(expr, x0, iter_tol, max_iter, opts);
    if (eval->parsed()) return cmd_eval(expr, x_at, opts);
    if (spot->parsed()) return cmd_spotcheck(f_expr, beta_expr, phi_expr, opts);
    if (fuzz->parsed()) {
      if (parse_range(n_range, config.n_min, config.n_max) != 0)
        throw fpl::ConfigError("--n expects MIN..MAX");
      config.generator = generator == "euclidean" ? fpl::SpaceGenerator::euclidean
                                                  : fpl::SpaceGenerator::closure;
      config.scenario = fpl::scenario_from_name(scenario);
      if (const char* env = std::getenv("FPL_THREADS")) config.threads = std::atoi(env);
      return cmd_fuzz(config, opts);
    }
  } catch (const fpl::ParseError& e) {
    std::cerr << "error: " << e.what() << " at offset " << e.offset() << "\n";
    return 2;
  } catch (const Json::exception& e) {
    std::cerr << "error: bad input file: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
