#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "fpl/checks.hpp"
#include "fpl/classify.hpp"
#include "fpl/metric.hpp"
#include "fpl/orbit.hpp"
#include "fpl/selfmap.hpp"
#include "fpl/version.hpp"

namespace fpl {

using Json = nlohmann::json;

namespace io {

/// Reads one distance entry. Strings parse exactly; plain numbers are
/// accepted in float mode but must be integral in exact mode, where
/// non-integers need decimal strings to stay unambiguous.
template <ScalarMode S>
S scalar_from_json(const Json& v) {
  if (v.is_string()) return scalar_from_string<S>(v.get<std::string>());
  if (v.is_number_integer()) return scalar_from_int<S>(v.get<long>());
  if (v.is_number_float()) {
    if constexpr (kExactMode<S>)
      throw InvalidInput(
          "exact mode requires non-integer entries as decimal strings, got " +
          v.dump());
    else
      return v.get<double>();
  }
  throw InvalidInput("expected a number or numeric string, got " + v.dump());
}

template <ScalarMode S>
Json scalar_to_json(const S& v) {
  if constexpr (kExactMode<S>) return format_rational(v);
  else return v;
}

template <ScalarMode S>
Matrix<S> matrix_from_json(const Json& rows) {
  if (!rows.is_array() || rows.empty())
    throw InvalidInput("'dist' must be a non-empty array of rows");
  std::vector<std::vector<S>> data;
  data.reserve(rows.size());
  for (const auto& row : rows) {
    if (!row.is_array()) throw InvalidInput("'dist' rows must be arrays");
    std::vector<S> r;
    r.reserve(row.size());
    for (const auto& v : row) r.push_back(scalar_from_json<S>(v));
    data.push_back(std::move(r));
  }
  return Matrix<S>::from_rows(data);
}

template <ScalarMode S>
Json matrix_to_json(const Matrix<S>& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.size(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.size(); ++j) row.push_back(scalar_to_json(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Space file: {"points": ["x", "y"], "dist": [[...], [...]]}.
template <ScalarMode S>
FiniteMetricSpace<S> space_from_json(const Json& j, const S& tol = default_tol<S>()) {
  if (!j.is_object() || !j.contains("dist"))
    throw InvalidInput("space file needs an object with a 'dist' matrix");
  Matrix<S> dist = matrix_from_json<S>(j.at("dist"));
  std::vector<std::string> labels;
  if (j.contains("points")) {
    for (const auto& p : j.at("points")) labels.push_back(p.get<std::string>());
  } else {
    for (int i = 0; i < dist.size(); ++i) labels.push_back("p" + std::to_string(i));
  }
  return FiniteMetricSpace<S>::create(std::move(labels), std::move(dist), tol);
}

template <ScalarMode S>
Json space_to_json(const FiniteMetricSpace<S>& space) {
  return Json{{"points", space.labels()}, {"dist", matrix_to_json(space.matrix())}};
}

/// Map file: {"image": [0, 1, 0]}.
inline SelfMap map_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("image"))
    throw InvalidInput("map file needs an object with an 'image' array");
  SelfMap map;
  for (const auto& v : j.at("image")) {
    if (!v.is_number_integer()) throw InvalidInput("'image' entries must be integers");
    map.image.push_back(v.get<int>());
  }
  return map;
}

inline Json map_to_json(const SelfMap& map) { return Json{{"image", map.image}}; }

/// Triple table file: {"dist": 6x6} with rows in role order
/// x, y, z, Tx, Ty, Tz (an optional "labels" array documents the order).
template <ScalarMode S>
TripleTable<S> triple_table_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dist"))
    throw InvalidInput("triple table file needs an object with a 'dist' matrix");
  if (j.contains("labels")) {
    const std::vector<std::string> expected{"x", "y", "z", "Tx", "Ty", "Tz"};
    if (j.at("labels").get<std::vector<std::string>>() != expected)
      throw InvalidInput("triple table labels must be x, y, z, Tx, Ty, Tz in order");
  }
  return TripleTable<S>::from_matrix(matrix_from_json<S>(j.at("dist")));
}

template <ScalarMode S>
Json certificate_to_json(const Certificate<S>& cert) {
  Json coeffs = Json::object();
  for (const auto& [name, value] : cert.coefficients) coeffs[name] = scalar_to_json(value);
  Json j{{"class", to_string(cert.mapping_class)},
         {"mode", kExactMode<S> ? "exact" : "float"},
         {"feasible", cert.feasible},
         {"coefficients", coeffs},
         {"threshold", scalar_to_json(cert.threshold)},
         {"binding", cert.binding},
         {"tol", scalar_to_json(cert.tol)}};
  j["strictness"] = cert.strictness ? scalar_to_json(*cert.strictness) : Json();
  j["margin"] = cert.margin ? scalar_to_json(*cert.margin) : Json();
  return j;
}

template <ScalarMode S>
Json validation_report_to_json(const ValidationReport<S>& report) {
  Json violations = Json::array();
  for (const auto& v : report.violations)
    violations.push_back(Json{{"axiom", to_string(v.axiom)},
                              {"index", v.index},
                              {"magnitude", scalar_to_json(v.magnitude)}});
  return Json{{"ok", report.ok}, {"violations", violations}};
}

template <ScalarMode S>
Json orbit_report_to_json(const OrbitReport<S>& r, const FiniteMetricSpace<S>& space) {
  Json gaps = Json::array();
  for (const auto& g : r.gaps) gaps.push_back(scalar_to_json(g));
  Json labels = Json::array();
  for (int i : r.sequence) labels.push_back(space.labels()[i]);
  Json j{{"start", r.start},
         {"sequence", r.sequence},
         {"labels", labels},
         {"gaps", gaps},
         {"outcome", to_string(r.outcome)}};
  if (r.outcome == OrbitOutcome::fixed_point) {
    j["fixed_index"] = r.fixed_index;
    j["fixed_step"] = r.fixed_step;
  } else if (r.outcome == OrbitOutcome::cycle) {
    j["cycle_entry"] = r.cycle_entry;
    j["cycle_period"] = r.cycle_period;
  }
  return j;
}

template <ScalarMode S>
Json certified_run_to_json(const CertifiedRun<S>& run, const FiniteMetricSpace<S>& space) {
  Json audits = Json::array();
  for (const auto& a : run.audits)
    audits.push_back(Json{{"kind", a.kind},
                          {"step", a.step},
                          {"bound", a.bound},
                          {"observed", a.observed},
                          {"pass", a.pass}});
  return Json{{"orbit", orbit_report_to_json(run.orbit, space)},
              {"alpha", run.alpha},
              {"lambda", run.lambda},
              {"gamma", run.gamma},
              {"gap_base", run.gap_base},
              {"audits", audits},
              {"verdict", to_string(run.verdict)},
              {"note", run.note}};
}

inline Json real_orbit_to_json(const RealOrbitReport& r) {
  return Json{{"converged", r.converged},
              {"asymptotically_regular", r.asymptotically_regular},
              {"final_gap", r.final_gap},
              {"iterations", r.iterations},
              {"last_iterate", r.iterates.back()}};
}

inline Json spotcheck_to_json(const dsl::SpotcheckReport& r) {
  Json items = Json::array();
  for (const auto& item : r.items)
    items.push_back(Json{{"name", item.name}, {"pass", item.pass}, {"detail", item.detail}});
  return Json{{"ok", r.ok}, {"checks", items}};
}

/// FNV-1a 64 over a canonical JSON dump; used as the space digest in
/// fuzz reports.
inline std::string digest(const Json& j) {
  const std::string s = j.dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace io
}  // namespace fpl
