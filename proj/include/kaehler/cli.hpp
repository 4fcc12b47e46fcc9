#pragma once
// Run configuration, suite execution and report serialization for the
// verify tool. Configuration arrives as key=value pairs (config file first,
// command-line values on top) and is validated before any computation.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "kaehler/crextend.hpp"
#include "kaehler/verify.hpp"

namespace kaehler {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class GeometryKind { kSphere, kTube, kEllipsoid, kLevelSet };

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"identity", "boundary", "inequalities", "minkowski",
                                                 "spectra",  "rigidity", "extend"};
  return names;
}

/// Named level sets for pointwise checks (they carry no parametrization).
inline const std::vector<std::string>& level_set_names() {
  static const std::vector<std::string> names = {"egg"};
  return names;
}

struct RunConfig {
  std::string space = "ch";
  int n = 2;
  GeometryKind geometry = GeometryKind::kSphere;
  double radius = 0.5;        // sphere or tube radius
  int tube_k = 0;
  std::vector<double> semi;   // ellipsoid semi-axes, N complex or 2N real
  std::string level_set;
  std::vector<std::string> suites = suite_names();
  QuadratureOrders orders;
  Tolerances tol;
  int threads = 0;            // 0: environment variable or hardware
  std::uint64_t seed = 0;
  std::string output;         // JSON path, empty for stdout
  std::string csv;
  bool timings = false;

  int kappa() const { return space == "flat" ? 0 : space == "ch" ? -1 : 1; }
};

using KeyValues = std::map<std::string, std::string>;

/// key=value lines; '#' starts a comment, blank lines are skipped.
inline KeyValues parse_key_values(std::istream& in) {
  KeyValues kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    const auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      if (b == std::string::npos) return std::string();
      return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value");
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

inline KeyValues load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  return parse_key_values(in);
}

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

inline double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size() || !std::isfinite(d)) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected a number, got '" + v + "'");
  }
}

inline long long to_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long long i = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return i;
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected an integer, got '" + v + "'");
  }
}

inline bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(key + ": expected true or false, got '" + v + "'");
}

inline std::map<std::string, double Tolerances::*> tolerance_fields() {
  return {{"identity", &Tolerances::identity},
          {"duality", &Tolerances::duality},
          {"div_t", &Tolerances::div_t},
          {"compare", &Tolerances::compare},
          {"spectrum", &Tolerances::spectrum},
          {"tube_spectrum", &Tolerances::tube_spectrum},
          {"alpha_constant", &Tolerances::alpha_constant},
          {"minkowski", &Tolerances::minkowski},
          {"inequality", &Tolerances::inequality},
          {"codazzi", &Tolerances::codazzi},
          {"quadratic", &Tolerances::quadratic},
          {"berndt", &Tolerances::berndt},
          {"hessian", &Tolerances::hessian},
          {"equality_case", &Tolerances::equality_case},
          {"extension", &Tolerances::extension}};
}

}  // namespace detail

/// Builds and validates a configuration from merged key/value pairs.
inline RunConfig make_config(const KeyValues& kv) {
  RunConfig c;
  int geometries = 0;
  const auto tols = detail::tolerance_fields();
  for (const auto& [key, v] : kv) {
    if (key == "space") {
      if (v != "flat" && v != "ch" && v != "cp") throw ConfigError("space must be flat, ch or cp, got '" + v + "'");
      c.space = v;
    } else if (key == "n") {
      c.n = int(detail::to_int(key, v));
    } else if (key == "sphere") {
      ++geometries;
      c.geometry = GeometryKind::kSphere;
      c.radius = detail::to_double(key, v);
    } else if (key == "tube") {
      ++geometries;
      const auto parts = detail::split(v, ',');
      if (parts.size() != 2) throw ConfigError("tube: expected k,a");
      c.geometry = GeometryKind::kTube;
      c.tube_k = int(detail::to_int(key, parts[0]));
      c.radius = detail::to_double(key, parts[1]);
    } else if (key == "ellipsoid") {
      ++geometries;
      c.geometry = GeometryKind::kEllipsoid;
      c.semi.clear();
      for (const auto& p : detail::split(v, ',')) c.semi.push_back(detail::to_double(key, p));
    } else if (key == "levelset") {
      ++geometries;
      c.geometry = GeometryKind::kLevelSet;
      c.level_set = v;
    } else if (key == "suite") {
      c.suites.clear();
      for (const auto& s : detail::split(v, ',')) {
        if (s == "all") {
          c.suites = suite_names();
          break;
        }
        if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
          throw ConfigError("unknown suite '" + s + "'");
        c.suites.push_back(s);
      }
    } else if (key == "lat") {
      c.orders.lat = int(detail::to_int(key, v));
    } else if (key == "lon") {
      c.orders.lon = int(detail::to_int(key, v));
    } else if (key == "radial") {
      c.orders.radial = int(detail::to_int(key, v));
    } else if (key == "threads") {
      c.threads = int(detail::to_int(key, v));
    } else if (key == "seed") {
      c.seed = std::uint64_t(detail::to_int(key, v));
    } else if (key == "output") {
      c.output = v;
    } else if (key == "csv") {
      c.csv = v;
    } else if (key == "timings") {
      c.timings = detail::to_bool(key, v);
    } else if (key.rfind("tol.", 0) == 0 && tols.count(key.substr(4))) {
      const double t = detail::to_double(key, v);
      if (!(t >= 0.0)) throw ConfigError(key + ": tolerance must be nonnegative");
      c.tol.*tols.at(key.substr(4)) = t;
    } else {
      throw ConfigError("unknown configuration key '" + key + "'");
    }
  }

  if (geometries > 1) throw ConfigError("give at most one of sphere, tube, ellipsoid, levelset");
  if (c.n != 2 && c.n != 3) throw ConfigError("n must be 2 or 3");
  if (c.orders.lat < 1 || c.orders.lon < 1 || c.orders.radial < 1)
    throw ConfigError("quadrature orders must be positive");
  if (c.threads < 0) throw ConfigError("threads must be nonnegative");
  const double half_pi = std::numbers::pi / 2;
  switch (c.geometry) {
    case GeometryKind::kSphere:
      if (!(c.radius > 0.0)) throw ConfigError("radius must be positive");
      if (c.space == "cp" && c.radius >= half_pi) throw ConfigError("radius must be < π/2");
      break;
    case GeometryKind::kTube:
      if (c.space != "cp") throw ConfigError("tubes are only defined in cp");
      if (c.tube_k < 0 || c.tube_k > c.n - 1) throw ConfigError("tube core dimension must satisfy 0 <= k <= n-1");
      if (!(c.radius > 0.0) || c.radius >= half_pi) throw ConfigError("tube radius must lie in (0, π/2)");
      break;
    case GeometryKind::kEllipsoid: {
      if (int(c.semi.size()) != c.n && int(c.semi.size()) != 2 * c.n)
        throw ConfigError("ellipsoid needs n complex or 2n real semi-axes");
      for (double s : c.semi)
        if (!(s > 0.0)) throw ConfigError("ellipsoid semi-axes must be positive");
      const double smax = *std::max_element(c.semi.begin(), c.semi.end());
      if (c.space == "ch" && smax >= 1.0) throw ConfigError("ellipsoid must lie inside the unit ball model");
      break;
    }
    case GeometryKind::kLevelSet:
      if (std::find(level_set_names().begin(), level_set_names().end(), c.level_set) == level_set_names().end())
        throw ConfigError("unknown level set '" + c.level_set + "'");
      break;
  }
  return c;
}

inline std::string geometry_tag(const RunConfig& c) {
  std::ostringstream os;
  switch (c.geometry) {
    case GeometryKind::kSphere:
      os << "sphere(" << c.radius << ")";
      break;
    case GeometryKind::kTube:
      os << "tube(" << c.tube_k << "," << c.radius << ")";
      break;
    case GeometryKind::kEllipsoid:
      os << "ellipsoid(";
      for (std::size_t i = 0; i < c.semi.size(); ++i) os << (i ? "," : "") << c.semi[i];
      os << ")";
      break;
    case GeometryKind::kLevelSet:
      os << "levelset(" << c.level_set << ")";
      break;
  }
  return os.str();
}

template <int N>
Hypersurface<N> build_surface(const RunConfig& c, const SpaceForm<N>& space) {
  switch (c.geometry) {
    case GeometryKind::kSphere:
      return sphere(space, c.radius);
    case GeometryKind::kTube:
      return tube(space, c.tube_k, c.radius);
    case GeometryKind::kEllipsoid: {
      std::array<double, 2 * N> s;
      for (int j = 0; j < N; ++j) {
        if (int(c.semi.size()) == N) {
          s[2 * j] = s[2 * j + 1] = c.semi[j];
        } else {
          s[2 * j] = c.semi[2 * j];
          s[2 * j + 1] = c.semi[2 * j + 1];
        }
      }
      return real_ellipsoid(space, s);
    }
    default: {
      // egg: |z|^2 + 0.3 Re(z_1^2) = 0.25
      const auto x = ScalarField<N>::coord(0), y = ScalarField<N>::coord(1);
      return level_set(ScalarField<N>::norm2() + 0.3 * (x * x - y * y) - 0.25);
    }
  }
}

struct TimedReport {
  ResidualReport report;
  double seconds = 0.0;
};

struct RunReport {
  RunConfig config;
  std::vector<TimedReport> checks;
  int threads = 1;

  bool pass() const {
    for (const auto& c : checks)
      if (c.report.failed()) return false;
    return true;
  }
  int exit_code() const { return pass() ? 0 : 1; }
};

template <int N>
RunReport run_dim(const RunConfig& c) {
  RunReport rr;
  rr.config = c;
  rr.threads = resolve_threads(c.threads);
  const SpaceForm<N> space(c.kappa());
  const Domain<N> d(space, build_surface<N>(c, space), c.orders, rr.threads);
  const std::uint64_t s = c.seed;
  const int samples = 50;

  // One job per suite; the reports keep the suite order.
  const std::map<std::string, std::function<std::vector<ResidualReport>()>> jobs = {
      {"identity", [&] { return identity_suite(d, c.tol); }},
      {"boundary", [&] { return boundary_suite(d, c.tol, samples, 20, 19 + s); }},
      {"inequalities",
       [&] {
         std::vector<ResidualReport> out{check_inv_hb(d, c.tol.inequality), check_iso(d, c.tol.inequality)};
         for (auto& r : check_equality_case(space, d.surface(), c.tol.equality_case, samples, 11 + s))
           out.push_back(std::move(r));
         return out;
       }},
      {"minkowski", [&] { return std::vector<ResidualReport>{check_minkowski(d, c.tol.minkowski)}; }},
      {"spectra", [&] { return spectra_suite(space, d.surface(), c.tol, samples, 13 + s); }},
      {"rigidity", [&] { return rigidity_suite(space, d.surface(), c.tol, samples, 17 + s); }},
      {"extend",
       [&]() -> std::vector<ResidualReport> {
         const std::string anchor = "harmonic extension of CR data is holomorphic";
         if constexpr (N != 2) {
           return {status_report("extension", anchor, Status::kNotApplicable, "implemented for n = 2")};
         } else {
           if (space.kappa() != 0)
             return {status_report("extension", anchor, Status::kNotApplicable, "Poisson extension needs the flat ball")};
           ExtensionSettings es;
           es.threads = rr.threads;
           es.seed = 23 + s;
           return extension_suite<N>(c.tol, es);
         }
       }},
  };
  for (const auto& name : suite_names()) {
    if (std::find(c.suites.begin(), c.suites.end(), name) == c.suites.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<ResidualReport> reps;
    try {
      reps = jobs.at(name)();
    } catch (const std::exception& e) {
      reps = {status_report(name + "/error", "suite execution", Status::kFail, e.what())};
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    for (auto& r : reps) rr.checks.push_back({std::move(r), dt / std::max<std::size_t>(1, reps.size())});
  }
  return rr;
}

inline RunReport run(const RunConfig& c) { return c.n == 3 ? run_dim<3>(c) : run_dim<2>(c); }

// ---------------------------------------------------------------------------
// Serialization.

inline nlohmann::ordered_json complex_json(cplx z) {
  return nlohmann::ordered_json{{"re", z.real()}, {"im", z.imag()}};
}

/// JSON report. Thread count and timings are left out unless requested, so
/// equal configurations give equal bytes.
inline nlohmann::ordered_json to_json(const RunReport& rr) {
  using J = nlohmann::ordered_json;
  const auto& c = rr.config;
  J cfg;
  cfg["space"] = c.space;
  cfg["n"] = c.n;
  cfg["geometry"] = geometry_tag(c);
  cfg["suites"] = c.suites;
  cfg["orders"] = J{{"lat", c.orders.lat}, {"lon", c.orders.lon}, {"radial", c.orders.radial}};
  J tol = J::object();
  for (const auto& [name, field] : detail::tolerance_fields()) tol[name] = c.tol.*field;
  cfg["tolerances"] = tol;
  cfg["seed"] = c.seed;
  if (c.timings) cfg["threads"] = rr.threads;

  J checks = J::array();
  int counts[4] = {0, 0, 0, 0};
  for (const auto& t : rr.checks) {
    const auto& r = t.report;
    ++counts[int(r.status)];
    J j;
    j["check_id"] = r.check_id;
    j["anchor"] = r.anchor;
    j["status"] = status_name(r.status);
    j["pass"] = r.pass();
    j["lhs"] = complex_json(r.lhs);
    j["rhs"] = complex_json(r.rhs);
    j["residual"] = r.residual;
    j["abs_residual"] = r.abs_residual;
    j["scale"] = r.scale;
    j["tolerance"] = r.tolerance;
    j["residual_kind"] = kind_name(r.kind);
    j["quadrature"] = J{{"lat", r.lat}, {"lon", r.lon}, {"radial", r.radial}, {"nodes", r.nodes},
                        {"error_estimate", r.quad_error}};
    j["samples"] = r.samples;
    j["note"] = r.note;
    if (c.timings) j["seconds"] = t.seconds;
    checks.push_back(std::move(j));
  }
  J out;
  out["schema"] = kSchemaVersion;
  out["version"] = kVersion;
  out["config"] = cfg;
  out["checks"] = checks;
  out["summary"] = J{{"checks", rr.checks.size()},
                     {"pass", counts[int(Status::kPass)]},
                     {"fail", counts[int(Status::kFail)]},
                     {"hypothesis_failed", counts[int(Status::kHypothesisFailed)]},
                     {"not_applicable", counts[int(Status::kNotApplicable)]},
                     {"overall_pass", rr.pass()}};
  return out;
}

inline std::string csv_field(const std::string& s) {
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

inline std::string csv_number(cplx z) {
  std::ostringstream os;
  os.precision(17);
  os << z.real();
  if (z.imag() != 0.0) os << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
  return os.str();
}

/// One row per check; a trailing status column separates hypothesis
/// failures and inapplicable checks from plain failures.
inline std::string to_csv(const RunReport& rr) {
  std::ostringstream os;
  os << "check_id,anchor,lhs,rhs,residual,tolerance,pass,status\n";
  for (const auto& t : rr.checks) {
    const auto& r = t.report;
    os << csv_field(r.check_id) << ',' << csv_field(r.anchor) << ',' << csv_number(r.lhs) << ','
       << csv_number(r.rhs) << ',' << csv_number(r.residual) << ',' << csv_number(r.tolerance) << ','
       << (r.pass() ? "true" : "false") << ',' << status_name(r.status) << '\n';
  }
  return os.str();
}

}  // namespace kaehler
