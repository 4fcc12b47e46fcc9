// verify: run the check suites on one geometry and write a JSON report.
//
//   verify --space ch --sphere 0.5 --suite all
//   verify --config run.cfg --threads 4 --output report.json --csv report.csv
//
// Exit status: 0 when no check fails, 1 on a failed check, 2 on a bad
// configuration.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "kaehler/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification of Kaehler integral identities and inequalities"};
  app.set_version_flag("--version", std::string(kaehler::kVersion));

  std::string config_path;
  kaehler::KeyValues cli;
  app.add_option("--config", config_path, "key=value configuration file; command-line flags override it");
  // Every other flag is kept as text and validated together with the file.
  const std::vector<std::pair<std::string, std::string>> flags = {
      {"space", "flat, ch or cp (default ch)"},
      {"n", "complex dimension, 2 or 3"},
      {"sphere", "geodesic sphere radius (default 0.5)"},
      {"tube", "tube about CP^k in cp: k,a"},
      {"ellipsoid", "chart ellipsoid semi-axes: n complex or 2n real values, comma separated"},
      {"levelset", "named level set (egg)"},
      {"suite", "comma separated: identity, boundary, inequalities, minkowski, spectra, rigidity, extend, all"},
      {"lat", "latitude Gauss-Legendre order"},
      {"lon", "longitude trapezoid order"},
      {"radial", "radial Gauss-Legendre order"},
      {"threads", "worker threads; 0 uses KAEHLER_THREADS or the hardware count"},
      {"seed", "offset for the sampling seeds"},
      {"output", "JSON report path (default stdout)"},
      {"csv", "CSV projection path"},
  };
  std::map<std::string, std::string> values;
  for (const auto& [name, help] : flags) app.add_option("--" + name, values[name], help);
  bool timings = false;
  app.add_flag("--timings", timings, "include thread count and per-check wall-clock time in the JSON");
  std::vector<std::string> tol_overrides;
  app.add_option("--tol", tol_overrides, "tolerance override name=value (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  kaehler::RunConfig config;
  try {
    kaehler::KeyValues kv;
    if (!config_path.empty()) kv = kaehler::load_config_file(config_path);
    for (const auto& [name, help] : flags)
      if (app.count("--" + name)) kv[name] = values[name];
    if (timings) kv["timings"] = "true";
    for (const auto& t : tol_overrides) {
      const auto eq = t.find('=');
      if (eq == std::string::npos) throw kaehler::ConfigError("--tol expects name=value");
      kv["tol." + t.substr(0, eq)] = t.substr(eq + 1);
    }
    config = kaehler::make_config(kv);
  } catch (const kaehler::ConfigError& e) {
    std::cerr << "verify: " << e.what() << "\n";
    return 2;
  }

  const kaehler::RunReport report = kaehler::run(config);
  const std::string json = kaehler::to_json(report).dump(2) + "\n";
  if (config.output.empty()) {
    std::cout << json;
  } else {
    std::ofstream(config.output) << json;
  }
  if (!config.csv.empty()) std::ofstream(config.csv) << kaehler::to_csv(report);

  for (const auto& t : report.checks)
    if (t.report.status != kaehler::Status::kPass)
      std::cerr << kaehler::status_name(t.report.status) << ": " << t.report.check_id
                << (t.report.note.empty() ? "" : " (" + t.report.note + ")") << "\n";
  return report.exit_code();
}
