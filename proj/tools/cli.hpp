#pragma once

#include <cstdint>
#include <json.hpp>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "torcoh/fourier.hpp"
#include "torcoh/torus.hpp"

namespace torcoh::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitObstructed = 2;
inline constexpr int kExitUsage = 64;

struct RunConfig {
  std::uint64_t seed = 42;
  std::map<std::string, double> tolerances;
  std::string output_dir;  // empty: nothing written to disk
  bool emit_plot_data = false;

  double tolerance(const std::string& name, double fallback) const;
};

// {"seed": int, "tolerances": {name: f}, "output_dir": str, "emit_plot_data": bool}
RunConfig parse_config(const nlohmann::json& j);
// Reads the file if given, then applies the COHOMO_SEED override.
RunConfig load_config(const std::optional<std::string>& path);

// Malformed user input (bad JSON, bad CSV, wrong schema); exit 1.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Outcome {
  int exit_code = kExitOk;
  nlohmann::json result = nlohmann::json::object();
  std::string csv;           // plot data, empty if none
  bool csv_primary = false;  // the command's product is the CSV
  std::string report;        // markdown; replaces JSON on stdout when set
};

// An argument starting with '{' or '[' is inline JSON, anything else a path.
nlohmann::json read_json_arg(const std::string& arg);
fourier::FourierSeries read_series(const std::string& arg);
std::vector<double> parse_csv(const std::string& text);

// Stdout gets the CSV (csv_primary), the report, or the JSON. With an
// output_dir, <stem>.json is always written and <stem>.csv / <stem>.md when
// present.
void emit(const Outcome& o, const std::string& stem, const RunConfig& cfg, std::ostream& out);

std::string format_double(double x);

struct PipelineOptions {
  int n0 = 1;
  double rho = kGoldenRatio - 1.0;
  int zeta_radius = 6;
  int psi_radius = 8;
};

Outcome pipeline_demo(const PipelineOptions& opts, const RunConfig& cfg);
Outcome pipeline_demo_linearize(const RunConfig& cfg);

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace torcoh::cli
