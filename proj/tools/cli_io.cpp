#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "torcoh/fourier_json.hpp"

namespace torcoh::cli {

double RunConfig::tolerance(const std::string& name, double fallback) const {
  const auto it = tolerances.find(name);
  return it == tolerances.end() ? fallback : it->second;
}

RunConfig parse_config(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("config must be a JSON object");
  RunConfig cfg;
  try {
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("tolerances"))
      for (const auto& [k, v] : j.at("tolerances").items()) cfg.tolerances[k] = v.get<double>();
    if (j.contains("output_dir")) cfg.output_dir = j.at("output_dir").get<std::string>();
    if (j.contains("emit_plot_data")) cfg.emit_plot_data = j.at("emit_plot_data").get<bool>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("config: ") + e.what());
  }
  return cfg;
}

RunConfig load_config(const std::optional<std::string>& path) {
  RunConfig cfg = path ? parse_config(read_json_arg(*path)) : RunConfig{};
  if (const char* env = std::getenv("COHOMO_SEED"); env && *env) {
    std::uint64_t s = 0;
    const char* end = env + std::char_traits<char>::length(env);
    const auto [ptr, ec] = std::from_chars(env, end, s);
    if (ec != std::errc{} || ptr != end) throw InputError(std::string("COHOMO_SEED is not an unsigned integer: ") + env);
    cfg.seed = s;
  }
  return cfg;
}

nlohmann::json read_json_arg(const std::string& arg) {
  std::string text;
  std::string where = "inline JSON";
  if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) {
    text = arg;
  } else {
    std::ifstream in(arg);
    if (!in) throw InputError("cannot open " + arg);
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
    where = arg;
  }
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("parse error in " + where + ": " + e.what());
  }
}

fourier::FourierSeries read_series(const std::string& arg) {
  try {
    return fourier::series_from_json(read_json_arg(arg));
  } catch (const DomainError& e) {
    throw InputError(std::string("series: ") + e.what());
  }
}

std::vector<double> parse_csv(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw InputError("empty entry in list '" + text + "'");
    const std::string tok = item.substr(b, e - b + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) throw InputError("not a number: '" + tok + "'");
    out.push_back(v);
  }
  if (out.empty()) throw InputError("empty list");
  return out;
}

std::string format_double(double x) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

void emit(const Outcome& o, const std::string& stem, const RunConfig& cfg, std::ostream& out) {
  const std::string json_text = o.result.dump(2) + "\n";
  if (o.csv_primary)
    out << o.csv;
  else if (!o.report.empty())
    out << o.report;
  else
    out << json_text;

  if (cfg.output_dir.empty()) return;
  namespace fs = std::filesystem;
  const fs::path dir(cfg.output_dir);
  fs::create_directories(dir);
  auto write = [&](const std::string& name, const std::string& body) {
    std::ofstream f(dir / name, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + (dir / name).string());
    f << body;
  };
  write(stem + ".json", json_text);
  if (!o.csv.empty()) write(stem + ".csv", o.csv);
  if (!o.report.empty()) write(stem + ".md", o.report);
}

}  // namespace torcoh::cli
