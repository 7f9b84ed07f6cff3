#pragma once

#include <CLI11.hpp>
#include <functional>
#include <string>

#include "cli.hpp"

namespace torcoh::cli {

struct Command {
  std::string stem;  // file stem for artifacts, e.g. "cohomo_solve"
  std::function<Outcome(const RunConfig&)> run;
};

void register_commands(CLI::App& app, Command& selected);

}  // namespace torcoh::cli
