#include "cli.hpp"

#include <algorithm>

#include "commands.hpp"
#include "torcoh/diophantine.hpp"

namespace torcoh::cli {

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cohomological equations, cocycles and parabolic dynamics on tori", "torcoh"};
  std::optional<std::string> config_path;
  app.add_option("--config", config_path, "RunConfig JSON (inline or path)");
  app.require_subcommand(1);
  Command selected;
  register_commands(app, selected);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());  // CLI11 consumes from the back
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    // name the offending word when the first positional is not a subcommand
    std::string unknown;
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (args[i] == "--config") {
        ++i;
        continue;
      }
      if (args[i].rfind("-", 0) == 0) continue;
      if (!app.get_subcommand_no_throw(args[i])) unknown = args[i];
      break;
    }
    if (!unknown.empty())
      err << "unknown subcommand '" << unknown << "'\n\n" << app.help();
    else
      err << "usage error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }
  if (!selected.run) {
    err << app.help();
    return kExitUsage;
  }

  RunConfig cfg;
  try {
    cfg = load_config(config_path);
    const Outcome o = selected.run(cfg);
    emit(o, selected.stem, cfg, out);
    return o.exit_code;
  } catch (const diophantine::ResonanceError& e) {
    Outcome o;
    o.exit_code = kExitObstructed;
    o.result = {{"verdict", "resonant"}, {"resonance_witness", e.witness()}, {"message", e.what()}};
    try {
      emit(o, selected.stem, cfg, out);
    } catch (const std::exception& io) {
      err << "error: " << io.what() << '\n';
      return kExitError;
    }
    return o.exit_code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace torcoh::cli
