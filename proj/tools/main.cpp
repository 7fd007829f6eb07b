#include <chrono>
#include <iostream>

#include "commands.hpp"

using namespace interperc;
using namespace interperc::cli;

namespace {

int execute(Command& cmd) {
  Run run;
  run.command = cmd.name();
  run.common = &cmd.common;
  run.params = cmd.params.get();
  run.outputs = Outputs(cmd.common.out);
  auto t0 = std::chrono::steady_clock::now();
  try {
    cmd.run(run);
    std::optional<double> wall;
    if (cmd.common.timing) wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    run.outputs.write("manifest.json", manifest(run, wall).dump(2) + "\n");
  } catch (const InvalidArgument& e) {
    run.outputs.discard();
    std::cerr << "interperc " << cmd.name() << ": " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    run.outputs.discard();
    std::cerr << "interperc " << cmd.name() << ": " << e.what() << "\n";
    return kRuntimeError;
  }
  std::cout << run.results.dump() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interpolation through random closed sets on vertical lines", "interperc"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.footer("Every subcommand writes its files and a manifest.json into --out.\n"
             "Exit status: 0 success, 1 invalid input, 2 runtime failure.");

  auto commands = all_commands();
  for (auto& cmd : commands) {
    auto* sub = app.add_subcommand(cmd->name(), cmd->summary());
    if (auto f = cmd->footer(); !f.empty()) sub->footer(f);
    cmd->params = std::make_unique<Params>(sub);
    add_common(*cmd->params, cmd->common);
    cmd->define(*cmd->params);
  }

  std::vector<std::string> args(argv, argv + argc);
  try {
    args = apply_config(args);
  } catch (const InvalidArgument& e) {
    std::cerr << "interperc: " << e.what() << "\n";
    return kInputError;
  }
  std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
  try {
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  for (auto& cmd : commands) {
    if (cmd->params->app()->parsed()) return execute(*cmd);
  }
  return kInputError;
}
