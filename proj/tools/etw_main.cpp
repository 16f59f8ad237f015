#include "etw/cli/commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace etw::cli;

namespace {

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"etw: effective topology workbench"};
  std::string verb, format = "text";
  std::vector<std::string> target;
  std::optional<std::string> out, instance;
  Options opts;

  app.add_option("verb", verb, "construct, enumerate, verify or demo")
      ->required()
      ->check(CLI::IsMember({"construct", "enumerate", "verify", "demo"}));
  app.add_option("target", target, "what to run, e.g. `space-from-tree fixture1`")->required();
  app.add_option("--budget", opts.budget, "interpreter step budget (default 100000 or $ETW_DEFAULT_BUDGET)");
  app.add_option("--stages", opts.stages, "stage count for enumerations (default 1000)");
  app.add_option("--bound", opts.bound, "largest argument examined (default 10)");
  app.add_option("--out", out, "write the JSON report here; metadata goes to FILE.meta.json");
  app.add_option("--snapshot", opts.snapshot, "save the job state after the run");
  app.add_option("--resume", opts.resume, "continue from a saved job state");
  app.add_option("--format", format, "stdout format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--instance", instance, ".etw instance file (default: the built-in fixtures)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageStatus;
  }

  try {
    InstanceFile inst = instance ? load_instance(*instance) : parse_instance(builtin_fixture_text());
    auto rep = run_command(verb, target, opts, inst);
    const auto report = rep.to_json().dump(2) + "\n";
    if (out) {
      if (!write_file(*out, report) || !write_file(*out + ".meta.json", rep.metadata().dump(2) + "\n")) {
        std::cerr << "etw: cannot write " << *out << "\n";
        return kUsageStatus;
      }
    }
    if (format == "json") {
      std::cout << report;
    } else {
      std::cout << rep.text();
      std::cout << "wall time: " << rep.metadata()["wall_ms"].get<double>() << " ms\n";
    }
    return exit_status(rep.verdict());
  } catch (const UsageError& e) {
    std::cerr << "etw: " << e.what() << "\n";
    return kUsageStatus;
  } catch (const etw::kernel::ParseError& e) {
    std::cerr << "etw: " << (instance ? *instance : std::string("<fixtures>")) << ": " << e.what() << "\n";
    return kUsageStatus;
  } catch (const std::exception& e) {
    std::cerr << "etw: " << e.what() << "\n";
    return kUsageStatus;
  }
}
