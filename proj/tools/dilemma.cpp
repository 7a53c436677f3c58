// Command-line front end: loads a JSON experiment, runs it, writes CSVs and
// a manifest.

#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "dilemma/config.hpp"
#include "dilemma/errors.hpp"
#include "dilemma/report.hpp"

namespace {

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  int threads = 1;
  bool quiet = false;
};

void add_common(CLI::App* app, Options& o) {
  app->add_option("--config", o.config, "Experiment config (JSON)")->required();
  app->add_option("--seed", o.seed, "Master seed, overrides the config");
  app->add_option("--out", o.out, "Output directory, overrides the config");
  app->add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);
  app->add_flag("--quiet", o.quiet, "Print nothing on success");
}

int report_error(const std::string& kind, const std::string& path, const std::string& message) {
  nlohmann::json err = {{"error", kind}, {"message", message}};
  if (!path.empty()) err["path"] = path;
  std::cerr << err.dump() << '\n';
  return 1;
}

int run(const std::string& subcommand, const Options& o) {
  using namespace dilemma;
  try {
    ExperimentConfig cfg = load_config(o.config);
    if (subcommand != "run") {
      if (cfg.command.empty()) {
        nlohmann::json j = to_json(cfg);
        j["command"] = subcommand;
        cfg = parse_config(j);
      } else if (cfg.command != subcommand) {
        throw ValidationError("$.command", "config is for '" + cfg.command + "', not '" + subcommand + "'");
      }
    }
    if (o.seed) cfg.seed = *o.seed;
    if (o.out) cfg.output_dir = *o.out;
    const RunOutput output = execute(cfg, o.threads);
    const auto manifest = write_outputs(cfg, output, cfg.output_dir);
    if (!o.quiet) {
      std::cout << cfg.command << ": wrote " << manifest["files"].size() << " files to " << cfg.output_dir
                << '\n';
      if (!output.summary.empty()) std::cout << output.summary.dump() << '\n';
    }
    return 0;
  } catch (const ValidationError& e) {
    return report_error("validation", e.path(), e.what());
  } catch (const ParseError& e) {
    return report_error("parse", "", e.what());
  } catch (const std::exception& e) {
    return report_error("run", "", e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Iterated dilemma experiments"};
  app.require_subcommand(1);
  Options opts;
  std::string chosen;
  std::vector<std::string> names = dilemma::command_names();
  names.push_back("run");
  for (const auto& name : names) {
    auto* sub = app.add_subcommand(name, name == "run" ? "Run the command named in the config"
                                                       : "Run a " + name + " experiment");
    add_common(sub, opts);
    sub->callback([&chosen, name] { chosen = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  return run(chosen, opts);
}
