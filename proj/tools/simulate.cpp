// simulate <preset|config-path> [--set section.key=value ...] [--out DIR] [--seed U64]

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "jt/config.hpp"
#include "jt/errors.hpp"
#include "jt/runner.hpp"

namespace {

jt::RunConfig load(const std::string& source) {
  for (const auto& name : jt::preset_names()) {
    if (source == name) return jt::preset_config(name);
  }
  std::ifstream in(source);
  if (!in) {
    throw jt::ConfigError("'" + source + "' is neither a preset nor a readable config file");
  }
  std::ostringstream text;
  text << in.rdbuf();
  return jt::parse_config(text.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wave-packet dynamics in the linear E x e Jahn-Teller model"};
  app.set_version_flag("--version", jt::kVersion);

  std::string source;
  std::vector<std::string> overrides;
  std::string out_dir;
  std::uint64_t seed = 0;

  std::string presets;
  for (const auto& p : jt::preset_names()) presets += (presets.empty() ? "" : ", ") + p;
  app.add_option("source", source, "preset (" + presets + ") or config file")->required();
  app.add_option("--set", overrides, "override a key: section.key=value")->take_all();
  app.add_option("--out", out_dir, "output directory");
  auto* seed_opt = app.add_option("--seed", seed, "master seed for TWA sampling");

  CLI11_PARSE(app, argc, argv);

  jt::RunConfig config;
  try {
    config = load(source);
    for (const auto& item : overrides) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw jt::ConfigError("--set expects section.key=value");
      jt::apply_setting(config, item.substr(0, eq), item.substr(eq + 1));
    }
    if (!out_dir.empty()) config.output.dir = out_dir;
    if (*seed_opt) config.twa.seed = seed;
    config.validate();
  } catch (const jt::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  }

  const jt::RunSummary summary = jt::run(config);
  for (const auto& w : summary.warnings) std::cerr << "warning: " << w << '\n';
  if (summary.exit_status != 0) {
    std::cerr << "error: " << summary.error << '\n';
    return summary.exit_status;
  }
  for (const auto& f : summary.files) std::cout << f.string() << '\n';
  return 0;
}
