#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hsf/io.hpp"
#include "hsf_cli/config.hpp"
#include "hsf_cli/run.hpp"

int main(int argc, char** argv) {
  using namespace hsf::cli;
  CLI::App app{"Fragmentation-protected sensing simulations"};
  std::string config_path;
  std::string out_path;
  std::string command;
  std::string scheme;
  std::uint64_t seed = 0;
  bool ideal = false;
  bool print_config = false;
  std::vector<std::string> overrides;
  app.add_option("--config", config_path, "config file with key = value lines");
  app.add_option("--out", out_path, "CSV output path; the summary is written next to it as .json");
  auto* seed_opt = app.add_option("--seed", seed, "seed for couplings and Monte Carlo trials");
  app.add_option("--command", command, "fidelity, sweep, zeno, fragments, bound or montecarlo");
  app.add_option("--scheme", scheme, "sweep scheme: ghz_free, ghz_interacting, hsf or all");
  app.add_flag("--ideal", ideal, "sweep: evolve the HSF scheme under the probe field only");
  app.add_option("--set", overrides, "override one key, key=value (repeatable)");
  app.add_flag("--print-config", print_config, "print the resolved config and exit");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  RunConfig config;
  std::vector<std::string> problems;
  try {
    if (!config_path.empty()) config = parse_config(hsf::read_file(config_path));
  } catch (const ConfigError& e) {
    problems = e.problems();
  } catch (const std::exception& e) {
    problems.push_back(e.what());
  }
  auto apply = [&](const std::string& key, const std::string& value) {
    if (auto err = set_key(config, key, value); !err.empty()) problems.push_back(err);
  };
  for (const auto& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      problems.push_back("--set '" + kv + "' is not key=value");
    } else {
      apply(kv.substr(0, eq), kv.substr(eq + 1));
    }
  }
  if (!command.empty()) apply("command", command);
  if (!out_path.empty()) apply("output", out_path);
  if (*seed_opt) apply("seed", std::to_string(seed));
  if (!scheme.empty()) apply("sweep.scheme", scheme);
  if (ideal) apply("sweep.ideal", "true");
  if (!print_config) {
    auto more = validate(config);
    problems.insert(problems.end(), more.begin(), more.end());
  }
  if (!problems.empty()) {
    for (const auto& p : problems) std::cerr << "hsf: config error: " << p << '\n';
    return kConfigError;
  }
  if (print_config) {
    std::cout << serialize_config(config);
    return kOk;
  }
  return run(config, std::cout, std::cerr);
}
