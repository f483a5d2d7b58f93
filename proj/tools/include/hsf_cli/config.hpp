#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hsf/evolve.hpp"
#include "hsf/lattice.hpp"
#include "hsf/sensing.hpp"

namespace hsf::cli {

/// Bad configuration. what() lists every problem, one per line.
class ConfigError : public DomainError {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const noexcept { return problems_; }

 private:
  std::vector<std::string> problems_;
};

enum class Command { None, Fidelity, Sweep, Zeno, Fragments, Bound, MonteCarlo };

const char* command_name(Command c) noexcept;

struct LatticeSize {
  std::size_t width = 3;
  std::size_t height = 3;
  bool operator==(const LatticeSize&) const = default;
};

struct RunConfig {
  Command command = Command::None;
  std::string output;  // empty: hsf_<command>.csv
  std::uint64_t seed = 1;

  std::size_t width = 3;
  std::size_t height = 3;
  Boundary boundary = Boundary::FixedDownFrame;
  std::string partition = "canonical";  // or explicit:<file>

  double jbar = 1.0;
  double sigma = 0.3;
  std::string couplings_file;

  EvolutionMethod method = EvolutionMethod::Auto;
  std::size_t krylov_dimension = 40;
  double krylov_tolerance = 1e-10;

  double omega = 0.01;
  double t_int = 1.0;
  double t_all = 100.0;

  double fidelity_omega = 0.4;
  double fidelity_t_max = 1.0;
  std::size_t fidelity_points = 41;
  std::vector<double> fidelity_jbars{1.0, 2.0, 4.0};
  std::size_t fidelity_seeds = 1;

  std::string sweep_scheme = "all";  // ghz_free, ghz_interacting, hsf or all
  bool sweep_ideal = false;
  std::vector<LatticeSize> sweep_sizes{{3, 3}, {3, 4}};
  std::vector<double> sweep_jbars{1.0, 2.0, 4.0};

  double zeno_tau = 0.1;
  double zeno_omega0 = 1.0;
  std::vector<double> zeno_betas{0.0};
  std::vector<double> zeno_gammas{0.0};
  std::size_t zeno_min_exponent = 6;
  std::size_t zeno_max_exponent = 12;

  std::string fragments_model = "homogeneous";  // or inhomogeneous
  double fragments_delta_th = 0.0;              // 0: 0.1 * J_g

  double bound_t_max = 10.0;
  std::size_t bound_points = 50;
  std::string bound_gap = "jg";  // or delta_pr

  std::size_t mc_trials = 10000;
  std::size_t mc_repetitions = 100;
  std::string mc_epsilon = "simulated";  // or a number

  bool operator==(const RunConfig&) const = default;
};

/// Documented keys with their defaults, in serialization order.
std::vector<std::pair<std::string, std::string>> config_keys();

/// Sets one key from text. Returns an error message, empty on success.
std::string set_key(RunConfig& config, const std::string& key, const std::string& value);

/// `key = value` lines, '#' comments. Collects every unknown key, bad value
/// and range problem before throwing ConfigError.
RunConfig parse_config(const std::string& text, RunConfig base = {});

/// Range and consistency checks; returns all problems.
std::vector<std::string> validate(const RunConfig& config);

/// Every key in config_keys() order; parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& config);

}  // namespace hsf::cli
