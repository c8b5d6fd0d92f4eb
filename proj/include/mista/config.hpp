#pragma once
// Experiment configuration: a JSON file with explicit keys describing
// the operator, the ground-truth signal, the penalty, the solver and
// (per experiment) a schedule or shrinkage table. Parsing validates
// everything up front and reports the offending field by dotted path;
// invalid exponents or weights never reach the solver.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mista/model.hpp"
#include "mista/solver.hpp"

namespace mista {

// Invalid configuration (CLI exit code 2).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Numerical failure at run time (CLI exit code 3).
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GeneratorSpec {
  std::size_t n = 0;
  std::size_t spikes = 0;
  double spike_scale = 1.0;
  double smooth_scale = 0.0;
  std::optional<std::uint64_t> seed;  // derived from the master seed if unset
};

struct PenaltyGroupCfg {
  std::optional<double> weight;               // scalar weight, or
  std::optional<std::vector<double>> weights; // one weight per index
  double exponent = 1.0;
  double multiplier = 1.0;
  std::optional<std::pair<std::size_t, std::size_t>> range;  // [begin, end)
};

struct PenaltyCfg {
  std::string mode;  // "partitioned" | "stacked"
  std::vector<PenaltyGroupCfg> groups;
};

struct ScheduleCfg {
  double eps0 = 0.0;
  double ratio = 0.0;
  std::size_t count = 0;
  double exponent = 0.0;
};

struct ShrinkTableCfg {
  std::vector<PenaltyTerm> terms;
  double lo = 0.0;
  double hi = 0.0;
  int points = 0;
};

struct ExperimentConfig {
  std::string experiment;  // empty when unspecified
  std::uint64_t seed = 0;  // master seed; CLI --seed overrides
  std::optional<std::string> out;

  std::optional<LinearOp> op;
  std::optional<Vec> signal_values;
  std::optional<GeneratorSpec> signal_gen;
  double noise_norm = 0.0;
  std::optional<std::uint64_t> noise_seed;

  std::optional<PenaltyCfg> penalty;
  std::optional<Vec> f0;  // defaults to zero
  StopRule stop;
  std::size_t trace_every = 1;

  std::optional<ScheduleCfg> schedule;
  std::optional<ShrinkTableCfg> shrink_table;
};

// Throws ConfigError with file/line context on parse errors and with the
// dotted field path on validation errors.
ExperimentConfig load_config(const std::filesystem::path& path);
ExperimentConfig parse_config(const std::string& text,
                              const std::string& origin);

// Ground-truth signal in the operator domain (explicit or generated).
Vec build_signal(const ExperimentConfig& cfg);

// Penalty over `dim` coefficients. Partitioned groups must carry ranges
// that tile [0, dim); stacked groups apply everywhere.
PenaltySpec build_penalty(const PenaltyCfg& cfg, std::size_t dim);

// Seed streams derived from the master seed when a section has none.
std::uint64_t signal_seed(const ExperimentConfig& cfg);
std::uint64_t derived_noise_seed(const ExperimentConfig& cfg);

}  // namespace mista
