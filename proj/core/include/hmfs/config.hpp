#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hmfs/states.hpp"

namespace hmfs {

enum class Experiment { mixedness, mean_fidelity, mlm_check, entanglement, sweep };
enum class OutputFormat { csv, json };

std::string_view to_string(Experiment e);
std::string_view to_string(OutputFormat f);

/// Whether the experiment draws Monte Carlo samples (and so needs mc_samples >= 10^3).
bool uses_monte_carlo(Experiment e);

struct ExperimentConfig {
  Experiment experiment = Experiment::mixedness;
  std::vector<std::size_t> n_values;
  std::size_t trials = 100;
  std::size_t mc_samples = 100000;
  std::uint64_t seed = 0;
  UnitaryEnsemble unitary_ensemble = UnitaryEnsemble::haar;
  OutputFormat output_format = OutputFormat::csv;
  std::string output_path;  // empty: caller decides (the CLI writes to stdout)
};

inline constexpr std::size_t kMaxDimension = 32;

/// Invalid configuration; `field()` names the offending key.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Ordered key/value pairs; later entries override earlier ones.
using RawConfig = std::vector<std::pair<std::string, std::string>>;

const std::vector<std::string>& valid_config_keys();

/// Parses `key = value` lines. Blank lines and `#` comments are skipped.
RawConfig parse_key_value(std::string_view text);
RawConfig load_config_file(const std::string& path);

ExperimentConfig validate_config(const RawConfig& raw);

/// Accepts "2,3,4", "[2, 3, 4]" and inclusive ranges such as "2..6".
std::vector<std::size_t> parse_n_values(std::string_view text);

}  // namespace hmfs
