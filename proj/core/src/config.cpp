#include "hmfs/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace hmfs {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> prev(b.size() + 1);
  std::vector<std::size_t> cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

std::string suggest_key(std::string_view key) {
  const auto& keys = valid_config_keys();
  // A valid key containing the unknown one ("samples" -> "mc_samples") wins.
  for (const auto& k : keys) {
    if (k.find(key) != std::string::npos) return k;
  }
  std::string best;
  std::size_t best_d = std::string::npos;
  for (const auto& k : keys) {
    const std::size_t d = edit_distance(key, k);
    if (d < best_d) {
      best_d = d;
      best = k;
    }
  }
  return best_d <= 3 ? best : std::string{};
}

template <typename T>
T parse_unsigned(const std::string& field, std::string_view text) {
  text = trim(text);
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc{} || ptr != end) {
    throw ConfigError(field, "expected a non-negative integer, got '" + std::string(text) + "'");
  }
  return value;
}

Experiment parse_experiment(std::string_view name) {
  for (auto e : {Experiment::mixedness, Experiment::mean_fidelity, Experiment::mlm_check,
                 Experiment::entanglement, Experiment::sweep}) {
    if (to_string(e) == name) return e;
  }
  throw ConfigError("experiment", "unknown experiment '" + std::string(name) +
                                      "' (expected mixedness, mean-fidelity, mlm-check, "
                                      "entanglement or sweep)");
}

OutputFormat parse_format(std::string_view name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  throw ConfigError("output_format", "expected csv or json, got '" + std::string(name) + "'");
}

}  // namespace

std::string_view to_string(Experiment e) {
  switch (e) {
    case Experiment::mixedness: return "mixedness";
    case Experiment::mean_fidelity: return "mean-fidelity";
    case Experiment::mlm_check: return "mlm-check";
    case Experiment::entanglement: return "entanglement";
    case Experiment::sweep: return "sweep";
  }
  return "?";
}

std::string_view to_string(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

bool uses_monte_carlo(Experiment e) {
  return e == Experiment::mean_fidelity || e == Experiment::mlm_check;
}

const std::vector<std::string>& valid_config_keys() {
  static const std::vector<std::string> keys{"experiment",  "n_values",         "trials",
                                             "mc_samples",  "seed",             "unitary_ensemble",
                                             "output_format", "output_path"};
  return keys;
}

RawConfig parse_key_value(std::string_view text) {
  RawConfig out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no), "expected 'key = value'");
    }
    out.emplace_back(std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1))));
  }
  return out;
}

RawConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_key_value(buf.str());
}

std::vector<std::size_t> parse_n_values(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '[') text.remove_prefix(1);
  if (!text.empty() && text.back() == ']') text.remove_suffix(1);
  std::vector<std::size_t> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const std::string_view item = trim(text.substr(0, comma));
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    if (const auto dots = item.find(".."); dots != std::string_view::npos) {
      const auto lo = parse_unsigned<std::size_t>("n_values", item.substr(0, dots));
      const auto hi = parse_unsigned<std::size_t>("n_values", item.substr(dots + 2));
      if (hi < lo) throw ConfigError("n_values", "empty range '" + std::string(item) + "'");
      if (hi - lo > 1000) throw ConfigError("n_values", "range too long");
      for (std::size_t v = lo; v <= hi; ++v) out.push_back(v);
    } else {
      out.push_back(parse_unsigned<std::size_t>("n_values", item));
    }
  }
  return out;
}

ExperimentConfig validate_config(const RawConfig& raw) {
  std::map<std::string, std::string> kv;
  for (const auto& [key, value] : raw) {
    const auto& keys = valid_config_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      std::string msg = "unknown key '" + key + "'";
      if (const auto s = suggest_key(key); !s.empty()) msg += " (did you mean '" + s + "'?)";
      msg += "; valid keys:";
      for (const auto& k : keys) msg += " " + k;
      throw ConfigError(key, msg);
    }
    kv[key] = value;
  }

  ExperimentConfig cfg;
  if (!kv.count("experiment")) throw ConfigError("experiment", "required");
  cfg.experiment = parse_experiment(kv["experiment"]);

  if (!kv.count("n_values")) throw ConfigError("n_values", "required");
  cfg.n_values = parse_n_values(kv["n_values"]);
  if (cfg.n_values.empty()) throw ConfigError("n_values", "must list at least one dimension");
  for (auto n : cfg.n_values) {
    if (n < 1 || n > kMaxDimension) {
      throw ConfigError("n_values", "dimension " + std::to_string(n) + " outside [1, " +
                                        std::to_string(kMaxDimension) + "]");
    }
  }

  if (kv.count("trials")) cfg.trials = parse_unsigned<std::size_t>("trials", kv["trials"]);
  if (cfg.trials < 1) throw ConfigError("trials", "must be >= 1");

  if (kv.count("mc_samples")) {
    cfg.mc_samples = parse_unsigned<std::size_t>("mc_samples", kv["mc_samples"]);
  }
  if (uses_monte_carlo(cfg.experiment) && cfg.mc_samples < 1000) {
    throw ConfigError("mc_samples", "must be >= 1000 for Monte Carlo experiments");
  }

  if (kv.count("seed")) cfg.seed = parse_unsigned<std::uint64_t>("seed", kv["seed"]);

  if (kv.count("unitary_ensemble")) {
    try {
      cfg.unitary_ensemble = parse_unitary_ensemble(kv["unitary_ensemble"]);
    } catch (const std::invalid_argument&) {
      throw ConfigError("unitary_ensemble",
                        "expected haar, identity, permutation or normalized-nonunitary, got '" +
                            kv["unitary_ensemble"] + "'");
    }
  }
  if (kv.count("output_format")) cfg.output_format = parse_format(kv["output_format"]);
  if (kv.count("output_path")) cfg.output_path = kv["output_path"];
  return cfg;
}

}  // namespace hmfs
