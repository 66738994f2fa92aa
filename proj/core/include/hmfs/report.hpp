#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hmfs/config.hpp"

namespace hmfs {

/// One (N, trial) row. `stream_id` reproduces the row on its own.
struct TrialRecord {
  std::size_t n = 0;
  std::size_t trial = 0;
  std::uint64_t stream_id = 0;
  std::vector<std::pair<std::string, double>> scalars;

  void set(const std::string& name, double value);
  void set(const std::string& name, bool value) { set(name, value ? 1.0 : 0.0); }
  /// NaN when absent.
  double get(const std::string& name) const;
};

struct Aggregate {
  std::size_t n = 0;
  std::string scalar;
  std::size_t count = 0;  // non-NaN values
  double mean = 0.0;
  double std_error = 0.0;
  double min = 0.0;
  double max = 0.0;
};

/// Closed form as printed vs. its direct-computation oracle, per dimension.
struct Discrepancy {
  std::string quantity;
  std::size_t n = 0;
  double printed = 0.0;
  double oracle = 0.0;
  double max_abs_diff = 0.0;
  std::string note;
};

struct InvariantCheck {
  std::string name;
  std::size_t checked = 0;
  std::size_t violations = 0;
  bool informational = false;  // reported only; never fails the run
  std::string detail;

  bool passed() const { return informational || violations == 0; }
};

/// Excluded from determinism comparisons.
struct ReportMetadata {
  std::string timestamp;
  std::string host;
  std::string version;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<TrialRecord> trials;
  std::vector<Aggregate> aggregates;
  std::vector<Discrepancy> discrepancies;
  std::vector<InvariantCheck> invariants;
  ReportMetadata metadata;

  bool all_passed() const;
  /// Scalar names in first-seen order across all trials.
  std::vector<std::string> scalar_names() const;
  const InvariantCheck* find_invariant(const std::string& name) const;
};

/// Per-(N, scalar) mean, standard error, min and max over trials.
std::vector<Aggregate> aggregate_trials(const std::vector<TrialRecord>& trials);

/// CSV: header then one row per trial, RFC 4180 quoting, %.17g floats,
/// empty field for undefined values. JSON: {config, trials, aggregates,
/// discrepancies, invariants[, metadata]}.
std::string emit(const ExperimentReport& report, OutputFormat format,
                 bool include_metadata = true);

void write_report(const ExperimentReport& report, const std::string& path, OutputFormat format);

}  // namespace hmfs
