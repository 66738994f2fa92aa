#pragma once

#include <cstddef>
#include <cstdint>

#include "hmfs/config.hpp"
#include "hmfs/report.hpp"

namespace hmfs {

inline constexpr double kMonteCarloSigmas = 5.0;
inline constexpr double kIdentityTolerance = 1e-12;

/// Stream id for trial `trial` at dimension `n`. Depends only on the pair,
/// never on execution order.
std::uint64_t trial_stream_id(std::size_t n, std::size_t trial);

/// Runs every (N, trial) pair of the configured experiment. When
/// `config.output_path` is non-empty the report is also written there.
ExperimentReport run(const ExperimentConfig& config);

}  // namespace hmfs
