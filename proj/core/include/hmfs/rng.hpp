#pragma once

#include <cstdint>
#include <random>

#include "hmfs/tensor.hpp"

namespace hmfs {

/// Seeded random stream. A (seed, stream_id) pair fully determines the draw
/// sequence; never share one stream between concurrent tasks.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  double uniform();           // [0, 1)
  double normal();            // N(0, 1)
  Complex complex_normal();   // real and imaginary parts each N(0, 1/2)
  double exponential();       // Exp(1)

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace hmfs
