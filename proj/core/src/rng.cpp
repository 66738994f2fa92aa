#include "hmfs/rng.hpp"

#include <cmath>

namespace hmfs {
namespace {

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream_id) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream_id),
                    static_cast<std::uint32_t>(stream_id >> 32), 0x9e3779b9u};
  return std::mt19937_64(seq);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), engine_(make_engine(seed, stream_id)) {}

double RngStream::uniform() {
  // generate_canonical may round up to 1.0 on some standard libraries.
  const double u = std::generate_canonical<double, 53>(engine_);
  return u < 1.0 ? u : std::nextafter(1.0, 0.0);
}

double RngStream::normal() { return normal_(engine_); }

Complex RngStream::complex_normal() {
  constexpr double kScale = 0.70710678118654752440;
  const double re = normal();
  const double im = normal();
  return {re * kScale, im * kScale};
}

double RngStream::exponential() { return -std::log1p(-uniform()); }

}  // namespace hmfs
