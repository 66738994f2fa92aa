#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hmfs {

/// One named tensor factor of a Hilbert space, e.g. {"M", 4} or {"B", 2}.
struct Factor {
  std::string name;
  std::size_t dim = 1;

  friend bool operator==(const Factor&, const Factor&) = default;
};

/// Ordered tensor factorization of a finite-dimensional Hilbert space.
///
/// All index arithmetic in the library goes through this class. Flat indices
/// are big-endian in factor order: the first factor is the most significant
/// digit, so for factors (A: da, B: db) the pair (a, b) maps to a * db + b.
class HilbertLayout {
 public:
  HilbertLayout() = default;
  explicit HilbertLayout(std::vector<Factor> factors);

  const std::vector<Factor>& factors() const { return factors_; }
  std::size_t num_factors() const { return factors_.size(); }
  std::size_t total_dim() const { return total_dim_; }

  bool contains(std::string_view name) const;
  /// Position of the named factor; throws std::invalid_argument when absent.
  std::size_t position(std::string_view name) const;
  std::size_t dim(std::string_view name) const { return factors_[position(name)].dim; }

  std::size_t flatten(std::span<const std::size_t> multi) const;
  std::vector<std::size_t> unflatten(std::size_t flat) const;

  /// Layout restricted to `names`, kept in this layout's factor order.
  HilbertLayout subset(std::span<const std::string> names) const;
  /// Factors not listed in `names`, in this layout's factor order.
  HilbertLayout complement(std::span<const std::string> names) const;

  /// Concatenation: factors of `*this` followed by factors of `other`.
  HilbertLayout then(const HilbertLayout& other) const;

  /// Same dims, factor `from` renamed to `to`.
  HilbertLayout renamed(std::string_view from, std::string to) const;

  friend bool operator==(const HilbertLayout& a, const HilbertLayout& b) {
    return a.factors_ == b.factors_;
  }

 private:
  std::vector<Factor> factors_;
  std::size_t total_dim_ = 1;
};

}  // namespace hmfs
