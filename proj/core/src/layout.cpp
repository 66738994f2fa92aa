#include "hmfs/layout.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace hmfs {

HilbertLayout::HilbertLayout(std::vector<Factor> factors) : factors_(std::move(factors)) {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const auto& f = factors_[i];
    if (f.dim == 0) {
      throw std::invalid_argument("factor '" + f.name + "' has zero dimension");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (factors_[j].name == f.name) {
        throw std::invalid_argument("duplicate factor name '" + f.name + "'");
      }
    }
    if (total_dim_ > std::numeric_limits<std::size_t>::max() / f.dim) {
      throw std::overflow_error("layout dimension overflows size_t");
    }
    total_dim_ *= f.dim;
  }
}

bool HilbertLayout::contains(std::string_view name) const {
  return std::any_of(factors_.begin(), factors_.end(),
                     [&](const Factor& f) { return f.name == name; });
}

std::size_t HilbertLayout::position(std::string_view name) const {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i].name == name) return i;
  }
  throw std::invalid_argument("unknown factor label '" + std::string(name) + "'");
}

std::size_t HilbertLayout::flatten(std::span<const std::size_t> multi) const {
  if (multi.size() != factors_.size()) {
    throw std::invalid_argument("multi-index rank does not match layout");
  }
  std::size_t flat = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (multi[i] >= factors_[i].dim) {
      throw std::out_of_range("index out of range for factor '" + factors_[i].name + "'");
    }
    flat = flat * factors_[i].dim + multi[i];
  }
  return flat;
}

std::vector<std::size_t> HilbertLayout::unflatten(std::size_t flat) const {
  if (flat >= total_dim_) throw std::out_of_range("flat index out of range");
  std::vector<std::size_t> multi(factors_.size());
  for (std::size_t i = factors_.size(); i-- > 0;) {
    multi[i] = flat % factors_[i].dim;
    flat /= factors_[i].dim;
  }
  return multi;
}

HilbertLayout HilbertLayout::subset(std::span<const std::string> names) const {
  for (const auto& n : names) (void)position(n);
  std::vector<Factor> kept;
  for (const auto& f : factors_) {
    if (std::find(names.begin(), names.end(), f.name) != names.end()) kept.push_back(f);
  }
  return HilbertLayout(std::move(kept));
}

HilbertLayout HilbertLayout::complement(std::span<const std::string> names) const {
  for (const auto& n : names) (void)position(n);
  std::vector<Factor> rest;
  for (const auto& f : factors_) {
    if (std::find(names.begin(), names.end(), f.name) == names.end()) rest.push_back(f);
  }
  return HilbertLayout(std::move(rest));
}

HilbertLayout HilbertLayout::then(const HilbertLayout& other) const {
  std::vector<Factor> all = factors_;
  all.insert(all.end(), other.factors_.begin(), other.factors_.end());
  return HilbertLayout(std::move(all));
}

HilbertLayout HilbertLayout::renamed(std::string_view from, std::string to) const {
  auto copy = factors_;
  copy[position(from)].name = std::move(to);
  return HilbertLayout(std::move(copy));
}

}  // namespace hmfs
