#pragma once

#include <cmath>
#include <initializer_list>
#include <span>
#include <vector>

#include "torcoh/errors.hpp"

namespace torcoh {

// Rotation / flow frequency α ∈ R^d.
class FrequencyVector {
 public:
  FrequencyVector() = default;
  FrequencyVector(std::initializer_list<double> c) : FrequencyVector(std::vector<double>(c)) {}
  explicit FrequencyVector(std::vector<double> components) : c_(std::move(components)) {
    if (c_.empty()) throw DomainError("frequency vector must have dimension >= 1");
    for (double x : c_)
      if (!std::isfinite(x)) throw DomainError("frequency vector components must be finite");
  }

  std::size_t dim() const noexcept { return c_.size(); }
  double operator[](std::size_t i) const { return c_[i]; }
  std::span<const double> components() const noexcept { return c_; }
  const std::vector<double>& vec() const noexcept { return c_; }

  // k·α for an integer vector k of matching length.
  template <class IntRange>
  double dot(const IntRange& k) const {
    double s = 0.0;
    std::size_t i = 0;
    for (auto ki : k) s += static_cast<double>(ki) * c_[i++];
    return s;
  }

  FrequencyVector scaled(double lambda) const {
    std::vector<double> v = c_;
    for (double& x : v) x *= lambda;
    return FrequencyVector(std::move(v));
  }

  friend bool operator==(const FrequencyVector&, const FrequencyVector&) = default;

 private:
  std::vector<double> c_;
};

}  // namespace torcoh
