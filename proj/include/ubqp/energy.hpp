#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "ubqp/instance.hpp"

namespace ubqp {

// A point of {0,1}^n with its cardinality cached.
class Configuration {
 public:
  Configuration() = default;
  explicit Configuration(std::size_t n) : bits_(n, 0) {}
  // Throws std::invalid_argument if any entry is not 0 or 1.
  explicit Configuration(std::vector<std::uint8_t> bits);
  Configuration(std::initializer_list<std::uint8_t> bits)
      : Configuration(std::vector<std::uint8_t>(bits)) {}

  // Bit i is the 2^i digit of code.
  static Configuration from_code(std::size_t n, std::uint64_t code);

  std::size_t size() const noexcept { return bits_.size(); }
  std::size_t cardinality() const noexcept { return cardinality_; }
  double alpha() const noexcept {
    return bits_.empty() ? 0.0
                         : static_cast<double>(cardinality_) /
                               static_cast<double>(bits_.size());
  }

  int operator[](std::size_t i) const noexcept { return bits_[i]; }
  std::span<const std::uint8_t> bits() const noexcept { return bits_; }

  void flip(std::size_t i) noexcept {
    bits_[i] ^= 1u;
    if (bits_[i]) {
      ++cardinality_;
    } else {
      --cardinality_;
    }
  }

  std::string to_string() const;

  friend bool operator==(const Configuration&, const Configuration&) = default;

 private:
  std::vector<std::uint8_t> bits_;
  std::size_t cardinality_ = 0;
};

// Local fields h_i = (1/sqrt n) sum_j J_ij eta_j and the energy of the
// configuration they were computed for.
struct FieldCache {
  std::vector<double> h;
  double energy = 0.0;
};

// H(eta) = (1/sqrt n) sum_{i,j} J_ij eta_i eta_j, diagonal included.
double energy(const Instance& inst, const Configuration& cfg);

// Full O(n^2) rebuild; energy taken as sum_i h_i eta_i (exact for symmetric J).
FieldCache local_fields(const Instance& inst, const Configuration& cfg);

// H(eta with bit i flipped) - H(eta), O(1) from a consistent cache.
double flip_delta(const Instance& inst, const Configuration& cfg,
                  const FieldCache& cache, std::size_t i);

// Toggles bit i and updates cache in O(n). Assumes symmetric J for the
// field update (column i is read as row i).
void apply_flip(const Instance& inst, Configuration& cfg, FieldCache& cache,
                std::size_t i);

}  // namespace ubqp
