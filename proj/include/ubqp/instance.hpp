#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

namespace ubqp {

// A realization of the disorder: an n x n coupling matrix stored row-major.
// Immutable after construction.
class Instance {
 public:
  // Throws size_error for n = 0, dimension_error if couplings.size() != n*n,
  // std::invalid_argument for non-finite entries or a false symmetry claim.
  Instance(std::size_t n, std::vector<double> couplings, std::uint64_t seed,
           bool symmetric);

  // Same as the constructor, with the symmetric flag set from the data.
  static Instance from_matrix(std::size_t n, std::vector<double> couplings,
                              std::uint64_t seed = 0);

  std::size_t size() const noexcept { return n_; }
  std::uint64_t seed() const noexcept { return seed_; }
  bool symmetric() const noexcept { return symmetric_; }

  double coupling(std::size_t i, std::size_t k) const noexcept {
    return j_[i * n_ + k];
  }
  std::span<const double> row(std::size_t i) const noexcept {
    return {j_.data() + i * n_, n_};
  }
  std::span<const double> couplings() const noexcept { return j_; }

  // 1/sqrt(n), the normalization of the Hamiltonian.
  double scale() const noexcept { return scale_; }

  friend bool operator==(const Instance& a, const Instance& b) noexcept;

 private:
  std::size_t n_;
  std::vector<double> j_;
  std::uint64_t seed_;
  bool symmetric_;
  double scale_;
};

// Raw i.i.d. standard normal matrix L for (n, seed); symmetric = false.
Instance generate_raw_instance(std::size_t n, std::uint64_t seed);

// J = (L + L^T) / 2 with L = generate_raw_instance(n, seed).
Instance generate_instance(std::size_t n, std::uint64_t seed);

inline constexpr int kInstanceFormatVersion = 1;

void write_instance(std::ostream& out, const Instance& inst);
Instance read_instance(std::istream& in);

void save_instance(const Instance& inst, const std::filesystem::path& path);
Instance load_instance(const std::filesystem::path& path);

}  // namespace ubqp
