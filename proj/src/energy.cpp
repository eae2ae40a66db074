#include "ubqp/energy.hpp"

#include <stdexcept>

#include "ubqp/errors.hpp"

namespace ubqp {

Configuration::Configuration(std::vector<std::uint8_t> bits)
    : bits_(std::move(bits)) {
  for (auto b : bits_) {
    if (b > 1) throw std::invalid_argument("configuration entries must be 0 or 1");
    cardinality_ += b;
  }
}

Configuration Configuration::from_code(std::size_t n, std::uint64_t code) {
  std::vector<std::uint8_t> bits(n);
  for (std::size_t i = 0; i < n && i < 64; ++i) bits[i] = (code >> i) & 1u;
  return Configuration(std::move(bits));
}

std::string Configuration::to_string() const {
  std::string s(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) s[i] = '1';
  }
  return s;
}

namespace {

void check_dims(const Instance& inst, const Configuration& cfg) {
  if (cfg.size() != inst.size()) {
    throw dimension_error("configuration length " + std::to_string(cfg.size()) +
                          " does not match instance size " +
                          std::to_string(inst.size()));
  }
}

void check_index(const Instance& inst, const Configuration& cfg,
                 const FieldCache& cache, std::size_t i) {
  check_dims(inst, cfg);
  if (cache.h.size() != inst.size()) {
    throw dimension_error("field cache length does not match instance size");
  }
  if (i >= inst.size()) {
    throw std::out_of_range("flip index " + std::to_string(i) +
                            " out of range for size " +
                            std::to_string(inst.size()));
  }
}

}  // namespace

double energy(const Instance& inst, const Configuration& cfg) {
  check_dims(inst, cfg);
  const std::size_t n = inst.size();
  long double total = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    if (!cfg[i]) continue;
    const auto row = inst.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      if (cfg[j]) total += row[j];
    }
  }
  return static_cast<double>(total) * inst.scale();
}

FieldCache local_fields(const Instance& inst, const Configuration& cfg) {
  check_dims(inst, cfg);
  const std::size_t n = inst.size();
  FieldCache cache;
  cache.h.assign(n, 0.0);
  long double e = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = inst.row(i);
    long double s = 0.0L;
    for (std::size_t j = 0; j < n; ++j) {
      if (cfg[j]) s += row[j];
    }
    cache.h[i] = static_cast<double>(s) * inst.scale();
    if (cfg[i]) e += cache.h[i];
  }
  cache.energy = static_cast<double>(e);
  return cache;
}

double flip_delta(const Instance& inst, const Configuration& cfg,
                  const FieldCache& cache, std::size_t i) {
  check_index(inst, cfg, cache, i);
  // (1 - 2 eta_i) * 2 h_i + J_ii / sqrt n, using sum_{j != i} J_ij eta_j
  // = sqrt n h_i - J_ii eta_i.
  const double sign = cfg[i] ? -1.0 : 1.0;
  return sign * 2.0 * cache.h[i] + inst.coupling(i, i) * inst.scale();
}

void apply_flip(const Instance& inst, Configuration& cfg, FieldCache& cache,
                std::size_t i) {
  const double delta = flip_delta(inst, cfg, cache, i);
  const double step = (cfg[i] ? -1.0 : 1.0) * inst.scale();
  const auto row = inst.row(i);
  double* h = cache.h.data();
  const std::size_t n = inst.size();
  for (std::size_t k = 0; k < n; ++k) h[k] += step * row[k];
  cache.energy += delta;
  cfg.flip(i);
}

}  // namespace ubqp
