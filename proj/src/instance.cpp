#include "ubqp/instance.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <system_error>

#include "ubqp/errors.hpp"
#include "ubqp/rng.hpp"

namespace ubqp {

namespace {

bool is_symmetric(std::size_t n, const std::vector<double>& j) {
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = i + 1; k < n; ++k) {
      if (j[i * n + k] != j[k * n + i]) return false;
    }
  }
  return true;
}

constexpr const char* kMagic = "ubqp-instance";

}  // namespace

Instance::Instance(std::size_t n, std::vector<double> couplings,
                   std::uint64_t seed, bool symmetric)
    : n_(n), j_(std::move(couplings)), seed_(seed), symmetric_(symmetric) {
  if (n_ == 0) throw size_error("instance size must be at least 1");
  if (j_.size() != n_ * n_) {
    throw dimension_error("coupling matrix has " + std::to_string(j_.size()) +
                          " entries, expected " + std::to_string(n_ * n_));
  }
  for (std::size_t k = 0; k < j_.size(); ++k) {
    if (!std::isfinite(j_[k])) {
      throw std::invalid_argument("non-finite coupling at index " +
                                  std::to_string(k));
    }
  }
  if (symmetric_ && !is_symmetric(n_, j_)) {
    throw std::invalid_argument("coupling matrix flagged symmetric but is not");
  }
  scale_ = 1.0 / std::sqrt(static_cast<double>(n_));
}

Instance Instance::from_matrix(std::size_t n, std::vector<double> couplings,
                               std::uint64_t seed) {
  const bool sym = couplings.size() == n * n && is_symmetric(n, couplings);
  return Instance(n, std::move(couplings), seed, sym);
}

bool operator==(const Instance& a, const Instance& b) noexcept {
  return a.n_ == b.n_ && a.seed_ == b.seed_ && a.symmetric_ == b.symmetric_ &&
         a.j_ == b.j_;
}

Instance generate_raw_instance(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw size_error("instance size must be at least 1");
  std::vector<double> l(n * n);
  // One stream per row, so the matrix does not depend on fill order.
  for (std::size_t i = 0; i < n; ++i) {
    SplitMix64 rng(derive_seed(seed, i));
    for (std::size_t k = 0; k < n; ++k) l[i * n + k] = rng.normal();
  }
  return Instance(n, std::move(l), seed, false);
}

Instance generate_instance(std::size_t n, std::uint64_t seed) {
  const Instance raw = generate_raw_instance(n, seed);
  std::vector<double> j(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    j[i * n + i] = raw.coupling(i, i);
    for (std::size_t k = i + 1; k < n; ++k) {
      const double v = (raw.coupling(i, k) + raw.coupling(k, i)) / 2.0;
      j[i * n + k] = v;
      j[k * n + i] = v;
    }
  }
  return Instance(n, std::move(j), seed, true);
}

void write_instance(std::ostream& out, const Instance& inst) {
  const std::size_t n = inst.size();
  out << kMagic << '\n'
      << "format_version " << kInstanceFormatVersion << '\n'
      << "n " << n << '\n'
      << "seed " << inst.seed() << '\n'
      << "symmetric " << (inst.symmetric() ? "true" : "false") << '\n'
      << "matrix\n";
  char buf[64];
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      // Shortest representation that parses back to the same double.
      auto res = std::to_chars(buf, buf + sizeof(buf), inst.coupling(i, k));
      if (k) out << ' ';
      out.write(buf, res.ptr - buf);
    }
    out << '\n';
  }
}

namespace {

std::string expect_field(std::istream& in, const char* name) {
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key != name) {
      throw parse_error(name, "expected field '" + std::string(name) +
                                  "', found '" + key + "'");
    }
    std::string value;
    std::getline(ls >> std::ws, value);
    return value;
  }
  throw parse_error(name, "unexpected end of file");
}

template <typename T>
T parse_integer(const std::string& text, const char* field) {
  T value{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw parse_error(field, "not a valid unsigned integer: '" + text + "'");
  }
  return value;
}

}  // namespace

Instance read_instance(std::istream& in) {
  std::string magic;
  if (!(in >> magic) || magic != kMagic) {
    throw parse_error("header", "missing '" + std::string(kMagic) + "' header");
  }
  const auto version =
      parse_integer<int>(expect_field(in, "format_version"), "format_version");
  if (version != kInstanceFormatVersion) {
    throw parse_error("format_version",
                      "unsupported version " + std::to_string(version));
  }
  const auto n = parse_integer<std::size_t>(expect_field(in, "n"), "n");
  if (n == 0) throw parse_error("n", "must be at least 1");
  const auto seed =
      parse_integer<std::uint64_t>(expect_field(in, "seed"), "seed");
  const std::string sym_text = expect_field(in, "symmetric");
  bool symmetric = false;
  if (sym_text == "true") {
    symmetric = true;
  } else if (sym_text != "false") {
    throw parse_error("symmetric", "expected 'true' or 'false', found '" +
                                       sym_text + "'");
  }
  if (!expect_field(in, "matrix").empty()) {
    throw parse_error("matrix", "unexpected text after 'matrix' keyword");
  }

  std::vector<double> values;
  values.reserve(n * n);
  std::string token;
  while (in >> token) {
    double v = 0.0;
    const char* end = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(token.data(), end, v);
    if (ec != std::errc() || ptr != end) {
      throw parse_error("matrix", "entry " + std::to_string(values.size()) +
                                      " is not a number: '" + token + "'");
    }
    if (!std::isfinite(v)) {
      throw parse_error("matrix", "entry " + std::to_string(values.size()) +
                                      " is not finite: '" + token + "'");
    }
    values.push_back(v);
  }
  if (values.size() != n * n) {
    throw parse_error("matrix", "size mismatch: header n=" + std::to_string(n) +
                                    " requires " + std::to_string(n * n) +
                                    " entries, found " +
                                    std::to_string(values.size()));
  }
  try {
    return Instance(n, std::move(values), seed, symmetric);
  } catch (const std::invalid_argument& e) {
    throw parse_error("symmetric", e.what());
  }
}

void save_instance(const Instance& inst, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  write_instance(out, inst);
  out.flush();
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "' for reading");
  return read_instance(in);
}

}  // namespace ubqp
