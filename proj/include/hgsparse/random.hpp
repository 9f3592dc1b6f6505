#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace hgsparse {

using Seed = std::uint64_t;

namespace detail {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace detail

/// Child seed for a named sub-stream. Changing one label never perturbs the
/// streams handed out under other labels.
constexpr Seed derive_seed(Seed parent, std::string_view label,
                           std::uint64_t index = 0) {
  return detail::splitmix64(detail::splitmix64(parent ^ detail::fnv1a(label)) +
                            index);
}

/// Platform-stable random source. The standard distributions are
/// implementation-defined, so the few we need are written out here.
class Rng {
 public:
  explicit Rng(Seed seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller; the spare value is cached.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

  std::size_t below(std::size_t bound) {
    return static_cast<std::size_t>(uniform() * static_cast<double>(bound));
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Draws indices i.i.d. with probability proportional to nonnegative masses.
/// Zero-mass entries are never returned.
class DiscreteSampler {
 public:
  explicit DiscreteSampler(std::span<const double> masses) {
    cumulative_.reserve(masses.size());
    double acc = 0.0;
    for (double m : masses) {
      if (!(m >= 0.0) || !std::isfinite(m))
        throw std::invalid_argument("sampling masses must be finite and nonnegative");
      acc += m;
      cumulative_.push_back(acc);
    }
    if (!(acc > 0.0))
      throw std::invalid_argument("sampling masses are all zero");
  }

  double total() const { return cumulative_.back(); }

  std::size_t operator()(Rng& rng) const {
    const double target = rng.uniform() * total();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
    // target < total, so it is never end() unless rounding pushed it there.
    if (it == cumulative_.end()) --it;
    auto idx = static_cast<std::size_t>(it - cumulative_.begin());
    // Rounding at the top can land on a trailing zero-mass entry.
    while (idx > 0 && cumulative_[idx] == cumulative_[idx - 1]) --idx;
    return idx;
  }

 private:
  std::vector<double> cumulative_;
};

}  // namespace hgsparse
