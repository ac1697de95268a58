#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace coatplan {

/// splitmix64 finalizer, used to spread user seeds into well-separated streams.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Deterministic random stream. All variate transforms are implemented
/// here rather than through std:: distributions, so a (seed, substream)
/// pair pins the exact draw sequence independent of the standard library.
///
/// Substreams are addressed by up to three indices (work unit, iteration,
/// block). Any unit of work is reproducible in isolation from its address,
/// which is what keeps parallel and serial runs identical.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(splitmix64(seed)) {}

  static Rng substream(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                       std::uint64_t c = 0) {
    std::uint64_t s = splitmix64(seed);
    s = splitmix64(s ^ (0x9e3779b97f4a7c15ULL + a));
    s = splitmix64(s ^ (0xc2b2ae3d27d4eb4fULL + b));
    s = splitmix64(s ^ (0x165667b19e3779f9ULL + c));
    return Rng(s);
  }

  std::uint64_t bits() { return gen_(); }

  /// Uniform on (0, 1); never 0, so log(uniform()) is safe.
  double uniform() {
    const double u = static_cast<double>(bits() >> 11) * 0x1.0p-53;
    return u > 0.0 ? u : 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller; consumes two uniforms per pair.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  double normal(double mean, double sd) { return mean + sd * normal(); }

  double exponential(double rate = 1.0) { return -std::log(uniform()) / rate; }

  /// Poisson by inversion; large means are split with the additivity of
  /// the distribution so the partial products never underflow.
  long poisson(double mean) {
    if (mean <= 0.0) return 0;
    if (mean > 512.0) {
      const double half = mean / 2.0;
      return poisson(half) + poisson(mean - half);
    }
    const double limit = std::exp(-mean);
    long n = -1;
    double prod = 1.0;
    do {
      prod *= uniform();
      ++n;
    } while (prod > limit);
    return n;
  }

  /// Uniform integer in [0, n) without modulo bias.
  std::uint64_t integer(std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t bound = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = bits();
    } while (x >= bound);
    return x % n;
  }

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace coatplan
