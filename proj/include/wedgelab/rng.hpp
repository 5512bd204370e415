#ifndef WEDGELAB_RNG_HPP
#define WEDGELAB_RNG_HPP

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>

namespace wedgelab {

// splitmix64: tiny, seedable, and identical results on every platform.
// All sampling in the library goes through this so that reports are
// reproducible regardless of compiler or thread schedule.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Deterministic random stream. `Rng(seed)` gives a master stream;
/// `Rng::indexed(seed, k)` gives an independent stream for sample k,
/// which makes point-cloud generation order- and thread-independent.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ^ 0x5851f42d4c957f2dULL) {
    // warm up so that seeds 0,1,2,... decorrelate immediately
    splitmix64(state_);
    splitmix64(state_);
  }

  static Rng indexed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t s = seed;
    std::uint64_t h = splitmix64(s) ^ (0x9e3779b97f4a7c15ULL * (index + 1));
    return Rng(h);
  }

  std::uint64_t next_u64() { return splitmix64(state_); }

  /// Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  /// Standard normal via Box-Muller (no cached spare: keeps the stream
  /// position a pure function of the number of calls).
  double normal() {
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
  }

  Eigen::VectorXd normal_vector(int dim) {
    Eigen::VectorXd v(dim);
    for (int i = 0; i < dim; ++i) v[i] = normal();
    return v;
  }

  /// Uniform in the closed ball of given radius.
  Eigen::VectorXd ball(int dim, double radius) {
    Eigen::VectorXd v = normal_vector(dim);
    double n = v.norm();
    if (n == 0.0) return Eigen::VectorXd::Zero(dim);
    double r = radius * std::pow(uniform(), 1.0 / dim);
    return (r / n) * v;
  }

 private:
  std::uint64_t state_;
};

}  // namespace wedgelab

#endif
