#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace mb {

// Seeded stream; (seed, id) determines the sequence bit-for-bit.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t id);

  double uniform();  // in [0, 1)
  double normal();
  // standard complex Gaussian: E|z|^2 = 1
  std::complex<double> complex_normal();
  double exponential() { return gamma(1.0); }
  double gamma(double shape);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t id() const { return id_; }
  std::mt19937_64& engine() { return eng_; }

 private:
  std::uint64_t seed_, id_;
  std::mt19937_64 eng_;
  std::normal_distribution<double> normal_;
};

double sample_gamma(double shape, RngStream& rng);

}  // namespace mb
