#include "mb/rng.hpp"

#include <cmath>

#include "mb/params.hpp"

namespace mb {

namespace {
std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t id) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(id), static_cast<std::uint32_t>(id >> 32),
                    0x6d62u};
  return std::mt19937_64(seq);
}
}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t id)
    : seed_(seed), id_(id), eng_(make_engine(seed, id)) {}

double RngStream::uniform() { return std::generate_canonical<double, 53>(eng_); }

double RngStream::normal() { return normal_(eng_); }

std::complex<double> RngStream::complex_normal() {
  const double s = std::sqrt(0.5);
  const double re = normal(), im = normal();
  return {s * re, s * im};
}

double RngStream::gamma(double shape) {
  if (!(shape > 0) || !std::isfinite(shape)) throw ValidationError("gamma: shape must be > 0");
  // libstdc++ uses Marsaglia-Tsang, with the U^{1/a} boost for a < 1
  std::gamma_distribution<double> g(shape, 1.0);
  return g(eng_);
}

double sample_gamma(double shape, RngStream& rng) { return rng.gamma(shape); }

}  // namespace mb
