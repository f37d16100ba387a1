#pragma once

// Seeded synthetic point distributions for tests and the `gen` subcommand.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "zerodist/errors.hpp"
#include "zerodist/points.hpp"

namespace zerodist {

enum class Family { sector, real, symmetric, lattice, perturbed };

inline std::string_view to_string(Family f) noexcept {
  switch (f) {
    case Family::sector: return "sector";
    case Family::real: return "real";
    case Family::symmetric: return "symmetric";
    case Family::lattice: return "lattice";
    case Family::perturbed: return "perturbed";
  }
  return "?";
}

inline Family parse_family(std::string_view s) {
  for (auto f : {Family::sector, Family::real, Family::symmetric, Family::lattice, Family::perturbed}) {
    if (s == to_string(f)) return f;
  }
  throw DomainError("domain.bad-family", "unknown generator family '" + std::string(s) + "'");
}

struct GeneratorSpec {
  Family family = Family::sector;
  std::uint64_t count = 100;
  double r_min = 1.0;
  double r_max = 1024.0;
  /// Sector half-opening measured from the real axis, in (0, pi/2].
  double half_angle = std::numbers::pi / 4;
  std::uint64_t seed = 0;
};

namespace detail {

// Uniform double in [0, 1) from the top 53 bits; unlike
// std::uniform_real_distribution this is identical on every standard library.
inline double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace detail

/// Moduli are log-uniform in [r_min, r_max].
///  - sector: angle uniform in (-h, h) u (pi - h, pi + h);
///  - real: points on the real axis with random sign;
///  - symmetric: pairs {z, -z} with uniform angle (count must be even);
///  - lattice: polar draws snapped to the Gaussian integers, collisions
///    become multiplicities;
///  - perturbed: pairs {z, -(1 + delta) z}, |delta| <= 0.05.
inline PointDistribution generate(const GeneratorSpec& g) {
  if (!(g.r_min > 0.0) || !(g.r_max > g.r_min) || !std::isfinite(g.r_max)) {
    throw DomainError("domain.bad-range", "generator requires 0 < r_min < r_max < inf");
  }
  if (g.count == 0) throw DomainError("domain.bad-count", "count must be positive");
  if (g.family == Family::sector && !(g.half_angle > 0.0 && g.half_angle <= std::numbers::pi / 2)) {
    throw DomainError("domain.bad-angle", "half_angle must lie in (0, pi/2]");
  }
  if (g.family == Family::symmetric && g.count % 2 != 0) {
    throw DomainError("domain.bad-count", "symmetric family needs an even count");
  }

  std::mt19937_64 rng(g.seed);
  const double log_lo = std::log(g.r_min);
  const double log_span = std::log(g.r_max) - log_lo;
  auto modulus = [&] { return std::exp(log_lo + log_span * detail::unit_uniform(rng)); };
  auto full_angle = [&] { return 2.0 * std::numbers::pi * detail::unit_uniform(rng); };

  std::vector<Entry> out;
  out.reserve(g.count);
  auto add = [&](double re, double im) { out.push_back({{re, im}, 1}); };

  switch (g.family) {
    case Family::sector:
      for (std::uint64_t i = 0; i < g.count; ++i) {
        const double r = modulus();
        double theta = g.half_angle * (2.0 * detail::unit_uniform(rng) - 1.0);
        if (rng() & 1u) theta += std::numbers::pi;
        add(r * std::cos(theta), r * std::sin(theta));
      }
      break;
    case Family::real:
      for (std::uint64_t i = 0; i < g.count; ++i) {
        const double r = modulus();
        add((rng() & 1u) ? r : -r, 0.0);
      }
      break;
    case Family::symmetric:
      for (std::uint64_t i = 0; i < g.count / 2; ++i) {
        const double r = modulus();
        const double theta = full_angle();
        const double re = r * std::cos(theta);
        const double im = r * std::sin(theta);
        add(re, im);
        add(-re, -im);
      }
      break;
    case Family::lattice:
      for (std::uint64_t i = 0; i < g.count;) {
        const double r = modulus();
        const double theta = full_angle();
        const double re = std::round(r * std::cos(theta));
        const double im = std::round(r * std::sin(theta));
        if (re == 0.0 && im == 0.0) continue;
        add(re, im);
        ++i;
      }
      break;
    case Family::perturbed:
      for (std::uint64_t i = 0; i < g.count; i += 2) {
        const double r = modulus();
        const double theta = full_angle();
        const double re = r * std::cos(theta);
        const double im = r * std::sin(theta);
        add(re, im);
        if (i + 1 < g.count) {
          const double scale = 1.0 + 0.1 * (detail::unit_uniform(rng) - 0.5);
          add(-scale * re, -scale * im);
        }
      }
      break;
  }
  return PointDistribution(std::move(out));
}

}  // namespace zerodist
