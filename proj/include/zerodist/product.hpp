#pragma once

// Genus-1 canonical products f(z) = z^m e^(cz) prod E_1(z/z_k)^mult_k with
// E_1(u) = (1 - u) e^u, evaluated through ln|f|.

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "zerodist/errors.hpp"
#include "zerodist/kahan.hpp"
#include "zerodist/points.hpp"

namespace zerodist {

class CanonicalProduct {
 public:
  CanonicalProduct() = default;

  /// Zeros at the origin are moved into the z^m factor.
  explicit CanonicalProduct(const PointDistribution& zeros, Multiplicity origin_mult = 0,
                            std::complex<double> exp_coeff = {0.0, 0.0})
      : origin_mult_(origin_mult), exp_coeff_(exp_coeff) {
    std::vector<Entry> rest;
    rest.reserve(zeros.support_size());
    for (const auto& e : zeros.entries()) {
      if (e.point.is_origin()) {
        origin_mult_ += e.mult;
      } else {
        rest.push_back(e);
      }
    }
    zeros_ = PointDistribution(std::move(rest));
  }

  const PointDistribution& zeros() const noexcept { return zeros_; }
  Multiplicity origin_mult() const noexcept { return origin_mult_; }
  std::complex<double> exp_coeff() const noexcept { return exp_coeff_; }

  /// All zeros including the origin.
  PointDistribution zero_set() const {
    if (origin_mult_ == 0) return zeros_;
    return union_of(zeros_, PointDistribution({{Point{0.0, 0.0}, origin_mult_}}));
  }

 private:
  PointDistribution zeros_;
  Multiplicity origin_mult_ = 0;
  std::complex<double> exp_coeff_{0.0, 0.0};
};

namespace detail {

/// ln|1 - u|. For |u| < 1/2 the identity |1-u|^2 = 1 - 2 Re u + |u|^2 is fed
/// to log1p so that small |u| keeps full relative accuracy.
inline double log_abs_one_minus(std::complex<double> u) noexcept {
  const double ur = u.real();
  const double ui = u.imag();
  if (std::abs(ur) < 0.5 && std::abs(ui) < 0.5 && ur * ur + ui * ui < 0.25) {
    return 0.5 * std::log1p(ur * (ur - 2.0) + ui * ui);
  }
  return std::log(std::hypot(1.0 - ur, ui));
}

}  // namespace detail

/// ln|f(z)|, or -inf exactly at a zero.
inline double log_modulus(const CanonicalProduct& p, std::complex<double> z) noexcept {
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  CompensatedSum<double> acc;
  if (p.origin_mult() > 0) {
    if (z == std::complex<double>(0.0, 0.0)) return kNegInf;
    acc.add(static_cast<double>(p.origin_mult()) * std::log(std::abs(z)));
  }
  acc.add((p.exp_coeff() * z).real());
  for (const auto& e : p.zeros().entries()) {
    const std::complex<double> zk = e.point.value();
    if (z == zk) return kNegInf;
    const std::complex<double> u = z / zk;
    acc.add(static_cast<double>(e.mult) * (detail::log_abs_one_minus(u) + u.real()));
  }
  return acc.value();
}

/// ln|f(iy)| for each y.
inline std::vector<double> imag_axis_trace(const CanonicalProduct& p, std::span<const double> ys) {
  std::vector<double> out;
  out.reserve(ys.size());
  for (double y : ys) out.push_back(log_modulus(p, {0.0, y}));
  return out;
}

struct TypeEstimate {
  double value = 0.0;
  std::vector<double> sample_radii;
  double max_ratio_radius = 0.0;
};

/// max over r in radii and theta_j = 2 pi j / angles of ln|f(r e^(i theta))| / r.
inline TypeEstimate type_estimate(const CanonicalProduct& p, std::span<const double> radii,
                                  unsigned angles_per_circle) {
  if (radii.empty()) throw DomainError("domain.empty-grid", "type estimate needs at least one radius");
  if (angles_per_circle == 0) throw DomainError("domain.bad-angles", "angles_per_circle must be positive");
  TypeEstimate est;
  est.value = -std::numeric_limits<double>::infinity();
  const auto& zeros = p.zeros();
  for (double r : radii) {
    if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("domain.bad-radius", "radii must be positive");
    while (zeros.count_in_disk(r) != zeros.count_in_disk(std::nextafter(r, 0.0))) {
      r = std::nextafter(r, std::numeric_limits<double>::infinity());
    }
    est.sample_radii.push_back(r);
    for (unsigned j = 0; j < angles_per_circle; ++j) {
      const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(angles_per_circle);
      const double ratio = log_modulus(p, std::polar(r, theta)) / r;
      if (ratio > est.value) {
        est.value = ratio;
        est.max_ratio_radius = r;
      }
    }
  }
  est.value = std::max(est.value, 0.0);
  return est;
}

struct DominanceViolation {
  double y = 0.0;
  double excess = 0.0;  ///< +inf where g vanishes and f does not
};

/// Sampled check of ln|f(iy)| <= ln|g(iy)| + eps |y|. A -inf left-hand side
/// always satisfies the inequality.
inline std::vector<DominanceViolation> dominance_check(const CanonicalProduct& f,
                                                       const CanonicalProduct& g,
                                                       std::span<const double> ys, double eps) {
  if (!(eps >= 0.0)) throw DomainError("domain.bad-eps", "eps must be nonnegative");
  std::vector<DominanceViolation> out;
  for (double y : ys) {
    const double lf = log_modulus(f, {0.0, y});
    if (lf == -std::numeric_limits<double>::infinity()) continue;
    const double lg = log_modulus(g, {0.0, y});
    if (lg == -std::numeric_limits<double>::infinity()) {
      out.push_back({y, std::numeric_limits<double>::infinity()});
      continue;
    }
    const double excess = lf - (lg + eps * std::abs(y));
    if (excess > 0.0) out.push_back({y, excess});
  }
  return out;
}

}  // namespace zerodist
