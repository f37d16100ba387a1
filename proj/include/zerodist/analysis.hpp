#pragma once

// The imaginary-axis logarithmic integral J(r,R; ln|f|), its comparison
// with the one-sided logarithmic measures of the zero set, the Q <-> d
// conversions, and the majorization criterion checkers.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "zerodist/errors.hpp"
#include "zerodist/kahan.hpp"
#include "zerodist/logmeasure.hpp"
#include "zerodist/points.hpp"
#include "zerodist/product.hpp"
#include "zerodist/quadrature.hpp"

namespace zerodist {

inline constexpr double kDefaultJTolerance = 1e-8;

struct JIntegralResult {
  double value = 0.0;
  double r = 0.0;
  double R = 0.0;
  double estimated_error = 0.0;
  unsigned subdivisions = 0;
};

namespace detail {

/// Ordinates |Im z_k| in (r, R) of zeros close to the imaginary axis
/// (|Re z| < 0.1 |z|); ln|f(iy)| is singular or sharply peaked there.
inline std::vector<double> near_axis_ordinates(const CanonicalProduct& f, double r, double R) {
  std::vector<double> out;
  const auto ents = f.zeros().entries();
  const auto mods = f.zeros().moduli();
  for (std::size_t i = 0; i < ents.size(); ++i) {
    if (!(std::abs(ents[i].point.re) < 0.1 * mods[i])) continue;
    const double y0 = std::abs(ents[i].point.im);
    if (y0 >= r && y0 <= R) out.push_back(y0);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace detail

/// (1/2pi) int_r^R ln|f(iy) f(-iy)| / y^2 dy.
inline JIntegralResult j_integral(const CanonicalProduct& f, double r, double R,
                                  double tolerance = kDefaultJTolerance) {
  detail::require_interval(r, R);
  if (!(tolerance > 0.0)) throw DomainError("domain.bad-tolerance", "tolerance must be positive");
  JIntegralResult res;
  res.r = r;
  res.R = R;
  if (f.zeros().empty() && f.origin_mult() == 0) {
    // ln|e^{icy} e^{-icy}| = 0 identically
    res.subdivisions = 1;
    return res;
  }

  const auto integrand = [&f](double y) {
    double v = log_modulus(f, {0.0, y}) + log_modulus(f, {0.0, -y});
    if (std::isinf(v)) {
      // a node landed exactly on an axis zero; the singularity is integrable
      const double y2 = std::nextafter(y, 2.0 * y);
      v = log_modulus(f, {0.0, y2}) + log_modulus(f, {0.0, -y2});
    }
    return v / (y * y);
  };

  const auto ords = detail::near_axis_ordinates(f, r, R);
  std::vector<double> cuts{r};
  for (double y0 : ords) {
    if (y0 > cuts.back() && y0 < R) cuts.push_back(y0);
  }
  cuts.push_back(R);
  const auto is_singular = [&ords](double y) { return std::binary_search(ords.begin(), ords.end(), y); };

  std::vector<quad::Panel> panels;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    auto part = quad::graded_partition(cuts[i], cuts[i + 1], is_singular(cuts[i]), is_singular(cuts[i + 1]));
    panels.insert(panels.end(), part.begin(), part.end());
  }
  const double scale = 1.0 / (2.0 * std::numbers::pi);
  const auto q = quad::integrate(integrand, panels, tolerance / scale);
  res.value = scale * q.value;
  res.estimated_error = scale * q.error;
  res.subdivisions = q.panels;
  return res;
}

struct DiscrepancyReport {
  std::vector<std::pair<double, double>> grid;
  std::vector<double> j_values;
  std::vector<double> l_rh_values;
  std::vector<double> l_lh_values;
  double max_abs_rh = 0.0;
  double max_abs_lh = 0.0;
  double quadrature_error = 0.0;
};

/// J over consecutive segments of an ascending radius grid, accumulated into
/// J(grid[0], grid[i]) for every i using additivity of the integral.
inline std::vector<double> cumulative_j(const CanonicalProduct& f, const std::vector<double>& radii,
                                        double tolerance, double* total_error = nullptr) {
  std::vector<double> out(radii.size(), 0.0);
  CompensatedSum<double> acc;
  double err = 0.0;
  for (std::size_t i = 1; i < radii.size(); ++i) {
    const auto seg = j_integral(f, radii[i - 1], radii[i], tolerance);
    acc.add(seg.value);
    err += seg.estimated_error;
    out[i] = acc.value();
  }
  if (total_error) *total_error = err;
  return out;
}

/// |J(2^a, 2^b) - l^rh(2^a, 2^b)| and the l^lh analogue over all pairs
/// k_min <= a < b <= k_max.
inline DiscrepancyReport lemma31_discrepancy(const CanonicalProduct& f, int k_min, int k_max,
                                             double tolerance = kDefaultJTolerance) {
  if (k_min < 0 || k_max <= k_min) {
    throw DomainError("domain.bad-grid", "lemma31 grid requires 0 <= k_min < k_max");
  }
  std::vector<double> radii;
  for (int k = k_min; k <= k_max; ++k) radii.push_back(std::ldexp(1.0, k));
  DiscrepancyReport rep;
  const auto jc = cumulative_j(f, radii, tolerance, &rep.quadrature_error);
  const LogMeasureTable table(f.zeros());
  for (std::size_t a = 0; a < radii.size(); ++a) {
    for (std::size_t b = a + 1; b < radii.size(); ++b) {
      const double j = jc[b] - jc[a];
      const double rh = table.right(radii[a], radii[b]);
      const double lh = table.left(radii[a], radii[b]);
      rep.grid.emplace_back(radii[a], radii[b]);
      rep.j_values.push_back(j);
      rep.l_rh_values.push_back(rh);
      rep.l_lh_values.push_back(lh);
      rep.max_abs_rh = std::max(rep.max_abs_rh, std::abs(j - rh));
      rep.max_abs_lh = std::max(rep.max_abs_lh, std::abs(j - lh));
    }
  }
  return rep;
}

using Samples = std::vector<std::pair<double, double>>;

namespace detail {

inline Samples samples_from(const Samples& in, double r0, std::string_view what) {
  Samples out;
  for (const auto& s : in) {
    if (!std::isfinite(s.first) || !std::isfinite(s.second)) {
      throw DomainError("domain.non-finite", std::string(what) + " samples must be finite");
    }
    if (s.second < 0.0) throw DomainError("domain.negative", std::string(what) + " must be nonnegative");
    if (s.first < r0) continue;
    if (!(s.first > 0.0)) throw DomainError("domain.bad-grid", "sample abscissae must be positive");
    if (!out.empty() && !(s.first > out.back().first)) {
      throw DomainError("domain.bad-grid", std::string(what) + " samples must be strictly ascending");
    }
    out.push_back(s);
  }
  return out;
}

}  // namespace detail

/// int_a^b Q(x)/x^2 dx for Q linear between (a, qa) and (b, qb).
inline double linear_over_square_integral(double a, double qa, double b, double qb) noexcept {
  const double slope = (qb - qa) / (b - a);
  const double intercept = qa - slope * a;
  return intercept * (1.0 / a - 1.0 / b) + slope * std::log(b / a);
}

/// Prefix integrals of Q(x)/x^2 for piecewise-linear Q through the samples.
inline std::vector<double> cumulative_q_integral(const Samples& q) {
  std::vector<double> out(q.size(), 0.0);
  CompensatedSum<double> acc;
  for (std::size_t i = 1; i < q.size(); ++i) {
    acc.add(linear_over_square_integral(q[i - 1].first, q[i - 1].second, q[i].first, q[i].second));
    out[i] = acc.value();
  }
  return out;
}

/// Least nonincreasing d on the grid with
///   int_r^R Q(x)/x^2 dx <= d(R) ln(R/r)  for all grid r < R,
/// Q interpolated linearly between samples. Samples below r0 are dropped.
inline Samples q_to_d(const Samples& q_samples, double r0) {
  const auto q = detail::samples_from(q_samples, r0, "Q");
  const auto cum = cumulative_q_integral(q);
  std::vector<double> raw(q.size(), 0.0);
  for (std::size_t j = 1; j < q.size(); ++j) {
    double best = 0.0;
    for (std::size_t i = 0; i < j; ++i) {
      const double integral = cum[j] - cum[i];
      const double span = std::log(q[j].first / q[i].first);
      double ratio = integral / span;
      while (ratio * span < integral) ratio = std::nextafter(ratio, 2.0 * ratio + 1.0);
      best = std::max(best, ratio);
    }
    raw[j] = best;
  }
  Samples out(q.size());
  double envelope = 0.0;
  for (std::size_t j = q.size(); j-- > 0;) {
    envelope = std::max(envelope, raw[j]);
    out[j] = {q[j].first, envelope};
  }
  return out;
}

/// Nondecreasing Q on the grid with Q(x)/x -> 0 whenever d -> 0 and
///   d(R) ln(R/r) <= int_r^R Q(x)/x^2 dx  for all grid r < R.
/// Q(x) = max_{t <= x} t d(t); inflated uniformly if rounding breaks the
/// inequality anywhere on the grid.
inline Samples d_to_q(const Samples& d_samples, double r0) {
  const auto d = detail::samples_from(d_samples, r0, "d");
  for (std::size_t i = 1; i < d.size(); ++i) {
    if (d[i].second > d[i - 1].second * (1.0 + 1e-12)) {
      throw DomainError("domain.increasing-d", "d must be nonincreasing");
    }
  }
  Samples q(d.size());
  double running = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    running = std::max(running, d[i].first * d[i].second);
    q[i] = {d[i].first, running};
  }
  for (int pass = 0; pass < 16; ++pass) {
    const auto cum = cumulative_q_integral(q);
    double factor = 1.0;
    for (std::size_t j = 1; j < q.size(); ++j) {
      for (std::size_t i = 0; i < j; ++i) {
        const double need = d[j].second * std::log(q[j].first / q[i].first);
        const double have = cum[j] - cum[i];
        if (need > have) factor = std::max(factor, have > 0.0 ? need / have : 2.0);
      }
    }
    if (factor == 1.0) break;
    factor = std::nextafter(factor, 2.0 * factor);
    for (auto& s : q) s.second *= factor;
  }
  return q;
}

enum class Theorem { A, B, C };
enum class ExcessKind { epsilon_linear, vanishing_d, constant };

inline std::string_view to_string(Theorem t) noexcept {
  switch (t) {
    case Theorem::A: return "A";
    case Theorem::B: return "B";
    case Theorem::C: return "C";
  }
  return "?";
}

inline std::string_view to_string(ExcessKind k) noexcept {
  switch (k) {
    case ExcessKind::epsilon_linear: return "epsilon_linear";
    case ExcessKind::vanishing_d: return "vanishing_d";
    case ExcessKind::constant: return "constant";
  }
  return "?";
}

inline Theorem parse_theorem(std::string_view s) {
  if (s == "a" || s == "A") return Theorem::A;
  if (s == "b" || s == "B") return Theorem::B;
  if (s == "c" || s == "C") return Theorem::C;
  throw DomainError("domain.bad-theorem", "theorem must be one of a, b, c");
}

inline ExcessKind excess_kind_for(Theorem t) noexcept {
  switch (t) {
    case Theorem::A: return ExcessKind::epsilon_linear;
    case Theorem::B: return ExcessKind::vanishing_d;
    case Theorem::C: return ExcessKind::constant;
  }
  return ExcessKind::constant;
}

inline Theorem theorem_for(ExcessKind k) noexcept {
  switch (k) {
    case ExcessKind::epsilon_linear: return Theorem::A;
    case ExcessKind::vanishing_d: return Theorem::B;
    case ExcessKind::constant: return Theorem::C;
  }
  return Theorem::C;
}

/// Additive allowance on the right-hand side of a majorization inequality:
/// eps ln(R/r) (A), d(R) ln(R/r) (B) or nothing (C).
struct ExcessProfile {
  ExcessKind kind = ExcessKind::constant;
  double eps = 0.0;
  Samples d_samples;  ///< nonincreasing; interpolated linearly, clamped at the ends
  double C = 0.0;

  static ExcessProfile epsilon_linear(double eps) {
    if (!(eps >= 0.0)) throw DomainError("domain.bad-eps", "eps must be nonnegative");
    return {ExcessKind::epsilon_linear, eps, {}, 0.0};
  }
  static ExcessProfile vanishing(Samples d = {}) {
    for (std::size_t i = 1; i < d.size(); ++i) {
      if (d[i].second > d[i - 1].second) {
        throw DomainError("domain.increasing-d", "d samples must be nonincreasing");
      }
    }
    return {ExcessKind::vanishing_d, 0.0, std::move(d), 0.0};
  }
  static ExcessProfile constant() { return {}; }

  double d_at(double x) const noexcept {
    if (d_samples.empty()) return 0.0;
    if (x <= d_samples.front().first) return d_samples.front().second;
    if (x >= d_samples.back().first) return d_samples.back().second;
    const auto it = std::upper_bound(d_samples.begin(), d_samples.end(), x,
                                     [](double v, const auto& s) { return v < s.first; });
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    const double t = (x - lo.first) / (hi.first - lo.first);
    return lo.second + t * (hi.second - lo.second);
  }

  double excess(double r, double R) const noexcept {
    switch (kind) {
      case ExcessKind::epsilon_linear: return eps * std::log(R / r);
      case ExcessKind::vanishing_d: return d_at(R) * std::log(R / r);
      case ExcessKind::constant: return 0.0;
    }
    return 0.0;
  }
};

/// Sorted, de-duplicated radii {2^k : k_min <= k <= k_max} plus extras.
inline std::vector<double> dyadic_radii(int k_min, int k_max, std::vector<double> extras = {}) {
  if (k_max < k_min) throw DomainError("domain.bad-grid", "grid requires k_min <= k_max");
  for (int k = k_min; k <= k_max; ++k) extras.push_back(std::ldexp(1.0, k));
  std::sort(extras.begin(), extras.end());
  extras.erase(std::unique(extras.begin(), extras.end()), extras.end());
  return extras;
}

struct CriterionReport {
  Theorem theorem = Theorem::C;
  double satisfied_constant = 0.0;
  std::pair<double, double> witness{0.0, 0.0};
  ExcessProfile profile;
  std::string grid_spec;
  double quadrature_error = 0.0;  ///< integrated_comparison only
};

namespace detail {

inline void require_grid(const std::vector<double>& radii) {
  if (radii.size() < 2) throw DomainError("domain.empty-grid", "grid needs at least two radii");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || !std::isfinite(radii[i])) {
      throw DomainError("domain.bad-grid", "grid radii must be positive and finite");
    }
    if (i > 0 && !(radii[i] > radii[i - 1])) {
      throw DomainError("domain.bad-grid", "grid radii must be strictly ascending");
    }
  }
}

inline std::string describe_grid(const std::vector<double>& radii) {
  std::ostringstream os;
  os.precision(17);
  os << radii.size() << " radii in [" << radii.front() << ", " << radii.back() << "]";
  return os.str();
}

/// Q samples whose piecewise-linear interpolant reproduces a per-segment
/// excess e_i on (x_(i-1), x_i] when e_i = eps ln(x_i/x_(i-1)):
/// Q(x_i) = x_i e_i / ln(x_i/x_(i-1)).
template <class SegmentExcess>
Samples excess_density(const std::vector<double>& radii, const SegmentExcess& segment_excess) {
  Samples q(radii.size());
  for (std::size_t i = 1; i < radii.size(); ++i) {
    const double e = std::max(0.0, segment_excess(i - 1, i));
    q[i] = {radii[i], radii[i] * e / std::log(radii[i] / radii[i - 1])};
  }
  q[0] = {radii[0], q.size() > 1 ? q[1].second * radii[0] / radii[1] : 0.0};
  return q;
}

/// max(0, max_{i<j} lhs(i,j) - rhs(i,j) - excess) with the first maximiser
/// in lexicographic (r, R) order as witness.
template <class Lhs, class Rhs>
void reduce_constant(const std::vector<double>& radii, const Lhs& lhs, const Rhs& rhs,
                     CriterionReport& rep) {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < radii.size(); ++i) {
    for (std::size_t j = i + 1; j < radii.size(); ++j) {
      const double v = lhs(i, j) - rhs(i, j) - rep.profile.excess(radii[i], radii[j]);
      if (v > best) {
        best = v;
        rep.witness = {radii[i], radii[j]};
      }
    }
  }
  rep.satisfied_constant = std::max(0.0, best);
  rep.profile.C = rep.satisfied_constant;
}

}  // namespace detail

/// Least C >= 0 with l_Z(r,R) <= l_W(r,R) + excess(r,R) + C on every grid pair.
/// For theorem B with no d supplied, d is fitted from the measured per-segment
/// excess through q_to_d.
inline CriterionReport check_criterion(const PointDistribution& z, const PointDistribution& w,
                                       Theorem theorem, ExcessProfile profile,
                                       std::vector<double> radii) {
  detail::require_grid(radii);
  if (profile.kind != excess_kind_for(theorem)) {
    throw DomainError("domain.profile-mismatch", "excess profile does not match the theorem");
  }
  const LogMeasureTable tz(z);
  const LogMeasureTable tw(w);
  std::vector<double> lz_rh(radii.size()), lz_lh(radii.size()), lw_rh(radii.size()), lw_lh(radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) {
    lz_rh[i] = tz.right(radii[i]);
    lz_lh[i] = tz.left(radii[i]);
    lw_rh[i] = tw.right(radii[i]);
    lw_lh[i] = tw.left(radii[i]);
  }
  const auto lz = [&](std::size_t i, std::size_t j) {
    return std::max(lz_rh[j] - lz_rh[i], lz_lh[j] - lz_lh[i]);
  };
  const auto lw = [&](std::size_t i, std::size_t j) {
    return std::max(lw_rh[j] - lw_rh[i], lw_lh[j] - lw_lh[i]);
  };

  CriterionReport rep;
  rep.theorem = theorem;
  rep.grid_spec = detail::describe_grid(radii);
  if (theorem == Theorem::B && profile.d_samples.empty()) {
    const auto q = detail::excess_density(radii, [&](std::size_t i, std::size_t j) { return lz(i, j) - lw(i, j); });
    profile.d_samples = q_to_d(q, radii.front());
  }
  rep.profile = std::move(profile);
  detail::reduce_constant(radii, lz, lw, rep);
  return rep;
}

/// The same reduction applied to J(r,R; ln|f|) against J(r,R; ln|g|). The
/// theorem is implied by the profile kind.
inline CriterionReport integrated_comparison(const CanonicalProduct& f, const CanonicalProduct& g,
                                             ExcessProfile profile, std::vector<double> radii,
                                             double tolerance = kDefaultJTolerance) {
  detail::require_grid(radii);
  double err_f = 0.0;
  double err_g = 0.0;
  const auto jf = cumulative_j(f, radii, tolerance, &err_f);
  const auto jg = cumulative_j(g, radii, tolerance, &err_g);
  const auto lhs = [&](std::size_t i, std::size_t j) { return jf[j] - jf[i]; };
  const auto rhs = [&](std::size_t i, std::size_t j) { return jg[j] - jg[i]; };

  CriterionReport rep;
  rep.theorem = theorem_for(profile.kind);
  rep.grid_spec = detail::describe_grid(radii);
  rep.quadrature_error = err_f + err_g;
  if (profile.kind == ExcessKind::vanishing_d && profile.d_samples.empty()) {
    const auto q = detail::excess_density(radii, [&](std::size_t i, std::size_t j) { return lhs(i, j) - rhs(i, j); });
    profile.d_samples = q_to_d(q, radii.front());
  }
  rep.profile = std::move(profile);
  detail::reduce_constant(radii, lhs, rhs, rep);
  return rep;
}

}  // namespace zerodist
