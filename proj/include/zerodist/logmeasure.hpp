#pragma once

// Characteristic logarithms l^rh(r), l^lh(r), interval logarithmic measures,
// the logarithmic submeasure and the genus-1 Lindelof partial sums.

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "zerodist/errors.hpp"
#include "zerodist/kahan.hpp"
#include "zerodist/points.hpp"

namespace zerodist {

namespace detail {

inline void require_interval(double r, double R) {
  if (!(r > 0.0) || !std::isfinite(R) || !(R > r)) {
    throw DomainError("domain.bad-interval", "interval requires 0 < r < R < inf");
  }
}

// 1/z = (re - i im)/|z|^2, evaluated as (re/|z|)/|z| to avoid overflow.
inline double reciprocal_re(const Point& p, double modulus) noexcept {
  return (p.re / modulus) / modulus;
}
inline double reciprocal_im(const Point& p, double modulus) noexcept {
  return (-p.im / modulus) / modulus;
}

}  // namespace detail

enum class Side { right, left };

/// Prefix sums of Re^+(1/z), Re^-(1/z), Im^+(1/z), Im^-(1/z) over the points
/// with 0 < |z| in ascending modulus, each weighted by multiplicity, plus the
/// signed Lindelof sums of Re(1/z) and Im(1/z) over 1 < |z|. All
/// accumulation is compensated.
class LogMeasureTable {
 public:
  LogMeasureTable() : LogMeasureTable(PointDistribution{}) {}

  explicit LogMeasureTable(const PointDistribution& d) {
    const auto ents = d.entries();
    const auto mods = d.moduli();
    const std::size_t n = ents.size();
    std::size_t skip = 0;
    while (skip < n && mods[skip] == 0.0) ++skip;
    radii_.assign(mods.begin() + static_cast<std::ptrdiff_t>(skip), mods.end());
    rows_.reserve(n - skip + 1);
    rows_.push_back({});
    std::array<CompensatedSum<double>, kFamilies> acc{};
    for (std::size_t i = skip; i < n; ++i) {
      const double m = mods[i];
      const double w = static_cast<double>(ents[i].mult);
      const double re = detail::reciprocal_re(ents[i].point, m);
      const double im = detail::reciprocal_im(ents[i].point, m);
      const double outside = m > 1.0 ? w : 0.0;
      acc[kRh].add(w * std::max(re, 0.0));
      acc[kLh].add(w * std::max(-re, 0.0));
      acc[kImUp].add(w * std::max(im, 0.0));
      acc[kImDn].add(w * std::max(-im, 0.0));
      acc[kReSigned].add(outside * re);
      acc[kImSigned].add(outside * im);
      Row row;
      for (std::size_t f = 0; f < kFamilies; ++f) row[f] = acc[f].value();
      rows_.push_back(row);
    }
  }

  std::size_t size() const noexcept { return radii_.size(); }
  const std::vector<double>& radii() const noexcept { return radii_; }

  /// l^rh(r): sum of Re^+(1/z) over 0 < |z| <= r.
  double right(double r) const noexcept { return at(kRh, r); }
  /// l^lh(r): sum of Re^-(1/z) over 0 < |z| <= r.
  double left(double r) const noexcept { return at(kLh, r); }
  double imag_up(double r) const noexcept { return at(kImUp, r); }
  double imag_down(double r) const noexcept { return at(kImDn, r); }
  /// Lindelof partial sums over 1 < |z| <= r (zero for r <= 1).
  double real_partial_sum(double r) const noexcept { return at(kReSigned, r); }
  double imag_partial_sum(double r) const noexcept { return at(kImSigned, r); }

  double right(double r, double R) const {
    detail::require_interval(r, R);
    return right(R) - right(r);
  }
  double left(double r, double R) const {
    detail::require_interval(r, R);
    return left(R) - left(r);
  }
  double imag_up(double r, double R) const {
    detail::require_interval(r, R);
    return imag_up(R) - imag_up(r);
  }
  double imag_down(double r, double R) const {
    detail::require_interval(r, R);
    return imag_down(R) - imag_down(r);
  }

 private:
  enum Family : std::size_t { kRh, kLh, kImUp, kImDn, kReSigned, kImSigned, kFamilies };

  double at(Family f, double r) const noexcept {
    const auto it = std::upper_bound(radii_.begin(), radii_.end(), r);
    return rows_[static_cast<std::size_t>(it - radii_.begin())][f];
  }

  using Row = std::array<double, kFamilies>;

  std::vector<double> radii_;
  std::vector<Row> rows_;  ///< rows_[i]: prefix sums over the first i radii
};

inline double log_measure_right(const LogMeasureTable& t, double r, double R) {
  return t.right(r, R);
}

inline double log_measure_left(const LogMeasureTable& t, double r, double R) {
  return t.left(r, R);
}

/// l(r,R) = max(l^rh(r,R), l^lh(r,R)); identically 0 for the empty set.
inline double log_submeasure(const LogMeasureTable& t, double r, double R) {
  return std::max(t.right(r, R), t.left(r, R));
}

enum class LindelofKind { full, real, imaginary };

inline std::string_view to_string(LindelofKind k) noexcept {
  switch (k) {
    case LindelofKind::full: return "full";
    case LindelofKind::real: return "real";
    case LindelofKind::imaginary: return "imaginary";
  }
  return "?";
}

inline LindelofKind parse_lindelof_kind(std::string_view s) {
  if (s == "full") return LindelofKind::full;
  if (s == "real") return LindelofKind::real;
  if (s == "imaginary") return LindelofKind::imaginary;
  throw DomainError("domain.bad-kind", "unknown Lindelof kind '" + std::string(s) + "'");
}

struct LindelofDiagnostic {
  LindelofKind kind = LindelofKind::real;
  double sup_abs = 0.0;
  double witness_radius = 1.0;
  /// (r, partial sum) at each sample radius; for kind=full the modulus of
  /// the complex partial sum.
  std::vector<std::pair<double, double>> samples;
};

/// Partial sums over 1 < |z_j| <= r sampled at every distinct modulus in
/// (1, r_max] and at r_max itself.
inline LindelofDiagnostic lindelof_diagnostic(const PointDistribution& d, LindelofKind kind,
                                              double r_max) {
  if (!(r_max >= 1.0) || !std::isfinite(r_max)) {
    throw DomainError("domain.bad-radius", "lindelof diagnostic requires 1 <= r_max < inf");
  }
  LindelofDiagnostic diag;
  diag.kind = kind;
  diag.witness_radius = r_max;
  const auto ents = d.entries();
  const auto mods = d.moduli();
  CompensatedSum<double> re_sum;
  CompensatedSum<double> im_sum;
  bool have_witness = false;

  auto record = [&](double r) {
    double s = 0.0;
    switch (kind) {
      case LindelofKind::full: s = std::hypot(re_sum.value(), im_sum.value()); break;
      case LindelofKind::real: s = re_sum.value(); break;
      case LindelofKind::imaginary: s = im_sum.value(); break;
    }
    diag.samples.emplace_back(r, s);
    if (!have_witness || std::abs(s) > diag.sup_abs) {
      diag.sup_abs = std::abs(s);
      diag.witness_radius = r;
      have_witness = true;
    }
  };

  std::size_t i = 0;
  while (i < ents.size() && mods[i] <= 1.0) ++i;
  while (i < ents.size() && mods[i] <= r_max) {
    const double m = mods[i];
    for (; i < ents.size() && mods[i] == m; ++i) {
      const double w = static_cast<double>(ents[i].mult);
      re_sum.add(w * detail::reciprocal_re(ents[i].point, m));
      im_sum.add(w * detail::reciprocal_im(ents[i].point, m));
    }
    record(m);
  }
  if (diag.samples.empty() || diag.samples.back().first != r_max) record(r_max);
  return diag;
}

struct IdentityResidual {
  double max_abs = 0.0;
  double max_relative = 0.0;
  std::pair<double, double> witness{0.0, 0.0};
};

/// Residual of (l^rh(r,R) - l^lh(r,R)) - (S(R) - S(r)) over the grid, where S
/// is the real Lindelof partial sum. The two sides are accumulated
/// independently, so the residual is pure rounding. The relative figure
/// divides by max(1, l^rh(R) + l^lh(R)).
inline IdentityResidual check_prop1_identity(const PointDistribution& d,
                                          const std::vector<std::pair<double, double>>& grid) {
  const LogMeasureTable t(d);
  IdentityResidual res;
  for (const auto& [r, R] : grid) {
    if (!(r >= 1.0) || !std::isfinite(R) || !(R > r)) {
      throw DomainError("domain.bad-interval", "identity grid requires 1 <= r < R < inf");
    }
    const double lhs = t.right(r, R) - t.left(r, R);
    const double rhs = t.real_partial_sum(R) - t.real_partial_sum(r);
    const double abs_err = std::abs(lhs - rhs);
    const double scale = std::max(1.0, t.right(R) + t.left(R));
    if (abs_err > res.max_abs) {
      res.max_abs = abs_err;
      res.witness = {r, R};
    }
    res.max_relative = std::max(res.max_relative, abs_err / scale);
  }
  return res;
}

/// z -> iz.
inline PointDistribution rotate_quarter(const PointDistribution& d) {
  std::vector<Entry> out;
  out.reserve(d.support_size());
  for (const auto& e : d.entries()) out.push_back({{-e.point.im, e.point.re}, e.mult});
  return PointDistribution(std::move(out));
}

}  // namespace zerodist
