#pragma once

// Finite point distributions with integer multiplicities, together with the
// radial counting function, upper-density and angular-separation estimators
// and multiset algebra.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "zerodist/errors.hpp"

namespace zerodist {

using Multiplicity = std::uint64_t;

struct Point {
  double re = 0.0;
  double im = 0.0;

  std::complex<double> value() const noexcept { return {re, im}; }
  double modulus() const noexcept { return std::hypot(re, im); }
  bool is_origin() const noexcept { return re == 0.0 && im == 0.0; }

  friend bool operator==(const Point&, const Point&) = default;
};

struct Entry {
  Point point;
  Multiplicity mult = 1;

  friend bool operator==(const Entry&, const Entry&) = default;
};

namespace detail {

// +0.0 and -0.0 compare equal but are distinct bit patterns; normalise so
// that point identity is well defined.
inline double canonical_zero(double x) noexcept { return x == 0.0 ? 0.0 : x; }

inline bool canonical_less(const Point& a, double mod_a, const Point& b, double mod_b) noexcept {
  if (mod_a != mod_b) return mod_a < mod_b;
  if (a.re != b.re) return a.re < b.re;
  return a.im < b.im;
}

inline std::string describe(const Point& p) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << p.re << ", " << p.im << ")";
  return os.str();
}

}  // namespace detail

/// Multiset of complex points. Entries are kept in canonical order
/// (|z|, re, im) with every support point stored once.
class PointDistribution {
 public:
  PointDistribution() = default;

  /// Accepts entries in any order; duplicates are merged by adding their
  /// multiplicities. Throws DomainError on zero multiplicity or non-finite
  /// coordinates.
  explicit PointDistribution(std::vector<Entry> entries) {
    for (auto& e : entries) {
      if (e.mult == 0) {
        throw DomainError("domain.zero-multiplicity",
                          "multiplicity must be positive at " + detail::describe(e.point));
      }
      if (!std::isfinite(e.point.re) || !std::isfinite(e.point.im)) {
        throw DomainError("domain.non-finite-point", "point coordinates must be finite");
      }
      e.point.re = detail::canonical_zero(e.point.re);
      e.point.im = detail::canonical_zero(e.point.im);
    }
    std::vector<double> mods(entries.size());
    std::vector<std::size_t> order(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
      mods[i] = entries[i].point.modulus();
      order[i] = i;
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return detail::canonical_less(entries[a].point, mods[a], entries[b].point, mods[b]);
    });
    entries_.reserve(entries.size());
    moduli_.reserve(entries.size());
    for (std::size_t idx : order) {
      if (!entries_.empty() && entries_.back().point == entries[idx].point) {
        entries_.back().mult += entries[idx].mult;
      } else {
        entries_.push_back(entries[idx]);
        moduli_.push_back(mods[idx]);
      }
    }
    rebuild_cumulative();
  }

  static PointDistribution from_points(std::span<const Point> points) {
    std::vector<Entry> entries;
    entries.reserve(points.size());
    for (const auto& p : points) entries.push_back({p, 1});
    return PointDistribution(std::move(entries));
  }

  std::span<const Entry> entries() const noexcept { return entries_; }
  /// Moduli aligned with entries(), ascending.
  std::span<const double> moduli() const noexcept { return moduli_; }

  bool empty() const noexcept { return entries_.empty(); }
  std::size_t support_size() const noexcept { return entries_.size(); }
  Multiplicity total_multiplicity() const noexcept {
    return cumulative_.empty() ? 0 : cumulative_.back();
  }
  double max_modulus() const noexcept { return moduli_.empty() ? 0.0 : moduli_.back(); }

  /// Total multiplicity of points with |z| <= r.
  Multiplicity count_in_disk(double r) const noexcept {
    const auto it = std::upper_bound(moduli_.begin(), moduli_.end(), r);
    const auto n = static_cast<std::size_t>(it - moduli_.begin());
    return n == 0 ? 0 : cumulative_[n - 1];
  }

  /// Multiplicity of one support point (0 if absent).
  Multiplicity multiplicity_of(const Point& p) const noexcept {
    const Point q{detail::canonical_zero(p.re), detail::canonical_zero(p.im)};
    const double m = q.modulus();
    auto it = std::lower_bound(moduli_.begin(), moduli_.end(), m);
    for (auto i = static_cast<std::size_t>(it - moduli_.begin());
         i < entries_.size() && moduli_[i] == m; ++i) {
      if (entries_[i].point == q) return entries_[i].mult;
    }
    return 0;
  }

  friend bool operator==(const PointDistribution& a, const PointDistribution& b) {
    return a.entries_ == b.entries_;
  }

 private:
  struct presorted_tag {};

  PointDistribution(presorted_tag, std::vector<Entry> entries, std::vector<double> moduli)
      : entries_(std::move(entries)), moduli_(std::move(moduli)) {
    rebuild_cumulative();
  }

  void rebuild_cumulative() {
    cumulative_.resize(entries_.size());
    Multiplicity running = 0;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      running += entries_[i].mult;
      cumulative_[i] = running;
    }
  }

  std::vector<Entry> entries_;
  std::vector<double> moduli_;
  std::vector<Multiplicity> cumulative_;

  friend PointDistribution union_of(const PointDistribution&, const PointDistribution&);
  friend PointDistribution difference(const PointDistribution&, const PointDistribution&);
};

inline Multiplicity count_in_disk(const PointDistribution& d, double r) noexcept {
  return d.count_in_disk(r);
}

struct RadialProfile {
  std::vector<double> radii;
  std::vector<Multiplicity> counts;
};

/// Samples n^rad at the given radii (sorted ascending on output).
inline RadialProfile radial_profile(const PointDistribution& d, std::vector<double> radii) {
  std::sort(radii.begin(), radii.end());
  RadialProfile out;
  out.counts.reserve(radii.size());
  for (double r : radii) out.counts.push_back(d.count_in_disk(r));
  out.radii = std::move(radii);
  return out;
}

struct DensityEstimate {
  double value = 0.0;
  double argmax_radius = 0.0;
};

/// max over the data radii r > 0 of n^rad(r)/r, with points at the origin
/// left out of the count. The smallest maximising radius is reported.
inline DensityEstimate upper_density(const PointDistribution& d) noexcept {
  DensityEstimate best;
  const auto mods = d.moduli();
  const Multiplicity at_origin = d.count_in_disk(0.0);
  for (std::size_t i = 0; i < mods.size(); ++i) {
    const double r = mods[i];
    if (r == 0.0) continue;
    if (i + 1 < mods.size() && mods[i + 1] == r) continue;  // count the whole circle
    const double ratio = static_cast<double>(d.count_in_disk(r) - at_origin) / r;
    if (ratio > best.value) {
      best.value = ratio;
      best.argmax_radius = r;
    }
  }
  return best;
}

struct SeparationReport {
  double tail_radius = 0.0;
  double min_ratio = 1.0;
  double max_imag_ratio = 0.0;
};

/// Angular separation from the imaginary axis over the tail |z| > tail_radius.
inline SeparationReport separation(const PointDistribution& d, double tail_radius) noexcept {
  SeparationReport rep;
  rep.tail_radius = tail_radius;
  const auto mods = d.moduli();
  const auto ents = d.entries();
  for (std::size_t i = 0; i < mods.size(); ++i) {
    if (!(mods[i] > tail_radius) || mods[i] == 0.0) continue;
    rep.min_ratio = std::min(rep.min_ratio, std::abs(ents[i].point.re) / mods[i]);
    rep.max_imag_ratio = std::max(rep.max_imag_ratio, std::abs(ents[i].point.im) / mods[i]);
  }
  return rep;
}

/// Multiset union: multiplicities add.
inline PointDistribution union_of(const PointDistribution& a, const PointDistribution& b) {
  std::vector<Entry> out;
  std::vector<double> mods;
  out.reserve(a.entries_.size() + b.entries_.size());
  mods.reserve(out.capacity());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.entries_.size() || j < b.entries_.size()) {
    if (j == b.entries_.size() ||
        (i < a.entries_.size() && detail::canonical_less(a.entries_[i].point, a.moduli_[i],
                                                         b.entries_[j].point, b.moduli_[j]))) {
      out.push_back(a.entries_[i]);
      mods.push_back(a.moduli_[i++]);
    } else if (i == a.entries_.size() || a.entries_[i].point != b.entries_[j].point) {
      out.push_back(b.entries_[j]);
      mods.push_back(b.moduli_[j++]);
    } else {
      out.push_back({a.entries_[i].point, a.entries_[i].mult + b.entries_[j].mult});
      mods.push_back(a.moduli_[i]);
      ++i;
      ++j;
    }
  }
  return PointDistribution(PointDistribution::presorted_tag{}, std::move(out), std::move(mods));
}

/// Multiset difference a \ b. Requires b to be contained in a; otherwise
/// throws ContainmentViolation naming the first offending point of b.
inline PointDistribution difference(const PointDistribution& a, const PointDistribution& b) {
  std::vector<Entry> out;
  std::vector<double> mods;
  out.reserve(a.entries_.size());
  mods.reserve(a.entries_.size());
  std::size_t j = 0;
  for (std::size_t i = 0; i < a.entries_.size(); ++i) {
    const auto& ea = a.entries_[i];
    if (j < b.entries_.size() &&
        detail::canonical_less(b.entries_[j].point, b.moduli_[j], ea.point, a.moduli_[i])) {
      const auto& w = b.entries_[j].point;
      throw ContainmentViolation(w.re, w.im, "point " + detail::describe(w) + " is not in the minuend");
    }
    Multiplicity m = ea.mult;
    if (j < b.entries_.size() && b.entries_[j].point == ea.point) {
      if (b.entries_[j].mult > m) {
        throw ContainmentViolation(ea.point.re, ea.point.im,
                                   "multiplicity at " + detail::describe(ea.point) + " would go negative");
      }
      m -= b.entries_[j].mult;
      ++j;
    }
    if (m > 0) {
      out.push_back({ea.point, m});
      mods.push_back(a.moduli_[i]);
    }
  }
  if (j < b.entries_.size()) {
    const auto& w = b.entries_[j].point;
    throw ContainmentViolation(w.re, w.im, "point " + detail::describe(w) + " is not in the minuend");
  }
  return PointDistribution(PointDistribution::presorted_tag{}, std::move(out), std::move(mods));
}

}  // namespace zerodist
