#pragma once

// Dyadic balancing of a point distribution. Each block (2^k, 2^(k+1)] gets
// N_k copies of a point of modulus 2^(k+1) on the axis that cancels the
// block's one-sided imbalance, so that the union satisfies the real (or
// imaginary) Lindelof condition while the logarithmic submeasure grows by at
// most 1 over any dyadic interval.

#include <cmath>
#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "zerodist/errors.hpp"
#include "zerodist/logmeasure.hpp"
#include "zerodist/points.hpp"

namespace zerodist {

enum class BlockCase { plus, minus };
enum class Axis { real, imaginary };

inline std::string_view to_string(BlockCase c) noexcept { return c == BlockCase::plus ? "plus" : "minus"; }
inline std::string_view to_string(Axis a) noexcept { return a == Axis::real ? "real" : "imaginary"; }

struct BlockCertificate {
  unsigned k = 0;
  double r_lo = 1.0;  ///< r_k = 2^k
  double r_hi = 2.0;  ///< r_(k+1) = 2^(k+1)
  Axis axis = Axis::real;
  BlockCase block_case = BlockCase::plus;
  /// Block measures of the input: Re^+/Re^- for the real axis, Im^+/Im^-
  /// for the imaginary axis.
  double positive_side = 0.0;
  double negative_side = 0.0;
  Multiplicity count = 0;  ///< N_k
  /// Signed coordinate of the inserted point along `axis`.
  double inserted_at = 0.0;
  /// (weaker side + N_k / r_(k+1)) - stronger side, in [0, 1/r_(k+1)).
  double slack = 0.0;

  Point inserted_point() const noexcept {
    return axis == Axis::real ? Point{inserted_at, 0.0} : Point{0.0, inserted_at};
  }
  /// Contribution of the balanced block to the signed partial sum
  /// (positive side minus negative side).
  double signed_slack() const noexcept { return block_case == BlockCase::plus ? slack : -slack; }
};

struct BalanceResult {
  Axis axis = Axis::real;
  PointDistribution compensator;
  std::vector<BlockCertificate> certificates;
  PointDistribution combined;
  LindelofDiagnostic diagnostic;
};

namespace detail {

/// Number of dyadic blocks needed to cover the points with |z| > 1, i.e.
/// the least K with 2^K >= max|z|; 0 when no point lies outside the unit disk.
inline unsigned dyadic_block_count(const PointDistribution& z) noexcept {
  const double m = z.max_modulus();
  if (!(m > 1.0)) return 0;
  int e = 0;
  const double frac = std::frexp(m, &e);  // m = frac * 2^e, frac in [0.5, 1)
  return static_cast<unsigned>(frac == 0.5 ? e - 1 : e);
}

inline BlockCertificate certify_block(unsigned k, Axis axis, double positive, double negative) {
  BlockCertificate c;
  c.k = k;
  c.r_lo = std::ldexp(1.0, static_cast<int>(k));
  c.r_hi = std::ldexp(1.0, static_cast<int>(k) + 1);
  c.axis = axis;
  c.positive_side = positive;
  c.negative_side = negative;
  c.block_case = positive <= negative ? BlockCase::plus : BlockCase::minus;
  const double weaker = c.block_case == BlockCase::plus ? positive : negative;
  const double stronger = c.block_case == BlockCase::plus ? negative : positive;
  const double step = 1.0 / c.r_hi;

  auto n = static_cast<Multiplicity>(std::ceil(c.r_hi * (stronger - weaker)));
  // ceil() of a rounded product can be off by one in either direction.
  while (weaker + static_cast<double>(n) * step < stronger) ++n;
  while (n > 0 && weaker + static_cast<double>(n - 1) * step >= stronger) --n;
  c.count = n;
  c.slack = (weaker + static_cast<double>(n) * step) - stronger;

  // Real axis: +r adds Re^+ = 1/r, -r adds Re^- = 1/r.
  // Imaginary axis: -ir has Im(1/w) = +1/r, +ir has Im(1/w) = -1/r.
  if (axis == Axis::real) {
    c.inserted_at = c.block_case == BlockCase::plus ? c.r_hi : -c.r_hi;
  } else {
    c.inserted_at = c.block_case == BlockCase::plus ? -c.r_hi : c.r_hi;
  }
  return c;
}

}  // namespace detail

inline BalanceResult balance_along(const PointDistribution& z, Axis axis) {
  const LogMeasureTable table(z);
  const unsigned blocks = detail::dyadic_block_count(z);

  BalanceResult res;
  res.axis = axis;
  res.certificates.reserve(blocks);
  std::vector<Entry> inserted;
  for (unsigned k = 0; k < blocks; ++k) {
    const double lo = std::ldexp(1.0, static_cast<int>(k));
    const double hi = 2.0 * lo;
    const double pos = axis == Axis::real ? table.right(lo, hi) : table.imag_up(lo, hi);
    const double neg = axis == Axis::real ? table.left(lo, hi) : table.imag_down(lo, hi);
    auto cert = detail::certify_block(k, axis, pos, neg);
    if (cert.count > 0) inserted.push_back({cert.inserted_point(), cert.count});
    res.certificates.push_back(cert);
  }
  res.compensator = PointDistribution(std::move(inserted));
  res.combined = union_of(z, res.compensator);
  const double r_max = blocks == 0 ? 1.0 : std::ldexp(1.0, static_cast<int>(blocks));
  res.diagnostic = lindelof_diagnostic(
      res.combined, axis == Axis::real ? LindelofKind::real : LindelofKind::imaginary, r_max);
  return res;
}

/// Real compensator X: Z u X satisfies the real Lindelof condition.
inline BalanceResult balance_real(const PointDistribution& z) { return balance_along(z, Axis::real); }

/// Imaginary compensator iY: Z u iY satisfies the imaginary Lindelof condition.
inline BalanceResult balance_imaginary(const PointDistribution& z) {
  return balance_along(z, Axis::imaginary);
}

/// Partial sums at the block ends r_(k+1) implied by the certificates alone:
/// the running total of signed slacks.
inline std::vector<std::pair<double, double>> predicted_partial_sums(
    const std::vector<BlockCertificate>& certs) {
  std::vector<std::pair<double, double>> out;
  out.reserve(certs.size());
  CompensatedSum<double> acc;
  for (const auto& c : certs) {
    acc.add(c.signed_slack());
    out.emplace_back(c.r_hi, acc.value());
  }
  return out;
}

/// Z u X u iY. Real points leave the imaginary sums untouched and vice
/// versa, so the full Lindelof condition holds.
inline PointDistribution full_lindelof_completion(const PointDistribution& z) {
  const auto x = balance_real(z);
  const auto y = balance_imaginary(z);
  return union_of(x.combined, y.compensator);
}

struct MajorantResult {
  PointDistribution zeros;
  double inflation_bound = 0.0;
  BalanceResult real_balance;
};

/// Measured max over dyadic pairs 0 <= n < N <= blocks of l_result - l_base.
inline double dyadic_inflation(const PointDistribution& base, const PointDistribution& result) {
  const LogMeasureTable tb(base);
  const LogMeasureTable tr(result);
  const unsigned blocks = detail::dyadic_block_count(result);
  double bound = 0.0;
  for (unsigned n = 0; n < blocks; ++n) {
    for (unsigned m = n + 1; m <= blocks; ++m) {
      const double r = std::ldexp(1.0, static_cast<int>(n));
      const double R = std::ldexp(1.0, static_cast<int>(m));
      bound = std::max(bound, log_submeasure(tr, r, R) - log_submeasure(tb, r, R));
    }
  }
  return bound;
}

/// Zero set of a majorant: W u X u iY in general, W u X when W is angularly
/// separated from the imaginary axis (the imaginary compensator would break
/// the separation). Throws SeparationViolation if separation is claimed but
/// the tail |w| > tail_radius touches the imaginary axis.
inline MajorantResult majorant_zero_set(const PointDistribution& w, bool angularly_separated,
                                        double tail_radius = 1.0) {
  if (angularly_separated && separation(w, tail_radius).min_ratio == 0.0) {
    throw SeparationViolation("distribution has tail points on the imaginary axis");
  }
  MajorantResult res;
  res.real_balance = balance_real(w);
  if (angularly_separated) {
    res.zeros = res.real_balance.combined;
  } else {
    res.zeros = union_of(res.real_balance.combined, balance_imaginary(w).compensator);
  }
  res.inflation_bound = dyadic_inflation(w, res.zeros);
  return res;
}

}  // namespace zerodist
