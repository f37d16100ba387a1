#pragma once

// Globally adaptive Gauss-Kronrod (7/15) quadrature over an initial panel
// partition, with geometric grading toward integrable endpoint
// singularities.

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <vector>

#include "zerodist/kahan.hpp"

namespace zerodist::quad {

struct Panel {
  double a = 0.0;
  double b = 0.0;
};

struct PanelEstimate {
  double a = 0.0;
  double b = 0.0;
  double value = 0.0;
  double error = 0.0;

  friend bool operator<(const PanelEstimate& x, const PanelEstimate& y) { return x.error < y.error; }
};

struct Result {
  double value = 0.0;
  double error = 0.0;
  unsigned panels = 0;
  bool converged = true;
};

/// Kronrod 15-point estimate with the embedded 7-point Gauss rule; the error
/// is the raw |K15 - G7| difference.
template <class F>
PanelEstimate gauss_kronrod_15(const F& f, double a, double b) {
  static constexpr std::array<double, 8> xgk = {
      0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
      0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
      0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
      0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
  static constexpr std::array<double, 8> wgk = {
      0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
      0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
      0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
      0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
  // Gauss weights for xgk[1], xgk[3], xgk[5], xgk[7].
  static constexpr std::array<double, 4> wg = {
      0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
      0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(centre);
  double kronrod = wgk[7] * fc;
  double gauss = wg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = half * xgk[j];
    const double sum = f(centre - dx) + f(centre + dx);
    kronrod += wgk[j] * sum;
    if (j % 2 == 1) gauss += wg[j / 2] * sum;
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, std::abs(kronrod - gauss)};
}

/// Panels on [a, b] refined geometrically (ratio 1/2) toward whichever
/// endpoints are flagged singular.
inline std::vector<Panel> graded_partition(double a, double b, bool singular_a, bool singular_b,
                                           int levels = 40) {
  std::vector<Panel> out;
  if (!(b > a)) return out;
  if (singular_a && singular_b) {
    const double mid = 0.5 * (a + b);
    auto left = graded_partition(a, mid, true, false, levels);
    auto right = graded_partition(mid, b, false, true, levels);
    left.insert(left.end(), right.begin(), right.end());
    return left;
  }
  if (!singular_a && !singular_b) {
    out.push_back({a, b});
    return out;
  }
  const double width = b - a;
  std::vector<double> cuts;
  for (int j = 0; j < levels; ++j) {
    const double off = std::ldexp(width, -j);
    const double c = singular_a ? a + off : b - off;
    if (c <= a || c >= b) {
      if (j > 0) break;
    }
    cuts.push_back(c);
  }
  if (singular_a) {
    // cuts descend from b toward a
    double hi = b;
    for (std::size_t i = 1; i < cuts.size(); ++i) {
      out.push_back({cuts[i], hi});
      hi = cuts[i];
    }
    out.push_back({a, hi});
    std::reverse(out.begin(), out.end());
  } else {
    double lo = a;
    for (std::size_t i = 1; i < cuts.size(); ++i) {
      out.push_back({lo, cuts[i]});
      lo = cuts[i];
    }
    out.push_back({lo, b});
  }
  return out;
}

/// Bisects the panel with the largest error estimate until the summed
/// estimate drops below abs_tol or max_panels is reached.
template <class F>
Result integrate(const F& f, const std::vector<Panel>& initial, double abs_tol,
                 unsigned max_panels = 20000) {
  std::priority_queue<PanelEstimate> heap;
  double total_error = 0.0;
  for (const auto& p : initial) {
    auto est = gauss_kronrod_15(f, p.a, p.b);
    total_error += est.error;
    heap.push(est);
  }
  Result res;
  while (total_error > abs_tol && heap.size() < max_panels) {
    const PanelEstimate worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;  // panel at machine resolution
    heap.pop();
    const auto left = gauss_kronrod_15(f, worst.a, mid);
    const auto right = gauss_kronrod_15(f, mid, worst.b);
    total_error += (left.error + right.error) - worst.error;
    heap.push(left);
    heap.push(right);
  }
  CompensatedSum<double> value;
  CompensatedSum<double> error;
  res.panels = static_cast<unsigned>(heap.size());
  while (!heap.empty()) {
    value.add(heap.top().value);
    error.add(heap.top().error);
    heap.pop();
  }
  res.value = value.value();
  res.error = error.value();
  res.converged = res.error <= abs_tol;
  return res;
}

}  // namespace zerodist::quad
