#pragma once

#include <array>
#include <cmath>
#include <queue>
#include <vector>

namespace extinction_lab {

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;
  int intervals = 0;
  bool converged = false;
};

namespace detail {

// 7-point Gauss / 15-point Kronrod pair on [-1, 1]; the abscissae of the
// Gauss rule are the odd-indexed Kronrod nodes.
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

template <class F>
Panel kronrod15(F& f, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double f_centre = f(centre);
  double kronrod = f_centre * kKronrodWeights[7];
  double gauss = f_centre * kGaussWeights[3];
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[i];
    const double sum = f(centre - dx) + f(centre + dx);
    kronrod += kKronrodWeights[i] * sum;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * sum;
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7, 15) quadrature of f over [a, b]:
/// the panel with the largest error estimate is bisected until the summed
/// estimate drops below max(abs_tol, rel_tol * |integral|) or
/// `max_panels` is reached. The 7-point embedded rule error is used as is,
/// which overstates the error on smooth integrands.
template <class F>
QuadratureResult integrate_adaptive(F&& f, double a, double b, double rel_tol,
                                    double abs_tol = 0.0, int max_panels = 2000) {
  QuadratureResult out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  std::priority_queue<detail::Panel> panels;
  const detail::Panel first = detail::kronrod15(f, a, b);
  panels.push(first);
  double total = first.value;
  double error = first.error;
  int count = 1;
  while (error > std::max(abs_tol, rel_tol * std::abs(total)) && count < max_panels) {
    const detail::Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const detail::Panel left = detail::kronrod15(f, worst.a, mid);
    const detail::Panel right = detail::kronrod15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
    ++count;
  }
  // Re-sum from scratch to shed the drift of the running updates.
  total = 0.0;
  error = 0.0;
  std::vector<detail::Panel> all;
  all.reserve(panels.size());
  while (!panels.empty()) {
    all.push_back(panels.top());
    panels.pop();
  }
  for (auto it = all.rbegin(); it != all.rend(); ++it) {
    total += it->value;
    error += it->error;
  }
  out.value = total;
  out.abs_error = error;
  out.intervals = count;
  out.converged = error <= std::max(abs_tol, rel_tol * std::abs(total));
  return out;
}

}  // namespace extinction_lab
