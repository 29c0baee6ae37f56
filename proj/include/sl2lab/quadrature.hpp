#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <queue>
#include <vector>

namespace sl2lab::quad {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t intervals = 0;
  bool converged = true;

  QuadratureResult& operator+=(const QuadratureResult& o) {
    value += o.value;
    error += o.error;
    intervals += o.intervals;
    converged = converged && o.converged;
    return *this;
  }
};

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-13;
  std::size_t max_intervals = 4000;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.000000000000000000000000000000000e+00, 2.077849550078984676006894037732449e-01,
    4.058451513773971669066064120769615e-01, 5.860872354676911302941448382587296e-01,
    7.415311855993944398638647732807884e-01, 8.648644233597690727897127886409262e-01,
    9.491079123427585245261896840478513e-01, 9.914553711208126392068546975263285e-01};
inline constexpr std::array<double, 8> kKronrodWeights = {
    2.094821410847278280129991748917143e-01, 2.044329400752988924141619992346491e-01,
    1.903505780647854099132564024210137e-01, 1.690047266392679028265834265985503e-01,
    1.406532597155259187451895905102379e-01, 1.047900103222501838398763225415180e-01,
    6.309209262997855329070066318920429e-02, 2.293532201052922496373200805896959e-02};
// Gauss weights for nodes 0, 2, 4, 6 of the Kronrod set.
inline constexpr std::array<double, 4> kGaussWeights = {
    4.179591836734693877551020408163265e-01, 3.818300505051189449503697754889751e-01,
    2.797053914892766679014677714237796e-01, 1.294849661688696932706114326790820e-01};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <class F>
Segment kronrod15(const F& f, double a, double b) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  const double f0 = f(mid);
  double kron = kKronrodWeights[0] * f0;
  double gauss = kGaussWeights[0] * f0;
  for (std::size_t i = 1; i < 8; ++i) {
    const double dx = half * kKronrodNodes[i];
    const double s = f(mid - dx) + f(mid + dx);
    kron += kKronrodWeights[i] * s;
    if (i % 2 == 0) gauss += kGaussWeights[i / 2] * s;
  }
  return {a, b, kron * half, std::abs((kron - gauss) * half)};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (G7/K15) integration of f over [a, b].
///
/// The interval with the largest embedded error estimate is bisected until the
/// summed estimate drops below max(abs_tol, rel_tol * |value|) or the interval
/// budget is exhausted (converged = false in that case).
template <class F>
QuadratureResult integrate(const F& f, double a, double b, const QuadratureOptions& opt = {}) {
  if (a == b) return {};
  if (b < a) {
    QuadratureResult r = integrate(f, b, a, opt);
    r.value = -r.value;
    return r;
  }
  std::priority_queue<detail::Segment> heap;
  heap.push(detail::kronrod15(f, a, b));
  double value = heap.top().value, error = heap.top().error;
  std::size_t count = 1;
  auto target = [&] { return std::max(opt.abs_tol, opt.rel_tol * std::abs(value)); };
  while (error > target() && count < opt.max_intervals) {
    const detail::Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {  // cannot split further
      heap.push(worst);
      break;
    }
    const auto left = detail::kronrod15(f, worst.a, mid);
    const auto right = detail::kronrod15(f, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++count;
  }
  // Re-sum in a fixed order so the result does not depend on floating drift of
  // the running totals.
  std::vector<detail::Segment> segs;
  segs.reserve(heap.size());
  while (!heap.empty()) {
    segs.push_back(heap.top());
    heap.pop();
  }
  std::sort(segs.begin(), segs.end(), [](const auto& x, const auto& y) { return x.a < y.a; });
  QuadratureResult out;
  for (const auto& s : segs) {
    out.value += s.value;
    out.error += s.error;
  }
  out.intervals = segs.size();
  out.converged = out.error <= std::max(opt.abs_tol, opt.rel_tol * std::abs(out.value));
  return out;
}

/// Integrates over consecutive panels [p0,p1], [p1,p2], ... and sums.
template <class F>
QuadratureResult integrate_panels(const F& f, const std::vector<double>& breaks, const QuadratureOptions& opt = {}) {
  QuadratureResult total;
  QuadratureOptions per = opt;
  if (breaks.size() > 2) per.abs_tol = opt.abs_tol / static_cast<double>(breaks.size() - 1);
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) total += integrate(f, breaks[i], breaks[i + 1], per);
  return total;
}

}  // namespace sl2lab::quad
