#include <cmath>
#include <mutex>
#include <vector>

#include "mono2d/field.hpp"

namespace mono2d {

namespace {

// Integrand of the oscillatory part, |sin(1/t)|, t > 0.
double osc(double t) { return std::abs(std::sin(1.0 / t)); }

// 16-point Gauss-Legendre on [a, b]; integrand smooth there.
double gl16(double (*f)(double), double a, double b) {
  static const double xs[8] = {0.0950125098376374, 0.2816035507792589,
                               0.4580167776572274, 0.6178762444026438,
                               0.7554044083550030, 0.8656312023878318,
                               0.9445750230732326, 0.9894009349916499};
  static const double ws[8] = {0.1894506104550685, 0.1826034150449236,
                               0.1691565193950025, 0.1495959888165767,
                               0.1246289712555339, 0.0951585116824928,
                               0.0622535239386479, 0.0271524594117541};
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double acc = 0.0;
  for (int i = 0; i < 8; ++i)
    acc += ws[i] * (f(mid + half * xs[i]) + f(mid - half * xs[i]));
  return half * acc;
}

// Breakpoints of |sin(1/t)| at 1/(k pi), k = 1..K, with cumulative
// integrals of the oscillatory part from 0 up to each breakpoint.
// cum[k] = int_0^{1/((K-k) pi)} ... stored ascending in t instead:
// bp[j] = 1/((K - j) pi) for j = 0..K-1 is ascending; cum[j] is the
// integral of |sin(1/t)| over (0, bp[j]].
struct OscTable {
  static constexpr int K = 200000;
  std::vector<double> bp, cum;
  double tail0;  // integral over (0, 1/(K pi)]

  OscTable() {
    bp.resize(K);
    cum.resize(K);
    for (int j = 0; j < K; ++j) bp[j] = 1.0 / ((double)(K - j) * M_PI);
    // Tail below the smallest breakpoint: int_S^inf |sin s|/s^2 ds with
    // S = K pi equals (2/pi)/S up to O(1/S^2), below the 1e-10 target.
    tail0 = (2.0 / M_PI) / ((double)K * M_PI);
    double acc = tail0;
    for (int j = 0; j < K; ++j) {
      double lo = (j == 0) ? 1.0 / ((double)K * M_PI) : bp[j - 1];
      acc += gl16(&osc, lo, bp[j]);
      cum[j] = acc;
    }
  }
};

const OscTable& osc_table() {
  static OscTable table;
  return table;
}

// Integral of |sin(1/t)| over (0, x], x > 0.
double osc_integral(double x) {
  const OscTable& tab = osc_table();
  if (x <= tab.bp.front()) {
    // Deep tail: substitute s = 1/t and use the 2/pi mean of |sin|.
    return (2.0 / M_PI) * x;
  }
  if (x >= tab.bp.back())
    return tab.cum.back() + gl16(&osc, tab.bp.back(), x);
  auto it = std::lower_bound(tab.bp.begin(), tab.bp.end(), x);
  std::size_t j = (std::size_t)(it - tab.bp.begin());  // bp[j] >= x
  double below = (j == 0) ? tab.tail0 : tab.cum[j - 1];
  double lo = (j == 0) ? tab.bp.front() : tab.bp[j - 1];
  return below + gl16(&osc, lo, x);
}

}  // namespace

double pathological_profile(double x) {
  if (x == 0.0) return 0.0;
  double a = std::abs(x);
  double v = 0.5 * a * a + osc_integral(a);
  return x > 0 ? v : -v;
}

}  // namespace mono2d
