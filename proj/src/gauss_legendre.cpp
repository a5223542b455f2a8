#include "criccati/gauss_legendre.hpp"

#include <array>
#include <cmath>

namespace criccati {

namespace {

constexpr std::array<double, 4> kAbscissa = {
    0.1834346424956498049394761, 0.5255324099163289858177390,
    0.7966664774136267395915539, 0.9602898564975362316835609};
constexpr std::array<double, 4> kWeight = {
    0.3626837833783619829651504, 0.3137066458778872873379622,
    0.2223810344533744705443560, 0.1012285362903762591525314};

// Returns the integral and the integral of |g| over the same nodes.
std::pair<double, double> composite(const std::function<double(double)>& g, double a,
                                    double b, int panels) {
  const double h = (b - a) / panels;
  double sum = 0.0, abs_sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    const double half = 0.5 * h;
    for (std::size_t k = 0; k < kAbscissa.size(); ++k) {
      const double lo = g(mid - half * kAbscissa[k]);
      const double hi = g(mid + half * kAbscissa[k]);
      sum += half * kWeight[k] * (lo + hi);
      abs_sum += half * kWeight[k] * (std::abs(lo) + std::abs(hi));
    }
  }
  return {sum, std::abs(abs_sum)};
}

constexpr std::array<double, 8> kNodes = {-kAbscissa[3], -kAbscissa[2], -kAbscissa[1],
                                         -kAbscissa[0], kAbscissa[0],  kAbscissa[1],
                                         kAbscissa[2],  kAbscissa[3]};
constexpr std::array<double, 8> kWeights = {kWeight[3], kWeight[2], kWeight[1], kWeight[0],
                                           kWeight[0], kWeight[1], kWeight[2], kWeight[3]};

}  // namespace

std::span<const double> gauss_legendre_8_nodes() { return kNodes; }
std::span<const double> gauss_legendre_8_weights() { return kWeights; }

double gauss_legendre_8(const std::function<double(double)>& g, double a, double b,
                        int panels) {
  return composite(g, a, b, panels).first;
}

QuadratureResult integrate_adaptive(const std::function<double(double)>& g, double a,
                                    double b, const QuadratureOptions& opts) {
  if (a == b) return {0.0, 0, true};
  auto [prev, prev_abs] = composite(g, a, b, 1);
  int panels = 1;
  for (int level = 1; level <= opts.max_level; ++level) {
    panels *= 2;
    auto [cur, cur_abs] = composite(g, a, b, panels);
    if (std::abs(cur - prev) <= opts.rel_tol * cur_abs) return {cur, panels, true};
    prev = cur;
  }
  return {prev, panels, false};
}

}  // namespace criccati
