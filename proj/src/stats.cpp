#include "wildfire/stats.hpp"

#include <cmath>

#include <boost/math/distributions/students_t.hpp>

namespace wildfire {

Summary summarize(std::span<const double> values) {
  Summary s;
  s.n = static_cast<int>(values.size());
  if (s.n == 0) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / s.n;
  if (s.n < 2) return s;
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.stddev = std::sqrt(ss / (s.n - 1));
  const boost::math::students_t dist(s.n - 1);
  s.ci95_half = boost::math::quantile(boost::math::complement(dist, 0.025)) * s.stddev / std::sqrt(s.n);
  s.has_ci = true;
  return s;
}

}  // namespace wildfire
