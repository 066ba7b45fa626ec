#pragma once

#include <span>

namespace wildfire {

struct Summary {
  int n = 0;
  double mean = 0.0;
  double stddev = 0.0;     // sample standard deviation
  double ci95_half = 0.0;  // Student-t half width; 0 when n < 2
  bool has_ci = false;
};

Summary summarize(std::span<const double> values);

}  // namespace wildfire
