#include <vector>

#include "whitney/error.hpp"
#include "whitney/smoother.hpp"

namespace whitney {

double bspline_eval(int k, double x) {
  if (k < 1) throw PreconditionError("bspline_eval: order must be at least 1");
  if (x < 0.0 || x >= k) return 0.0;
  // N_1 on each unit knot interval, then raise the order:
  // N_m(x) = (x N_{m-1}(x) + (m - x) N_{m-1}(x - 1)) / (m - 1).
  std::vector<double> n(k, 0.0);  // n[i] = N_m(x - i)
  const int cell = static_cast<int>(x);
  n[cell] = 1.0;
  for (int m = 2; m <= k; ++m) {
    std::vector<double> next(k, 0.0);
    for (int i = 0; i + m <= k; ++i) {
      const double y = x - i;
      next[i] = (y * n[i] + (m - y) * (i + 1 < k ? n[i + 1] : 0.0)) / (m - 1);
    }
    n = std::move(next);
  }
  return n[0];
}

}  // namespace whitney
