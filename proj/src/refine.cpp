#include <algorithm>
#include <cmath>

#include "gl/error.hpp"
#include "gl/quadrature.hpp"

namespace gl {

Refined refine_until(const std::function<double(const LogGrid&)>& f, const std::vector<LogGrid>& schedule,
                     double rel_tol) {
  if (schedule.empty()) fail(Errc::EmptySchedule, "refinement schedule is empty");
  Refined out;
  double prev = 0.0;
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    const double v = f(schedule[i]);
    out.value = v;
    out.levels_used = i + 1;
    if (i > 0) {
      const double scale = std::max(std::fabs(prev), std::fabs(v));
      const double change = scale == 0 ? 0.0 : std::fabs(v - prev) / scale;
      if (std::isfinite(v) && change < rel_tol) {
        out.converged = true;
        return out;
      }
    }
    prev = v;
  }
  return out;
}

}  // namespace gl
