#include "clustergame/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace clustergame {

double Schedule::alpha(std::uint64_t t) const {
  return alpha0 / std::pow(static_cast<double>(t), a);
}

double Schedule::sigma(std::uint64_t t) const {
  return sigma0 / std::pow(static_cast<double>(t), b);
}

ValidationReport validate_schedule(const Schedule& s, const GameSpec& spec) {
  ValidationReport r;
  if (!(s.alpha0 > 0.0) || !std::isfinite(s.alpha0)) {
    r.add("alpha0", fmt::format("alpha0 > 0 required, got {}", s.alpha0));
  }
  if (!(s.sigma0 > 0.0) || !std::isfinite(s.sigma0)) {
    r.add("sigma0", fmt::format("sigma0 > 0 required, got {}", s.sigma0));
  }
  if (!(s.a > 0.5 && s.a <= 1.0)) {
    r.add("a-range", fmt::format("1/2 < a <= 1 required, got a = {}", s.a));
  }
  if (!(s.b >= 0.0)) r.add("b-range", fmt::format("b >= 0 required, got b = {}", s.b));
  if (!(s.a + s.b > 1.0)) {
    r.add("a+b", fmt::format("a + b > 1 required, got a + b = {}", s.a + s.b));
  }
  if (!(2.0 * s.a - 2.0 * s.b > 1.0)) {
    r.add("2a-2b", fmt::format("2a - 2b > 1 required, got 2a - 2b = {}",
                               2.0 * s.a - 2.0 * s.b));
  }
  if (s.t_offset < 1) r.add("t-offset", "t_offset >= 1 required");

  double min_radius = std::numeric_limits<double>::infinity();
  for (const auto& c : spec.clusters()) min_radius = std::min(min_radius, c.safety_radius());
  // sigma_t is nonincreasing for b >= 0, so the first step is the binding one.
  const double first_sigma = s.sigma(std::max<std::uint64_t>(s.t_offset, 1));
  if (!(first_sigma < min_radius)) {
    r.add("sigma-radius",
          fmt::format("sigma_t < min_i r_i required at t = {}: sigma = {}, min r = {}",
                      s.t_offset, first_sigma, min_radius));
  }
  return r;
}

}  // namespace clustergame
