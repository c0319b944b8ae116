#pragma once

#include <cstdint>

#include "clustergame/errors.hpp"
#include "clustergame/game.hpp"

namespace clustergame {

// alpha_t = alpha0 / t^a, sigma_t = sigma0 / t^b, with t counted from
// t_offset (the first step uses t = t_offset).
struct Schedule {
  double alpha0 = 1.0;
  double sigma0 = 1.0;
  double a = 1.0;
  double b = 1.0 / 3.0;
  std::uint64_t t_offset = 1;

  double alpha(std::uint64_t t) const;
  double sigma(std::uint64_t t) const;

  bool operator==(const Schedule&) const = default;
};

// Checks 1/2 < a <= 1, b >= 0, a + b > 1, 2a - 2b > 1, positive constants,
// t_offset >= 1, and sigma(t_offset) < min_i r_i. Each violation carries a
// code and a message quoting the broken inequality.
ValidationReport validate_schedule(const Schedule& s, const GameSpec& spec);

}  // namespace clustergame
