#ifndef SRS_OBJECTIVE_HPP
#define SRS_OBJECTIVE_HPP

#include <string_view>

namespace srs {

enum class Objective { minimize, maximize };

/// True when `a` is at least as good as `b` under `objective`.
constexpr bool at_least_as_good(Objective objective, double a, double b) {
  return objective == Objective::minimize ? a <= b : a >= b;
}

constexpr std::string_view to_string(Objective objective) {
  return objective == Objective::minimize ? "minimize" : "maximize";
}

}  // namespace srs

#endif  // SRS_OBJECTIVE_HPP
