#include "sphrd/policy.hpp"

#include <stdexcept>

namespace sphrd {

void EvalPolicy::validate() const {
  if (!(cf_tol > 0.0) || !(root_tol > 0.0) || !(small_t_threshold > 0.0) ||
      !(large_order_threshold > 0.0) || !(quad_tol > 0.0)) {
    throw std::invalid_argument("EvalPolicy: tolerances and thresholds must be positive");
  }
  if (cf_max_terms < 64) throw std::invalid_argument("EvalPolicy: cf_max_terms must be >= 64");
}

}  // namespace sphrd
