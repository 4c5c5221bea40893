//
// SPDX-License-Identifier: Apache-2.0
//

#ifndef EXPRMOL_TESTS_GRADCHECK_H_
#define EXPRMOL_TESTS_GRADCHECK_H_

#include <functional>
#include <vector>

#include "exprmol/autodiff.h"

namespace exprmol::testing {

inline constexpr double kFiniteDifferenceStep = 1e-5;
// Gradients smaller than this are compared on an absolute scale, so that
// near-zero entries do not blow up the relative error.
inline constexpr double kRelativeErrorFloor = 1e-4;

using LossFn = std::function<Var(Tape &, const std::vector<Var> &)>;

struct GradCheck {
  double max_relative_error = 0.0;
  std::size_t checked = 0;
};

// Compares tape gradients against central differences for every element of
// every input. The loss function must be deterministic.
GradCheck check_gradients(const LossFn &loss, const std::vector<Tensor> &inputs,
                          double h = kFiniteDifferenceStep);

} // namespace exprmol::testing

#endif // EXPRMOL_TESTS_GRADCHECK_H_
