//
// SPDX-License-Identifier: Apache-2.0
//

#include "support/gradcheck.h"

#include <algorithm>
#include <cmath>

namespace exprmol::testing {
namespace {
  double evaluate(const LossFn &loss, const std::vector<Tensor> &inputs) {
    Tape tape;
    std::vector<Var> vars;
    for (const auto &t: inputs)
      vars.push_back(tape.leaf(t));
    return loss(tape, vars).value().item();
  }
} // namespace

GradCheck check_gradients(const LossFn &loss, const std::vector<Tensor> &inputs, double h) {
  Tape tape;
  std::vector<Var> vars;
  for (const auto &t: inputs)
    vars.push_back(tape.leaf(t));
  const Gradients grads = tape.backward(loss(tape, vars));

  GradCheck result;
  std::vector<Tensor> probe = inputs;
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    const Tensor analytic = grads.of(vars[k]);
    for (std::size_t i = 0; i < inputs[k].size(); ++i) {
      const double x = inputs[k][i];
      probe[k][i] = x + h;
      const double up = evaluate(loss, probe);
      probe[k][i] = x - h;
      const double down = evaluate(loss, probe);
      probe[k][i] = x;
      const double numeric = (up - down) / (2.0 * h);
      const double scale =
          std::max({ std::abs(analytic[i]), std::abs(numeric), kRelativeErrorFloor });
      result.max_relative_error =
          std::max(result.max_relative_error, std::abs(analytic[i] - numeric) / scale);
      ++result.checked;
    }
  }
  return result;
}

} // namespace exprmol::testing
