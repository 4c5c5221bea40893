//
// SPDX-License-Identifier: Apache-2.0
//

#include "exprmol/adam.h"

#include <cmath>

namespace exprmol {

AdamState::AdamState(const ParameterSet &params, AdamOptions options): options_(options) {
  for (const auto &p: params) {
    m_.emplace_back(p.value.shape(), 0.0);
    v_.emplace_back(p.value.shape(), 0.0);
  }
}

void AdamState::step(ParameterSet &params, const std::vector<Tensor> &grads) {
  if (grads.size() != params.size() || m_.size() != params.size()) {
    throw ShapeError("adam_step: expected " + std::to_string(params.size())
                     + " gradients, got " + std::to_string(grads.size()));
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    require_same_shape(params[i].value, grads[i], "adam_step");
    require_same_shape(params[i].value, m_[i], "adam_step");
  }

  ++t_;
  const double b1 = options_.beta1;
  const double b2 = options_.beta2;
  const double c1 = 1.0 - std::pow(b1, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(b2, static_cast<double>(t_));
  for (std::size_t i = 0; i < params.size(); ++i) {
    Tensor &w = params[i].value;
    const Tensor &g = grads[i];
    Tensor &m = m_[i];
    Tensor &v = v_[i];
    for (std::size_t k = 0; k < w.size(); ++k) {
      m[k] = b1 * m[k] + (1.0 - b1) * g[k];
      v[k] = b2 * v[k] + (1.0 - b2) * g[k] * g[k];
      const double m_hat = m[k] / c1;
      const double v_hat = v[k] / c2;
      w[k] -= options_.learning_rate * m_hat / (std::sqrt(v_hat) + options_.epsilon);
    }
  }
}

} // namespace exprmol
