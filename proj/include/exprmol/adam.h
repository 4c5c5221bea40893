//
// SPDX-License-Identifier: Apache-2.0
//

#ifndef EXPRMOL_ADAM_H_
#define EXPRMOL_ADAM_H_

#include <cstdint>
#include <vector>

#include "exprmol/parameters.h"
#include "exprmol/tensor.h"

namespace exprmol {

struct AdamOptions {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

/// Adam optimizer state (first/second moments and step count).
class AdamState {
public:
  AdamState() = default;
  AdamState(const ParameterSet &params, AdamOptions options);

  const AdamOptions &options() const { return options_; }
  std::uint64_t step_count() const { return t_; }
  const std::vector<Tensor> &first_moment() const { return m_; }
  const std::vector<Tensor> &second_moment() const { return v_; }

  // Bias-corrected update of every parameter; increments the step count.
  void step(ParameterSet &params, const std::vector<Tensor> &grads);

private:
  AdamOptions options_;
  std::vector<Tensor> m_;
  std::vector<Tensor> v_;
  std::uint64_t t_ = 0;
};

} // namespace exprmol

#endif // EXPRMOL_ADAM_H_
