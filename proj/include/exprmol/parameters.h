//
// SPDX-License-Identifier: Apache-2.0
//

#ifndef EXPRMOL_PARAMETERS_H_
#define EXPRMOL_PARAMETERS_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "exprmol/autodiff.h"
#include "exprmol/random.h"
#include "exprmol/tensor.h"

namespace exprmol {

struct NamedTensor {
  std::string name;
  Tensor value;
  friend bool operator==(const NamedTensor &, const NamedTensor &) = default;
};

/// Ordered, named collection of trainable tensors.
class ParameterSet {
public:
  // Returns the index of the new parameter.
  std::size_t add(std::string name, Tensor value);

  std::size_t size() const { return params_.size(); }
  NamedTensor &operator[](std::size_t i) { return params_[i]; }
  const NamedTensor &operator[](std::size_t i) const { return params_[i]; }
  auto begin() { return params_.begin(); }
  auto end() { return params_.end(); }
  auto begin() const { return params_.begin(); }
  auto end() const { return params_.end(); }

  std::size_t index_of(std::string_view name) const;
  const Tensor &get(std::string_view name) const { return params_[index_of(name)].value; }
  Tensor &get(std::string_view name) { return params_[index_of(name)].value; }

  std::size_t scalar_count() const;

  // Places every parameter on the tape as a leaf (trainable or constant).
  std::vector<Var> bind(Tape &tape, bool trainable) const;

  friend bool operator==(const ParameterSet &, const ParameterSet &) = default;

private:
  std::vector<NamedTensor> params_;
};

// Uniform(-a, a) with a = sqrt(6 / (fan_in + fan_out)).
Tensor glorot_uniform(std::size_t fan_in, std::size_t fan_out, Rng &rng);

// Gradients for each bound parameter, in parameter order.
std::vector<Tensor> collect_gradients(const Gradients &grads, const std::vector<Var> &bound);

// Rescales gradients in place so that their global L2 norm is at most
// max_norm. Returns the norm before clipping.
double clip_global_norm(std::vector<Tensor> &grads, double max_norm);

} // namespace exprmol

#endif // EXPRMOL_PARAMETERS_H_
