//
// SPDX-License-Identifier: Apache-2.0
//

#include "exprmol/parameters.h"

#include <cmath>
#include <stdexcept>

namespace exprmol {

std::size_t ParameterSet::add(std::string name, Tensor value) {
  for (const auto &p: params_) {
    if (p.name == name)
      throw std::invalid_argument("duplicate parameter name: " + name);
  }
  params_.push_back({ std::move(name), std::move(value) });
  return params_.size() - 1;
}

std::size_t ParameterSet::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < params_.size(); ++i) {
    if (params_[i].name == name)
      return i;
  }
  throw std::out_of_range("no parameter named " + std::string(name));
}

std::size_t ParameterSet::scalar_count() const {
  std::size_t n = 0;
  for (const auto &p: params_)
    n += p.value.size();
  return n;
}

std::vector<Var> ParameterSet::bind(Tape &tape, bool trainable) const {
  std::vector<Var> vars;
  vars.reserve(params_.size());
  for (const auto &p: params_)
    vars.push_back(tape.leaf(p.value, trainable));
  return vars;
}

Tensor glorot_uniform(std::size_t fan_in, std::size_t fan_out, Rng &rng) {
  const double a = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  Tensor w = Tensor::matrix(fan_in, fan_out);
  for (double &v: w.values())
    v = (2.0 * rng.uniform() - 1.0) * a;
  return w;
}

std::vector<Tensor> collect_gradients(const Gradients &grads, const std::vector<Var> &bound) {
  std::vector<Tensor> out;
  out.reserve(bound.size());
  for (Var v: bound)
    out.push_back(grads.of(v));
  return out;
}

double clip_global_norm(std::vector<Tensor> &grads, double max_norm) {
  double sq = 0.0;
  for (const auto &g: grads) {
    for (double v: g.values())
      sq += v * v;
  }
  const double norm = std::sqrt(sq);
  if (max_norm > 0.0 && norm > max_norm) {
    const double s = max_norm / norm;
    for (auto &g: grads) {
      for (double &v: g.values())
        v *= s;
    }
  }
  return norm;
}

} // namespace exprmol
