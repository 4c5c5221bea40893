//
// SPDX-License-Identifier: Apache-2.0
//

#ifndef EXPRMOL_AUTODIFF_H_
#define EXPRMOL_AUTODIFF_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "exprmol/random.h"
#include "exprmol/tensor.h"

namespace exprmol {

class Tape;

/// Handle to a value recorded on a Tape.
class Var {
public:
  Var() = default;
  Var(Tape *tape, std::size_t id): tape_(tape), id_(id) { }

  Tape *tape() const { return tape_; }
  std::size_t id() const { return id_; }
  bool valid() const { return tape_ != nullptr; }
  const Tensor &value() const;

private:
  Tape *tape_ = nullptr;
  std::size_t id_ = 0;
};

enum class Mode {
  kTrain,
  kEval,
};

enum class OpKind : std::uint8_t {
  kLeaf,
  kMatmul,
  kAdd,
  kAddRowBroadcast,
  kSub,
  kMul,
  kScale,
  kAddScalar,
  kTanh,
  kSigmoid,
  kRelu,
  kExp,
  kLog,
  kSquare,
  kClamp,
  kConcat,
  kSlice,
  kGatherRows,
  kSum,
  kMean,
  kSoftmaxCrossEntropy,
  kMse,
  kDropout,
};

std::string_view op_name(OpKind op);

struct TapeNode {
  OpKind op = OpKind::kLeaf;
  std::vector<std::size_t> inputs;
  Tensor value;
  bool requires_grad = false;

  // Values saved for the backward pass; which ones are used depends on op.
  Tensor saved;
  std::vector<int> indices;
  std::size_t axis = 0;
  std::size_t begin = 0;
  double scalar = 0.0;
  double scalar2 = 0.0;
};

/// Gradients of a scalar loss with respect to tape nodes.
class Gradients {
public:
  Gradients() = default;
  explicit Gradients(std::vector<std::optional<Tensor>> grads,
                     std::vector<std::vector<std::size_t>> shapes)
      : grads_(std::move(grads)), shapes_(std::move(shapes)) { }

  // Gradient for `v`; an all-zero tensor when the loss does not depend on it.
  Tensor of(Var v) const;
  bool reached(Var v) const;

private:
  std::vector<std::optional<Tensor>> grads_;
  std::vector<std::vector<std::size_t>> shapes_;
};

/// Append-only record of operations for reverse-mode differentiation.
///
/// Nodes are appended in evaluation order, so inputs always precede their
/// consumers and reverse tape order is a valid topological order.
class Tape {
public:
  Tape() = default;
  Tape(const Tape &) = delete;
  Tape &operator=(const Tape &) = delete;

  Var leaf(Tensor value, bool requires_grad = true);
  Var constant(Tensor value) { return leaf(std::move(value), false); }

  const Tensor &value(Var v) const { return nodes_[v.id()].value; }
  const TapeNode &node(std::size_t id) const { return nodes_[id]; }
  std::size_t size() const { return nodes_.size(); }

  // Reverse sweep from a scalar (1x1) node. Throws ShapeError otherwise.
  Gradients backward(Var loss) const;

  Var record(TapeNode node);

private:
  std::vector<TapeNode> nodes_;
};

inline const Tensor &Var::value() const {
  return tape_->value(*this);
}

// Forward ops. Each records a node on the tape shared by its operands.

Var matmul(Var a, Var b);
// Elementwise sum; `b` may also be a 1xN row broadcast over the rows of `a`.
Var add(Var a, Var b);
Var sub(Var a, Var b);
Var mul(Var a, Var b);
Var scale(Var a, double s);
Var add_scalar(Var a, double s);
Var tanh(Var a);
Var sigmoid(Var a);
Var relu(Var a);
Var exp(Var a);
Var log(Var a);
Var square(Var a);
// Gradient is passed through only where lo < a < hi.
Var clamp(Var a, double lo, double hi);
Var concat(std::span<const Var> parts, std::size_t axis);
Var slice(Var a, std::size_t axis, std::size_t begin, std::size_t end);
// Rows of `table` picked by index (embedding lookup).
Var gather_rows(Var table, std::span<const int> indices);
Var sum(Var a);
Var mean(Var a);
// Sum over rows of -log softmax(logits[r])[targets[r]]; rows whose target is
// negative are masked out. Uses the log-sum-exp shift for stability.
Var softmax_cross_entropy(Var logits, std::span<const int> targets);
// Mean squared error over all elements.
Var mse(Var pred, Var target);
// Inverted dropout: in train mode each element is zeroed with probability p
// and survivors are scaled by 1/(1-p). Identity in eval mode.
Var dropout(Var x, double p, Mode mode, Rng &rng);

inline Var operator+(Var a, Var b) {
  return add(a, b);
}
inline Var operator-(Var a, Var b) {
  return sub(a, b);
}
inline Var operator*(Var a, Var b) {
  return mul(a, b);
}

} // namespace exprmol

#endif // EXPRMOL_AUTODIFF_H_
