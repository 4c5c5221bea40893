//
// SPDX-License-Identifier: Apache-2.0
//

#include "exprmol/autodiff.h"

#include <algorithm>
#include <cmath>
#include <string>

namespace exprmol {
namespace {
  Tape &common_tape(Var a, Var b) {
    if (!a.valid() || a.tape() != b.tape())
      throw std::invalid_argument("operands live on different tapes");
    return *a.tape();
  }

  Tape &tape_of(Var a) {
    if (!a.valid())
      throw std::invalid_argument("operation on an unbound Var");
    return *a.tape();
  }

  Var push(Tape &tape, TapeNode node) {
    if (!node.value.all_finite()) {
      throw NumericError(std::string("non-finite value produced by ")
                         + std::string(op_name(node.op)));
    }
    return tape.record(std::move(node));
  }

  TapeNode unary(OpKind op, Var a, Tensor value) {
    TapeNode n;
    n.op = op;
    n.inputs = { a.id() };
    n.value = std::move(value);
    return n;
  }

  template <class F>
  Tensor map_values(const Tensor &x, F f) {
    Tensor out = x;
    for (double &v: out.values())
      v = f(v);
    return out;
  }

  void accumulate(std::optional<Tensor> &slot, const Tensor &delta) {
    if (!slot)
      slot = delta;
    else
      kernels::add_into(*slot, delta);
  }

  void accumulate(std::optional<Tensor> &slot, Tensor &&delta) {
    if (!slot)
      slot = std::move(delta);
    else
      kernels::add_into(*slot, delta);
  }
} // namespace

std::string_view op_name(OpKind op) {
  switch (op) {
  case OpKind::kLeaf:
    return "leaf";
  case OpKind::kMatmul:
    return "matmul";
  case OpKind::kAdd:
    return "add";
  case OpKind::kAddRowBroadcast:
    return "add(broadcast)";
  case OpKind::kSub:
    return "sub";
  case OpKind::kMul:
    return "mul";
  case OpKind::kScale:
    return "scale";
  case OpKind::kAddScalar:
    return "add_scalar";
  case OpKind::kTanh:
    return "tanh";
  case OpKind::kSigmoid:
    return "sigmoid";
  case OpKind::kRelu:
    return "relu";
  case OpKind::kExp:
    return "exp";
  case OpKind::kLog:
    return "log";
  case OpKind::kSquare:
    return "square";
  case OpKind::kClamp:
    return "clamp";
  case OpKind::kConcat:
    return "concat";
  case OpKind::kSlice:
    return "slice";
  case OpKind::kGatherRows:
    return "gather_rows";
  case OpKind::kSum:
    return "sum";
  case OpKind::kMean:
    return "mean";
  case OpKind::kSoftmaxCrossEntropy:
    return "softmax_cross_entropy";
  case OpKind::kMse:
    return "mse";
  case OpKind::kDropout:
    return "dropout";
  }
  return "?";
}

Tensor Gradients::of(Var v) const {
  if (v.id() < grads_.size() && grads_[v.id()])
    return *grads_[v.id()];
  if (v.id() < shapes_.size())
    return Tensor(shapes_[v.id()], 0.0);
  return Tensor(v.value().shape(), 0.0);
}

bool Gradients::reached(Var v) const {
  return v.id() < grads_.size() && grads_[v.id()].has_value();
}

Var Tape::leaf(Tensor value, bool requires_grad) {
  TapeNode n;
  n.op = OpKind::kLeaf;
  n.value = std::move(value);
  n.requires_grad = requires_grad;
  if (!n.value.all_finite())
    throw NumericError("non-finite value in leaf tensor");
  nodes_.push_back(std::move(n));
  return Var(this, nodes_.size() - 1);
}

Var Tape::record(TapeNode node) {
  node.requires_grad = false;
  for (std::size_t in: node.inputs)
    node.requires_grad = node.requires_grad || nodes_[in].requires_grad;
  nodes_.push_back(std::move(node));
  return Var(this, nodes_.size() - 1);
}

// ---------------------------------------------------------------- forward

Var matmul(Var a, Var b) {
  Tape &t = common_tape(a, b);
  TapeNode n;
  n.op = OpKind::kMatmul;
  n.inputs = { a.id(), b.id() };
  n.value = kernels::matmul(a.value(), b.value());
  return push(t, std::move(n));
}

Var add(Var a, Var b) {
  Tape &t = common_tape(a, b);
  const Tensor &x = a.value();
  const Tensor &y = b.value();
  TapeNode n;
  n.inputs = { a.id(), b.id() };
  if (x.shape() == y.shape()) {
    n.op = OpKind::kAdd;
    n.value = x;
    kernels::add_into(n.value, y);
  } else if (y.rows() == 1 && y.cols() == x.cols() && x.rank() == 2) {
    n.op = OpKind::kAddRowBroadcast;
    n.value = x;
    for (std::size_t r = 0; r < x.rows(); ++r) {
      auto row = n.value.row(r);
      for (std::size_t c = 0; c < row.size(); ++c)
        row[c] += y[c];
    }
  } else {
    throw ShapeError("add: shape mismatch " + x.shape_string() + " vs " + y.shape_string());
  }
  return push(t, std::move(n));
}

Var sub(Var a, Var b) {
  Tape &t = common_tape(a, b);
  require_same_shape(a.value(), b.value(), "sub");
  TapeNode n;
  n.op = OpKind::kSub;
  n.inputs = { a.id(), b.id() };
  n.value = a.value();
  const Tensor &y = b.value();
  for (std::size_t i = 0; i < n.value.size(); ++i)
    n.value[i] -= y[i];
  return push(t, std::move(n));
}

Var mul(Var a, Var b) {
  Tape &t = common_tape(a, b);
  require_same_shape(a.value(), b.value(), "mul");
  TapeNode n;
  n.op = OpKind::kMul;
  n.inputs = { a.id(), b.id() };
  n.value = a.value();
  const Tensor &y = b.value();
  for (std::size_t i = 0; i < n.value.size(); ++i)
    n.value[i] *= y[i];
  return push(t, std::move(n));
}

Var scale(Var a, double s) {
  TapeNode n = unary(OpKind::kScale, a, map_values(a.value(), [s](double v) { return v * s; }));
  n.scalar = s;
  return push(tape_of(a), std::move(n));
}

Var add_scalar(Var a, double s) {
  TapeNode n =
      unary(OpKind::kAddScalar, a, map_values(a.value(), [s](double v) { return v + s; }));
  n.scalar = s;
  return push(tape_of(a), std::move(n));
}

Var tanh(Var a) {
  return push(tape_of(a), unary(OpKind::kTanh, a, map_values(a.value(), [](double v) {
                                  return std::tanh(v);
                                })));
}

Var sigmoid(Var a) {
  return push(tape_of(a), unary(OpKind::kSigmoid, a, map_values(a.value(), [](double v) {
                                  return v >= 0 ? 1.0 / (1.0 + std::exp(-v))
                                                : std::exp(v) / (1.0 + std::exp(v));
                                })));
}

Var relu(Var a) {
  return push(tape_of(a), unary(OpKind::kRelu, a, map_values(a.value(), [](double v) {
                                  return v > 0 ? v : 0.0;
                                })));
}

Var exp(Var a) {
  return push(tape_of(a), unary(OpKind::kExp, a, map_values(a.value(), [](double v) {
                                  return std::exp(v);
                                })));
}

Var log(Var a) {
  return push(tape_of(a), unary(OpKind::kLog, a, map_values(a.value(), [](double v) {
                                  return std::log(v);
                                })));
}

Var square(Var a) {
  return push(tape_of(a), unary(OpKind::kSquare, a, map_values(a.value(), [](double v) {
                                  return v * v;
                                })));
}

Var clamp(Var a, double lo, double hi) {
  TapeNode n = unary(OpKind::kClamp, a, map_values(a.value(), [lo, hi](double v) {
                       return std::clamp(v, lo, hi);
                     }));
  n.scalar = lo;
  n.scalar2 = hi;
  return push(tape_of(a), std::move(n));
}

Var concat(std::span<const Var> parts, std::size_t axis) {
  if (parts.empty())
    throw std::invalid_argument("concat of zero tensors");
  if (axis > 1)
    throw ShapeError("concat: axis must be 0 or 1");
  Tape &t = tape_of(parts[0]);
  const std::size_t rows0 = parts[0].value().rows();
  const std::size_t cols0 = parts[0].value().cols();
  std::size_t total = 0;
  for (Var p: parts) {
    common_tape(parts[0], p);
    const Tensor &v = p.value();
    if (axis == 1 && v.rows() != rows0) {
      throw ShapeError("concat: shape mismatch " + parts[0].value().shape_string() + " vs "
                       + v.shape_string());
    }
    if (axis == 0 && v.cols() != cols0) {
      throw ShapeError("concat: shape mismatch " + parts[0].value().shape_string() + " vs "
                       + v.shape_string());
    }
    total += axis == 1 ? v.cols() : v.rows();
  }

  TapeNode n;
  n.op = OpKind::kConcat;
  n.axis = axis;
  if (axis == 1) {
    n.value = Tensor::matrix(rows0, total);
    std::size_t offset = 0;
    for (Var p: parts) {
      const Tensor &v = p.value();
      for (std::size_t r = 0; r < rows0; ++r)
        std::copy_n(v.row(r).data(), v.cols(), n.value.row(r).data() + offset);
      offset += v.cols();
      n.inputs.push_back(p.id());
    }
  } else {
    n.value = Tensor::matrix(total, cols0);
    std::size_t offset = 0;
    for (Var p: parts) {
      const Tensor &v = p.value();
      std::copy_n(v.data(), v.size(), n.value.data() + offset * cols0);
      offset += v.rows();
      n.inputs.push_back(p.id());
    }
  }
  return push(t, std::move(n));
}

Var slice(Var a, std::size_t axis, std::size_t begin, std::size_t end) {
  const Tensor &x = a.value();
  if (axis > 1)
    throw ShapeError("slice: axis must be 0 or 1");
  const std::size_t extent = axis == 0 ? x.rows() : x.cols();
  if (begin >= end || end > extent) {
    throw ShapeError("slice: range [" + std::to_string(begin) + ", " + std::to_string(end)
                     + ") out of bounds for " + x.shape_string());
  }
  TapeNode n;
  n.op = OpKind::kSlice;
  n.inputs = { a.id() };
  n.axis = axis;
  n.begin = begin;
  if (axis == 0) {
    n.value = Tensor::matrix(end - begin, x.cols());
    std::copy_n(x.data() + begin * x.cols(), n.value.size(), n.value.data());
  } else {
    n.value = Tensor::matrix(x.rows(), end - begin);
    for (std::size_t r = 0; r < x.rows(); ++r)
      std::copy_n(x.row(r).data() + begin, end - begin, n.value.row(r).data());
  }
  return push(tape_of(a), std::move(n));
}

Var gather_rows(Var table, std::span<const int> indices) {
  const Tensor &x = table.value();
  if (indices.empty())
    throw ShapeError("gather_rows: empty index list");
  TapeNode n;
  n.op = OpKind::kGatherRows;
  n.inputs = { table.id() };
  n.indices.assign(indices.begin(), indices.end());
  n.value = Tensor::matrix(indices.size(), x.cols());
  for (std::size_t r = 0; r < indices.size(); ++r) {
    const int idx = indices[r];
    if (idx < 0 || static_cast<std::size_t>(idx) >= x.rows()) {
      throw ShapeError("gather_rows: index " + std::to_string(idx) + " out of range for "
                       + x.shape_string());
    }
    std::copy_n(x.row(idx).data(), x.cols(), n.value.row(r).data());
  }
  return push(tape_of(table), std::move(n));
}

Var sum(Var a) {
  double s = 0.0;
  for (double v: a.value().values())
    s += v;
  return push(tape_of(a), unary(OpKind::kSum, a, Tensor::scalar(s)));
}

Var mean(Var a) {
  double s = 0.0;
  for (double v: a.value().values())
    s += v;
  return push(tape_of(a),
              unary(OpKind::kMean, a, Tensor::scalar(s / static_cast<double>(a.value().size()))));
}

Var softmax_cross_entropy(Var logits, std::span<const int> targets) {
  const Tensor &x = logits.value();
  if (targets.size() != x.rows()) {
    throw ShapeError("softmax_cross_entropy: shape mismatch " + x.shape_string() + " vs ["
                     + std::to_string(targets.size()) + "] targets");
  }
  TapeNode n;
  n.op = OpKind::kSoftmaxCrossEntropy;
  n.inputs = { logits.id() };
  n.indices.assign(targets.begin(), targets.end());
  n.saved = Tensor::matrix(x.rows(), x.cols());
  double loss = 0.0;
  for (std::size_t r = 0; r < x.rows(); ++r) {
    const int t = targets[r];
    if (t < 0)
      continue;
    if (static_cast<std::size_t>(t) >= x.cols()) {
      throw ShapeError("softmax_cross_entropy: target " + std::to_string(t)
                       + " out of range for " + x.shape_string());
    }
    auto row = x.row(r);
    const double m = *std::max_element(row.begin(), row.end());
    double z = 0.0;
    for (double v: row)
      z += std::exp(v - m);
    const double lse = m + std::log(z);
    auto probs = n.saved.row(r);
    for (std::size_t c = 0; c < row.size(); ++c)
      probs[c] = std::exp(row[c] - lse);
    loss += lse - row[t];
  }
  n.value = Tensor::scalar(loss);
  return push(tape_of(logits), std::move(n));
}

Var mse(Var pred, Var target) {
  Tape &t = common_tape(pred, target);
  require_same_shape(pred.value(), target.value(), "mse");
  const Tensor &p = pred.value();
  const Tensor &y = target.value();
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double d = p[i] - y[i];
    s += d * d;
  }
  TapeNode n;
  n.op = OpKind::kMse;
  n.inputs = { pred.id(), target.id() };
  n.value = Tensor::scalar(s / static_cast<double>(p.size()));
  return push(t, std::move(n));
}

Var dropout(Var x, double p, Mode mode, Rng &rng) {
  if (!(p >= 0.0 && p < 1.0))
    throw std::invalid_argument("dropout probability must be in [0, 1)");
  if (mode == Mode::kEval || p == 0.0)
    return x;
  const Tensor &v = x.value();
  TapeNode n;
  n.op = OpKind::kDropout;
  n.inputs = { x.id() };
  n.saved = Tensor(v.shape(), 0.0);
  n.value = v;
  const double keep_scale = 1.0 / (1.0 - p);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double m = rng.uniform() < p ? 0.0 : keep_scale;
    n.saved[i] = m;
    n.value[i] *= m;
  }
  return push(tape_of(x), std::move(n));
}

// --------------------------------------------------------------- backward

Gradients Tape::backward(Var loss) const {
  if (loss.tape() != this)
    throw std::invalid_argument("backward: loss is not on this tape");
  const TapeNode &root = nodes_[loss.id()];
  if (root.value.size() != 1) {
    throw ShapeError("backward: loss must be scalar, got " + root.value.shape_string());
  }

  std::vector<std::optional<Tensor>> grads(loss.id() + 1);
  std::vector<std::vector<std::size_t>> shapes(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    shapes[i] = nodes_[i].value.shape();
  if (root.requires_grad)
    grads[loss.id()] = Tensor(root.value.shape(), 1.0);

  for (std::size_t id = loss.id() + 1; id-- > 0;) {
    const TapeNode &n = nodes_[id];
    if (!grads[id] || n.op == OpKind::kLeaf)
      continue;
    const Tensor &g = *grads[id];
    auto wants = [&](std::size_t k) { return nodes_[n.inputs[k]].requires_grad; };
    auto input = [&](std::size_t k) -> const Tensor & { return nodes_[n.inputs[k]].value; };
    auto slot = [&](std::size_t k) -> std::optional<Tensor> & { return grads[n.inputs[k]]; };

    switch (n.op) {
    case OpKind::kLeaf:
      break;
    case OpKind::kMatmul:
      if (wants(0))
        accumulate(slot(0), kernels::matmul_nt(g, input(1)));
      if (wants(1))
        accumulate(slot(1), kernels::matmul_tn(input(0), g));
      break;
    case OpKind::kAdd:
      if (wants(0))
        accumulate(slot(0), g);
      if (wants(1))
        accumulate(slot(1), g);
      break;
    case OpKind::kAddRowBroadcast:
      if (wants(0))
        accumulate(slot(0), g);
      if (wants(1)) {
        Tensor gb(input(1).shape(), 0.0);
        for (std::size_t r = 0; r < g.rows(); ++r) {
          auto row = g.row(r);
          for (std::size_t c = 0; c < row.size(); ++c)
            gb[c] += row[c];
        }
        accumulate(slot(1), std::move(gb));
      }
      break;
    case OpKind::kSub:
      if (wants(0))
        accumulate(slot(0), g);
      if (wants(1))
        accumulate(slot(1), map_values(g, [](double v) { return -v; }));
      break;
    case OpKind::kMul:
      for (std::size_t k = 0; k < 2; ++k) {
        if (!wants(k))
          continue;
        Tensor d = g;
        const Tensor &other = input(1 - k);
        for (std::size_t i = 0; i < d.size(); ++i)
          d[i] *= other[i];
        accumulate(slot(k), std::move(d));
      }
      break;
    case OpKind::kScale:
      if (wants(0))
        accumulate(slot(0), map_values(g, [s = n.scalar](double v) { return v * s; }));
      break;
    case OpKind::kAddScalar:
      if (wants(0))
        accumulate(slot(0), g);
      break;
    case OpKind::kTanh:
      if (wants(0)) {
        Tensor d = g;
        for (std::size_t i = 0; i < d.size(); ++i)
          d[i] *= 1.0 - n.value[i] * n.value[i];
        accumulate(slot(0), std::move(d));
      }
      break;
    case OpKind::kSigmoid:
      if (wants(0)) {
        Tensor d = g;
        for (std::size_t i = 0; i < d.size(); ++i)
          d[i] *= n.value[i] * (1.0 - n.value[i]);
        accumulate(slot(0), std::move(d));
      }
      break;
    case OpKind::kRelu:
      if (wants(0)) {
        Tensor d = g;
        const Tensor &x = input(0);
        for (std::size_t i = 0; i < d.size(); ++i)
          d[i] = x[i] > 0 ? d[i] : 0.0;
        accumulate(slot(0), std::move(d));
      }
      break;
    case OpKind::kExp:
      if (wants(0)) {
        Tensor d = g;
        for (std::size_t i = 0; i < d.size(); ++i)
          d[i] *= n.value[i];
        accumulate(slot(0), std::move(d));
      }
      break;
    case OpKind::kLog:
      if (wants(0)) {
        Tensor d = g;
        const Tensor &x = input(0);
        for (std::size_t i = 0; i < d.size(); ++i)
          d[i] /= x[i];
        accumulate(slot(0), std::move(d));
      }
      break;
    case OpKind::kSquare:
      if (wants(0)) {
        Tensor d = g;
        const Tensor &x = input(0);
        for (std::size_t i = 0; i < d.size(); ++i)
          d[i] *= 2.0 * x[i];
        accumulate(slot(0), std::move(d));
      }
      break;
    case OpKind::kClamp:
      if (wants(0)) {
        Tensor d = g;
        const Tensor &x = input(0);
        for (std::size_t i = 0; i < d.size(); ++i)
          d[i] = (x[i] > n.scalar && x[i] < n.scalar2) ? d[i] : 0.0;
        accumulate(slot(0), std::move(d));
      }
      break;
    case OpKind::kConcat: {
      std::size_t offset = 0;
      for (std::size_t k = 0; k < n.inputs.size(); ++k) {
        const Tensor &x = input(k);
        if (wants(k)) {
          Tensor d(x.shape(), 0.0);
          if (n.axis == 1) {
            for (std::size_t r = 0; r < x.rows(); ++r)
              std::copy_n(g.row(r).data() + offset, x.cols(), d.row(r).data());
          } else {
            std::copy_n(g.data() + offset * g.cols(), x.size(), d.data());
          }
          accumulate(slot(k), std::move(d));
        }
        offset += n.axis == 1 ? x.cols() : x.rows();
      }
      break;
    }
    case OpKind::kSlice:
      if (wants(0)) {
        const Tensor &x = input(0);
        Tensor d(x.shape(), 0.0);
        if (n.axis == 0) {
          std::copy_n(g.data(), g.size(), d.data() + n.begin * x.cols());
        } else {
          for (std::size_t r = 0; r < x.rows(); ++r)
            std::copy_n(g.row(r).data(), g.cols(), d.row(r).data() + n.begin);
        }
        accumulate(slot(0), std::move(d));
      }
      break;
    case OpKind::kGatherRows:
      if (wants(0)) {
        Tensor d(input(0).shape(), 0.0);
        for (std::size_t r = 0; r < n.indices.size(); ++r) {
          auto src = g.row(r);
          auto dst = d.row(n.indices[r]);
          for (std::size_t c = 0; c < src.size(); ++c)
            dst[c] += src[c];
        }
        accumulate(slot(0), std::move(d));
      }
      break;
    case OpKind::kSum:
      if (wants(0))
        accumulate(slot(0), Tensor(input(0).shape(), g.item()));
      break;
    case OpKind::kMean:
      if (wants(0)) {
        const double s = g.item() / static_cast<double>(input(0).size());
        accumulate(slot(0), Tensor(input(0).shape(), s));
      }
      break;
    case OpKind::kSoftmaxCrossEntropy:
      if (wants(0)) {
        Tensor d = n.saved;
        const double s = g.item();
        for (std::size_t r = 0; r < d.rows(); ++r) {
          auto row = d.row(r);
          const int t = n.indices[r];
          if (t < 0) {
            std::fill(row.begin(), row.end(), 0.0);
            continue;
          }
          row[t] -= 1.0;
          for (double &v: row)
            v *= s;
        }
        accumulate(slot(0), std::move(d));
      }
      break;
    case OpKind::kMse: {
      const Tensor &p = input(0);
      const Tensor &y = input(1);
      const double s = 2.0 * g.item() / static_cast<double>(p.size());
      if (wants(0) || wants(1)) {
        Tensor d(p.shape(), 0.0);
        for (std::size_t i = 0; i < d.size(); ++i)
          d[i] = s * (p[i] - y[i]);
        if (wants(1))
          accumulate(slot(1), map_values(d, [](double v) { return -v; }));
        if (wants(0))
          accumulate(slot(0), std::move(d));
      }
      break;
    }
    case OpKind::kDropout:
      if (wants(0)) {
        Tensor d = g;
        for (std::size_t i = 0; i < d.size(); ++i)
          d[i] *= n.saved[i];
        accumulate(slot(0), std::move(d));
      }
      break;
    }
    // Intermediate gradients are no longer needed once propagated.
    if (nodes_[id].op != OpKind::kLeaf)
      grads[id].reset();
  }
  return Gradients(std::move(grads), std::move(shapes));
}

} // namespace exprmol
