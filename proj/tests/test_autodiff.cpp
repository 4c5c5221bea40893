//
// SPDX-License-Identifier: Apache-2.0
//

#include "exprmol/autodiff.h"

#include <cmath>

#include <gtest/gtest.h>

#include "support/gradcheck.h"
#include "support/toy_data.h"

namespace exprmol {
namespace {

using testing::check_gradients;
using testing::random_tensor;

constexpr double kGradTolerance = 1e-4;

TEST(AutodiffTest, SumOfSquares) {
  Tape tape;
  Var x = tape.leaf(Tensor::from_rows({ { 1, 2, 3 } }));
  const Gradients g = tape.backward(sum(x * x));
  EXPECT_EQ(g.of(x), Tensor::from_rows({ { 2, 4, 6 } }));
}

TEST(AutodiffTest, ConstantLossGivesZeroGradients) {
  Tape tape;
  Var x = tape.leaf(Tensor::from_rows({ { 1, 2 } }));
  Var c = tape.constant(Tensor::scalar(3.0));
  const Gradients g = tape.backward(sum(c));
  EXPECT_FALSE(g.reached(x));
  EXPECT_EQ(g.of(x), Tensor::matrix(1, 2, 0.0));
}

TEST(AutodiffTest, NonScalarLossThrows) {
  Tape tape;
  Var x = tape.leaf(Tensor::matrix(2, 2, 1.0));
  EXPECT_THROW(tape.backward(x), ShapeError);
}

TEST(AutodiffTest, TapeInputsPrecedeConsumers) {
  Tape tape;
  Var a = tape.leaf(random_tensor(2, 3, 1));
  Var b = tape.leaf(random_tensor(3, 2, 2));
  sum(tanh(matmul(a, b)));
  for (std::size_t i = 0; i < tape.size(); ++i) {
    for (std::size_t in: tape.node(i).inputs)
      EXPECT_LT(in, i);
  }
}

TEST(AutodiffTest, ShapeMismatchNamesShapes) {
  Tape tape;
  Var a = tape.leaf(Tensor::matrix(2, 3));
  Var b = tape.leaf(Tensor::matrix(4, 5));
  try {
    matmul(a, b);
    FAIL();
  } catch (const ShapeError &e) {
    EXPECT_NE(std::string(e.what()).find("[2x3]"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("[4x5]"), std::string::npos);
  }
  EXPECT_THROW(add(a, b), ShapeError);
}

TEST(AutodiffTest, NonFiniteResultIsAnError) {
  Tape tape;
  Var x = tape.leaf(Tensor::from_rows({ { 0.0, 1.0 } }));
  EXPECT_THROW(log(x), NumericError);
}

TEST(AutodiffTest, DropoutIdentityCases) {
  Tape tape;
  const Tensor v = random_tensor(3, 4, 7);
  Var x = tape.leaf(v);
  Rng rng(1);
  EXPECT_EQ(dropout(x, 0.0, Mode::kTrain, rng).value(), v);
  EXPECT_EQ(dropout(x, 0.5, Mode::kEval, rng).value(), v);
}

TEST(AutodiffTest, DropoutExpectation) {
  const Tensor v = Tensor::from_rows({ { 1.0, -2.0, 0.5 } });
  const double p = 0.3;
  const int trials = 20000;
  std::vector<double> total(3, 0.0);
  Rng rng(11);
  for (int t = 0; t < trials; ++t) {
    Tape tape;
    Var y = dropout(tape.leaf(v), p, Mode::kTrain, rng);
    for (int i = 0; i < 3; ++i)
      total[i] += y.value()[i];
  }
  for (int i = 0; i < 3; ++i) {
    // Each draw is x/(1-p) w.p. 1-p and 0 otherwise.
    const double sd = std::abs(v[i]) * std::sqrt(p / (1.0 - p));
    const double se = sd / std::sqrt(double(trials));
    EXPECT_NEAR(total[i] / trials, v[i], 3.0 * se);
  }
}

TEST(AutodiffTest, SoftmaxCrossEntropyMasksNegativeTargets) {
  Tape tape;
  Var logits = tape.leaf(Tensor::from_rows({ { 1, 2, 3 }, { 0, 0, 0 } }));
  const std::vector<int> targets = { 2, -1 };
  const double got = softmax_cross_entropy(logits, targets).value().item();
  const double want = -std::log(std::exp(3.0) / (std::exp(1.0) + std::exp(2.0) + std::exp(3.0)));
  EXPECT_NEAR(got, want, 1e-12);
  const Gradients g = tape.backward(softmax_cross_entropy(logits, targets));
  for (int j = 0; j < 3; ++j)
    EXPECT_EQ(g.of(logits)(1, j), 0.0);
}

TEST(AutodiffTest, SoftmaxCrossEntropyIsStableForLargeLogits) {
  Tape tape;
  Var logits = tape.leaf(Tensor::from_rows({ { 1000.0, 0.0 } }));
  const std::vector<int> targets = { 1 };
  EXPECT_NEAR(softmax_cross_entropy(logits, targets).value().item(), 1000.0, 1e-9);
}

TEST(AutodiffTest, MseIsMeanOverElements) {
  Tape tape;
  Var a = tape.leaf(Tensor::from_rows({ { 1, 2 }, { 3, 4 } }));
  Var b = tape.constant(Tensor::from_rows({ { 0, 2 }, { 3, 6 } }));
  EXPECT_DOUBLE_EQ(mse(a, b).value().item(), (1.0 + 4.0) / 4.0);
}

TEST(AutodiffTest, ConcatAndSliceRoundTrip) {
  Tape tape;
  const Tensor va = random_tensor(2, 3, 1);
  const Tensor vb = random_tensor(2, 2, 2);
  Var a = tape.leaf(va);
  Var b = tape.leaf(vb);
  const std::vector<Var> parts = { a, b };
  Var c = concat(parts, 1);
  EXPECT_EQ(slice(c, 1, 0, 3).value(), va);
  EXPECT_EQ(slice(c, 1, 3, 5).value(), vb);
  EXPECT_THROW(slice(c, 1, 3, 6), ShapeError);
}

// Every op on small random inputs against central differences.
TEST(AutodiffTest, ElementwiseOpGradients) {
  const std::vector<Tensor> in = { random_tensor(3, 4, 21), random_tensor(3, 4, 22) };
  auto check = [&](const char *name, const testing::LossFn &f) {
    const auto r = check_gradients(f, in);
    EXPECT_LT(r.max_relative_error, kGradTolerance) << name;
  };
  check("add", [](Tape &, const std::vector<Var> &v) { return sum(square(v[0] + v[1])); });
  check("sub", [](Tape &, const std::vector<Var> &v) { return sum(square(v[0] - v[1])); });
  check("mul", [](Tape &, const std::vector<Var> &v) { return sum(v[0] * v[1]); });
  check("scale", [](Tape &, const std::vector<Var> &v) { return sum(square(scale(v[0], 1.7))); });
  check("add_scalar",
        [](Tape &, const std::vector<Var> &v) { return sum(square(add_scalar(v[0], 0.3))); });
  check("tanh", [](Tape &, const std::vector<Var> &v) { return sum(tanh(v[0]) * v[1]); });
  check("sigmoid", [](Tape &, const std::vector<Var> &v) { return sum(sigmoid(v[0]) * v[1]); });
  check("relu", [](Tape &, const std::vector<Var> &v) { return sum(relu(v[0]) * v[1]); });
  check("exp", [](Tape &, const std::vector<Var> &v) { return sum(exp(v[0]) * v[1]); });
  check("log", [](Tape &, const std::vector<Var> &v) {
    return sum(log(add_scalar(square(v[0]), 0.5)));
  });
  check("clamp",
        [](Tape &, const std::vector<Var> &v) { return sum(clamp(v[0], -0.5, 0.5) * v[1]); });
  check("mean", [](Tape &, const std::vector<Var> &v) { return mean(square(v[0])); });
  check("mse", [](Tape &, const std::vector<Var> &v) { return mse(v[0], v[1]); });
}

TEST(AutodiffTest, StructuralOpGradients) {
  const std::vector<Tensor> in = { random_tensor(3, 4, 31), random_tensor(4, 2, 32),
                                   random_tensor(1, 2, 33) };
  const auto r = check_gradients(
      [](Tape &, const std::vector<Var> &v) {
        Var h = add(matmul(v[0], v[1]), v[2]); // row broadcast
        const std::vector<Var> parts = { h, slice(v[0], 1, 1, 3) };
        Var c = concat(parts, 1);
        const std::vector<Var> rows = { c, slice(c, 0, 0, 1) };
        Var d = concat(rows, 0);
        const std::vector<int> idx = { 3, 0, 0, 2 };
        return sum(square(tanh(gather_rows(d, idx))));
      },
      in);
  EXPECT_LT(r.max_relative_error, kGradTolerance);
}

TEST(AutodiffTest, CrossEntropyAndDropoutGradients) {
  const std::vector<Tensor> in = { random_tensor(4, 5, 41, 2.0) };
  const std::vector<int> targets = { 1, -1, 4, 0 };
  const auto r = check_gradients(
      [&](Tape &, const std::vector<Var> &v) {
        Rng rng(5); // same mask on every evaluation
        return softmax_cross_entropy(dropout(v[0], 0.4, Mode::kTrain, rng), targets);
      },
      in);
  EXPECT_LT(r.max_relative_error, kGradTolerance);
}

TEST(AutodiffTest, TwoLayerTanhNet) {
  const std::vector<Tensor> in = { random_tensor(5, 3, 51), random_tensor(3, 6, 52),
                                   random_tensor(1, 6, 53), random_tensor(6, 2, 54),
                                   random_tensor(1, 2, 55) };
  const Tensor target = random_tensor(5, 2, 56);
  const auto r = check_gradients(
      [&](Tape &tape, const std::vector<Var> &v) {
        Var h = tanh(add(matmul(v[0], v[1]), v[2]));
        Var y = add(matmul(h, v[3]), v[4]);
        return mse(y, tape.constant(target));
      },
      in);
  EXPECT_LT(r.max_relative_error, kGradTolerance);
  EXPECT_EQ(r.checked, 15u + 18u + 6u + 12u + 2u);
}

TEST(AutodiffTest, BackwardIsDeterministic) {
  auto run = [] {
    Tape tape;
    Var a = tape.leaf(random_tensor(4, 4, 61));
    Var b = tape.leaf(random_tensor(4, 4, 62));
    return tape.backward(sum(tanh(matmul(a, b)))).of(a);
  };
  EXPECT_EQ(run(), run());
}

} // namespace
} // namespace exprmol
