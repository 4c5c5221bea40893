//
// SPDX-License-Identifier: Apache-2.0
//

#include "exprmol/adam.h"

#include <cmath>

#include <gtest/gtest.h>

#include "exprmol/parameters.h"

namespace exprmol {
namespace {

ParameterSet one_param(double v) {
  ParameterSet p;
  p.add("w", Tensor::scalar(v));
  return p;
}

TEST(AdamTest, ZeroGradientLeavesParametersAndCountsStep) {
  ParameterSet p = one_param(1.5);
  AdamState adam(p, AdamOptions { 0.1 });
  adam.step(p, { Tensor::scalar(0.0) });
  EXPECT_EQ(p[0].value.item(), 1.5);
  EXPECT_EQ(adam.step_count(), 1u);
  adam.step(p, { Tensor::scalar(0.0) });
  EXPECT_EQ(adam.step_count(), 2u);
}

TEST(AdamTest, FirstStepMovesByLearningRate) {
  // At t=1, m_hat = g and v_hat = g^2, so the step is lr * g / (|g| + eps).
  ParameterSet p = one_param(0.0);
  AdamState adam(p, AdamOptions { 0.01 });
  adam.step(p, { Tensor::scalar(3.0) });
  EXPECT_NEAR(p[0].value.item(), -0.01 * 3.0 / (3.0 + 1e-8), 1e-15);
}

TEST(AdamTest, ConstantGradientIsMonotone) {
  ParameterSet p = one_param(0.0);
  AdamState adam(p, AdamOptions { 0.01 });
  double prev = 0.0;
  for (int i = 0; i < 2; ++i) {
    adam.step(p, { Tensor::scalar(-0.5) });
    EXPECT_GT(p[0].value.item(), prev);
    prev = p[0].value.item();
  }
}

TEST(AdamTest, ShapeMismatchThrows) {
  ParameterSet p = one_param(0.0);
  AdamState adam(p, AdamOptions {});
  EXPECT_THROW(adam.step(p, { Tensor::matrix(1, 2) }), ShapeError);
  EXPECT_THROW(adam.step(p, {}), ShapeError);
}

TEST(AdamTest, MomentsMatchParameterShapes) {
  ParameterSet p;
  p.add("a", Tensor::matrix(2, 3));
  p.add("b", Tensor::matrix(1, 3));
  AdamState adam(p, AdamOptions {});
  ASSERT_EQ(adam.first_moment().size(), 2u);
  EXPECT_EQ(adam.first_moment()[0].shape(), p[0].value.shape());
  EXPECT_EQ(adam.second_moment()[1].shape(), p[1].value.shape());
}

TEST(ClipTest, GlobalNorm) {
  std::vector<Tensor> g = { Tensor::from_rows({ { 3.0 } }), Tensor::from_rows({ { 4.0 } }) };
  EXPECT_DOUBLE_EQ(clip_global_norm(g, 1.0), 5.0);
  EXPECT_NEAR(g[0].item(), 0.6, 1e-15);
  EXPECT_NEAR(g[1].item(), 0.8, 1e-15);
  // Below the threshold nothing changes.
  std::vector<Tensor> h = { Tensor::from_rows({ { 0.1 } }) };
  clip_global_norm(h, 1.0);
  EXPECT_EQ(h[0].item(), 0.1);
}

TEST(ParameterSetTest, NamesAndBinding) {
  ParameterSet p;
  p.add("x", Tensor::matrix(2, 2, 1.0));
  p.add("y", Tensor::matrix(1, 3, 2.0));
  EXPECT_EQ(p.index_of("y"), 1u);
  EXPECT_EQ(p.scalar_count(), 7u);
  EXPECT_THROW(p.index_of("z"), std::out_of_range);
  Tape tape;
  auto vars = p.bind(tape, true);
  ASSERT_EQ(vars.size(), 2u);
  EXPECT_EQ(vars[1].value(), p.get("y"));
}

TEST(ParameterSetTest, GlorotBounds) {
  Rng rng(3);
  const Tensor w = glorot_uniform(10, 20, rng);
  const double a = std::sqrt(6.0 / 30.0);
  for (double v: w.values()) {
    EXPECT_GE(v, -a);
    EXPECT_LE(v, a);
  }
}

} // namespace
} // namespace exprmol
