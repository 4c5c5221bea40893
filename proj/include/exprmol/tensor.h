//
// SPDX-License-Identifier: Apache-2.0
//

#ifndef EXPRMOL_TENSOR_H_
#define EXPRMOL_TENSOR_H_

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace exprmol {

// Raised when operand shapes do not conform. The message names both shapes.
class ShapeError: public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Raised when an operation produces NaN or infinity.
class NumericError: public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Dense row-major tensor of 64-bit floats.
///
/// The element count always equals the product of the shape extents. Most of
/// the math in this library works on rank-2 tensors; a scalar is 1x1.
class Tensor {
public:
  Tensor() = default;
  explicit Tensor(std::vector<std::size_t> shape, double fill = 0.0);
  Tensor(std::vector<std::size_t> shape, std::vector<double> data);

  static Tensor matrix(std::size_t rows, std::size_t cols, double fill = 0.0) {
    return Tensor({ rows, cols }, fill);
  }
  static Tensor from_rows(std::initializer_list<std::initializer_list<double>> rows);
  static Tensor scalar(double v) { return Tensor({ 1, 1 }, v); }
  static Tensor identity(std::size_t n);

  const std::vector<std::size_t> &shape() const { return shape_; }
  std::size_t rank() const { return shape_.size(); }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  // Rank-2 accessors; a rank-1 tensor is viewed as a single row.
  std::size_t rows() const;
  std::size_t cols() const;

  double *data() { return data_.data(); }
  const double *data() const { return data_.data(); }
  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }

  double &operator()(std::size_t r, std::size_t c) { return data_[r * cols() + c]; }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols() + c];
  }
  double &operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }

  std::span<double> row(std::size_t r) { return { data_.data() + r * cols(), cols() }; }
  std::span<const double> row(std::size_t r) const {
    return { data_.data() + r * cols(), cols() };
  }

  double item() const;
  bool all_finite() const;
  void fill(double v);

  std::string shape_string() const;

  friend bool operator==(const Tensor &a, const Tensor &b) = default;

private:
  std::vector<std::size_t> shape_;
  std::vector<double> data_;
};

std::string shape_string(const std::vector<std::size_t> &shape);

// Throws ShapeError mentioning `what` and both shapes unless they are equal.
void require_same_shape(const Tensor &a, const Tensor &b, const char *what);

namespace kernels {

  // C = A * B
  Tensor matmul(const Tensor &a, const Tensor &b);
  // C = A * B^T
  Tensor matmul_nt(const Tensor &a, const Tensor &b);
  // C = A^T * B
  Tensor matmul_tn(const Tensor &a, const Tensor &b);
  // dst += src (same shape)
  void add_into(Tensor &dst, const Tensor &src);

} // namespace kernels

} // namespace exprmol

#endif // EXPRMOL_TENSOR_H_
