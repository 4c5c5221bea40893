//
// SPDX-License-Identifier: Apache-2.0
//

#include "exprmol/tensor.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include <Eigen/Core>

namespace exprmol {
namespace {
  std::size_t extent_product(const std::vector<std::size_t> &shape) {
    return std::accumulate(shape.begin(), shape.end(), std::size_t { 1 },
                           std::multiplies<>());
  }

  void check_extents(const std::vector<std::size_t> &shape) {
    if (shape.empty())
      throw ShapeError("tensor shape must have at least one extent");
    for (std::size_t e: shape) {
      if (e == 0)
        throw ShapeError("tensor extents must be positive, got " + shape_string(shape));
    }
  }

  using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  using ConstMap = Eigen::Map<const RowMajor>;
  using MutMap = Eigen::Map<RowMajor>;

  ConstMap as_matrix(const Tensor &t) {
    return ConstMap(t.data(), static_cast<Eigen::Index>(t.rows()),
                    static_cast<Eigen::Index>(t.cols()));
  }

  MutMap as_matrix(Tensor &t) {
    return MutMap(t.data(), static_cast<Eigen::Index>(t.rows()),
                  static_cast<Eigen::Index>(t.cols()));
  }
} // namespace

std::string shape_string(const std::vector<std::size_t> &shape) {
  std::string s = "[";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i > 0)
      s += "x";
    s += std::to_string(shape[i]);
  }
  return s + "]";
}

Tensor::Tensor(std::vector<std::size_t> shape, double fill): shape_(std::move(shape)) {
  check_extents(shape_);
  data_.assign(extent_product(shape_), fill);
}

Tensor::Tensor(std::vector<std::size_t> shape, std::vector<double> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
  check_extents(shape_);
  if (data_.size() != extent_product(shape_)) {
    throw ShapeError("tensor data length " + std::to_string(data_.size())
                     + " does not match shape " + shape_string());
  }
}

Tensor Tensor::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<double> data;
  data.reserve(r * c);
  for (const auto &row: rows) {
    if (row.size() != c)
      throw ShapeError("ragged initializer for tensor");
    data.insert(data.end(), row.begin(), row.end());
  }
  return Tensor({ r, c }, std::move(data));
}

Tensor Tensor::identity(std::size_t n) {
  Tensor t = matrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    t(i, i) = 1.0;
  return t;
}

std::size_t Tensor::rows() const {
  if (shape_.size() == 1)
    return 1;
  if (shape_.size() != 2)
    throw ShapeError("expected a rank-2 tensor, got " + shape_string());
  return shape_[0];
}

std::size_t Tensor::cols() const {
  if (shape_.size() == 1)
    return shape_[0];
  if (shape_.size() != 2)
    throw ShapeError("expected a rank-2 tensor, got " + shape_string());
  return shape_[1];
}

double Tensor::item() const {
  if (data_.size() != 1)
    throw ShapeError("item() needs a single-element tensor, got " + shape_string());
  return data_[0];
}

bool Tensor::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

void Tensor::fill(double v) {
  std::fill(data_.begin(), data_.end(), v);
}

std::string Tensor::shape_string() const {
  return exprmol::shape_string(shape_);
}

void require_same_shape(const Tensor &a, const Tensor &b, const char *what) {
  if (a.shape() != b.shape()) {
    throw ShapeError(std::string(what) + ": shape mismatch " + a.shape_string()
                     + " vs " + b.shape_string());
  }
}

namespace kernels {

  Tensor matmul(const Tensor &a, const Tensor &b) {
    if (a.cols() != b.rows()) {
      throw ShapeError("matmul: shape mismatch " + a.shape_string() + " vs "
                       + b.shape_string());
    }
    Tensor c = Tensor::matrix(a.rows(), b.cols());
    as_matrix(c).noalias() = as_matrix(a) * as_matrix(b);
    return c;
  }

  Tensor matmul_nt(const Tensor &a, const Tensor &b) {
    if (a.cols() != b.cols()) {
      throw ShapeError("matmul_nt: shape mismatch " + a.shape_string() + " vs "
                       + b.shape_string());
    }
    Tensor c = Tensor::matrix(a.rows(), b.rows());
    as_matrix(c).noalias() = as_matrix(a) * as_matrix(b).transpose();
    return c;
  }

  Tensor matmul_tn(const Tensor &a, const Tensor &b) {
    if (a.rows() != b.rows()) {
      throw ShapeError("matmul_tn: shape mismatch " + a.shape_string() + " vs "
                       + b.shape_string());
    }
    Tensor c = Tensor::matrix(a.cols(), b.cols());
    as_matrix(c).noalias() = as_matrix(a).transpose() * as_matrix(b);
    return c;
  }

  void add_into(Tensor &dst, const Tensor &src) {
    require_same_shape(dst, src, "add_into");
    double *d = dst.data();
    const double *s = src.data();
    for (std::size_t i = 0; i < dst.size(); ++i)
      d[i] += s[i];
  }

} // namespace kernels
} // namespace exprmol
