#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace dae {

using Shape = std::vector<std::size_t>;

std::string shape_to_string(const Shape& shape);

/// Shape-tagged, row-major array of doubles.
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(Shape shape, double fill = 0.0);
  Tensor(Shape shape, std::vector<double> data);

  /// 2-D tensor from nested rows; all rows must have equal length.
  static Tensor from_rows(std::initializer_list<std::initializer_list<double>> rows);
  static Tensor identity(std::size_t n);

  const Shape& shape() const { return shape_; }
  std::size_t rank() const { return shape_.size(); }
  std::size_t size() const { return data_.size(); }
  std::size_t rows() const;
  std::size_t cols() const;

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }
  std::vector<double>& values() { return data_; }
  const std::vector<double>& values() const { return data_; }

  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }

  /// Element (r, c) of a rank-2 tensor.
  double& at(std::size_t r, std::size_t c) { return data_[r * shape_[1] + c]; }
  double at(std::size_t r, std::size_t c) const { return data_[r * shape_[1] + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols(), cols()}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols(), cols()}; }

  bool all_finite() const;

  friend bool operator==(const Tensor&, const Tensor&) = default;

 private:
  Shape shape_;
  std::vector<double> data_;
};

/// [m x k] * [k x n]. Each output element accumulates over k in increasing order.
Tensor matmul(const Tensor& a, const Tensor& b);
/// a^T * b for a [k x m], b [k x n].
Tensor matmul_at_b(const Tensor& a, const Tensor& b);
/// a * b^T for a [m x k], b [n x k].
Tensor matmul_a_bt(const Tensor& a, const Tensor& b);

Tensor add(const Tensor& a, const Tensor& b);
Tensor subtract(const Tensor& a, const Tensor& b);
Tensor hadamard(const Tensor& a, const Tensor& b);
Tensor scale(const Tensor& a, double s);
/// Column sums of a rank-2 tensor, shape [cols].
Tensor column_sums(const Tensor& a);
/// Columns [begin, end) of a rank-2 tensor.
Tensor slice_columns(const Tensor& a, std::size_t begin, std::size_t end);
/// Horizontal concatenation of two rank-2 tensors with equal row counts.
Tensor concat_columns(const Tensor& a, const Tensor& b);
/// Rows listed in `indices`, in that order.
Tensor gather_rows(const Tensor& a, std::span<const std::size_t> indices);

Tensor sigmoid(const Tensor& x);
/// Derivative of the sigmoid expressed through its output y: y (1 - y).
Tensor sigmoid_derivative(const Tensor& y);
Tensor relu(const Tensor& x);
/// 1 where x >= 0, else 0.
Tensor relu_derivative(const Tensor& x);
Tensor leaky_relu(const Tensor& x, double slope);
/// 1 where x >= 0, else slope.
Tensor leaky_relu_derivative(const Tensor& x, double slope);

/// Logistic function, strictly inside (0, 1) for every finite input.
double sigmoid(double x);

}  // namespace dae
