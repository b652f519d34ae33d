#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "mmfista/errors.hpp"

namespace mmfista {

constexpr bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

struct Shape {
  std::size_t rows = 0;
  std::size_t cols = 0;

  std::size_t size() const { return rows * cols; }
  Shape halved() const { return {rows / 2, cols / 2}; }
  bool operator==(const Shape&) const = default;
  std::string str() const;
};

/// Dense row-major 2-D array of doubles with power-of-two extents.
///
/// This is the vector space element at every level of the hierarchy; all
/// operators map GridImage to GridImage.
class GridImage {
 public:
  GridImage() = default;
  explicit GridImage(Shape shape, double fill = 0.0);
  GridImage(std::size_t rows, std::size_t cols, double fill = 0.0)
      : GridImage(Shape{rows, cols}, fill) {}
  GridImage(Shape shape, std::vector<double> data);

  static GridImage zeros_like(const GridImage& other) { return GridImage(other.shape()); }

  Shape shape() const { return shape_; }
  std::size_t rows() const { return shape_.rows; }
  std::size_t cols() const { return shape_.cols; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * shape_.cols + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * shape_.cols + c]; }
  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }

  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }
  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }

  bool all_finite() const;

  GridImage& operator+=(const GridImage& other);
  GridImage& operator-=(const GridImage& other);
  GridImage& operator*=(double s);

  /// this += alpha * other
  GridImage& add_scaled(double alpha, const GridImage& other);

 private:
  Shape shape_{};
  std::vector<double> data_;
};

GridImage operator+(GridImage a, const GridImage& b);
GridImage operator-(GridImage a, const GridImage& b);
GridImage operator*(double s, GridImage a);

/// a*x + b*y
GridImage lincomb(double a, const GridImage& x, double b, const GridImage& y);

void require_same_shape(const GridImage& a, const GridImage& b, const char* where);

}  // namespace mmfista
