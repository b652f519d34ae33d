#include "mmfista/grid_image.hpp"

#include <cmath>

#include "mmfista/kernels.hpp"

namespace mmfista {

std::string Shape::str() const { return std::to_string(rows) + "x" + std::to_string(cols); }

namespace {

void check_shape(Shape shape) {
  if (!is_power_of_two(shape.rows) || !is_power_of_two(shape.cols)) {
    throw DimensionError("GridImage extents must be powers of two, got " + shape.str());
  }
}

}  // namespace

GridImage::GridImage(Shape shape, double fill) : shape_(shape) {
  check_shape(shape);
  data_.assign(shape.size(), fill);
}

GridImage::GridImage(Shape shape, std::vector<double> data) : shape_(shape), data_(std::move(data)) {
  check_shape(shape);
  if (data_.size() != shape.size()) {
    throw DimensionError("GridImage data length " + std::to_string(data_.size()) +
                         " does not match shape " + shape.str());
  }
}

bool GridImage::all_finite() const {
  for (double v : data_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

void require_same_shape(const GridImage& a, const GridImage& b, const char* where) {
  if (a.shape() != b.shape()) {
    throw DimensionError(std::string(where) + ": shape mismatch " + a.shape().str() + " vs " +
                         b.shape().str());
  }
}

GridImage& GridImage::operator+=(const GridImage& other) { return add_scaled(1.0, other); }

GridImage& GridImage::operator-=(const GridImage& other) { return add_scaled(-1.0, other); }

GridImage& GridImage::operator*=(double s) {
  kernels::scale(s, data_);
  return *this;
}

GridImage& GridImage::add_scaled(double alpha, const GridImage& other) {
  require_same_shape(*this, other, "add_scaled");
  kernels::axpy(alpha, other.values(), data_);
  return *this;
}

GridImage operator+(GridImage a, const GridImage& b) { return a += b; }
GridImage operator-(GridImage a, const GridImage& b) { return a -= b; }
GridImage operator*(double s, GridImage a) { return a *= s; }

GridImage lincomb(double a, const GridImage& x, double b, const GridImage& y) {
  require_same_shape(x, y, "lincomb");
  GridImage out(x.shape());
  kernels::lincomb(a, x.values(), b, y.values(), out.values());
  return out;
}

}  // namespace mmfista
