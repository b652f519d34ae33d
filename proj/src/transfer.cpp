#include "mmfista/transfer.hpp"

#include <cmath>

#include "mmfista/kernels.hpp"

namespace mmfista {

TransferPair::TransferPair(const WaveletBasis& basis, Shape fine, double eta) : fine_(fine), eta_(eta) {
  if (!(eta > 0.0)) throw ParameterError("TransferPair: eta must be positive");
  if (!is_power_of_two(fine.rows) || !is_power_of_two(fine.cols) || fine.rows < 2 || fine.cols < 2) {
    throw DimensionError("TransferPair: fine shape must be a power of two >= 2, got " + fine.str());
  }
  rv_ = basis.lowpass_matrix(fine.rows);
  rh_ = basis.lowpass_matrix(fine.cols);
  rv_t_ = rv_.transpose();
  rh_t_ = rh_.transpose();
}

GridImage TransferPair::restrict(const GridImage& x) const {
  if (x.shape() != fine_) throw DimensionError("restrict: expected " + fine_.str() + ", got " + x.shape().str());
  const Shape coarse = coarse_shape();
  GridImage tmp(Shape{coarse.rows, fine_.cols});
  kernels::apply_vertical(rv_, x.values(), fine_.cols, tmp.values());
  GridImage out(coarse);
  kernels::apply_horizontal(rh_, tmp.values(), coarse.rows, out.values());
  return out;
}

GridImage TransferPair::prolong(const GridImage& y) const {
  const Shape coarse = coarse_shape();
  if (y.shape() != coarse) throw DimensionError("prolong: expected " + coarse.str() + ", got " + y.shape().str());
  GridImage tmp(Shape{fine_.rows, coarse.cols});
  kernels::apply_vertical(rv_t_, y.values(), coarse.cols, tmp.values());
  GridImage out(fine_);
  kernels::apply_horizontal(rh_t_, tmp.values(), fine_.rows, out.values());
  out *= eta_;
  return out;
}

namespace {

class RestrictMap final : public LinearMap {
 public:
  explicit RestrictMap(TransferPair t) : t_(std::move(t)) {}
  Shape input_shape() const override { return t_.fine_shape(); }
  Shape output_shape() const override { return t_.coarse_shape(); }
  GridImage apply(const GridImage& x) const override { return t_.restrict(x); }
  GridImage apply_adjoint(const GridImage& y) const override {
    GridImage out = t_.prolong(y);
    out *= 1.0 / t_.eta();
    return out;
  }

 private:
  TransferPair t_;
};

class ProlongMap final : public LinearMap {
 public:
  explicit ProlongMap(TransferPair t) : t_(std::move(t)) {}
  Shape input_shape() const override { return t_.coarse_shape(); }
  Shape output_shape() const override { return t_.fine_shape(); }
  GridImage apply(const GridImage& y) const override { return t_.prolong(y); }
  GridImage apply_adjoint(const GridImage& x) const override {
    GridImage out = t_.restrict(x);
    out *= t_.eta();
    return out;
  }

 private:
  TransferPair t_;
};

}  // namespace

std::shared_ptr<const LinearMap> TransferPair::restrict_map() const {
  return std::make_shared<RestrictMap>(*this);
}

std::shared_ptr<const LinearMap> TransferPair::prolong_map() const {
  return std::make_shared<ProlongMap>(*this);
}

GridImage restrict(const TransferPair& t, const GridImage& x_fine) { return t.restrict(x_fine); }
GridImage prolong(const TransferPair& t, const GridImage& x_coarse) { return t.prolong(x_coarse); }

SeparableBlur coarsen_blur(const SeparableBlur& fine, const TransferPair& t) {
  if (fine.input_shape() != t.fine_shape()) {
    throw DimensionError("coarsen_blur: blur shape " + fine.input_shape().str() +
                         " does not match transfer fine shape " + t.fine_shape().str());
  }
  SparseMatrix v = multiply(multiply(t.restrict_vertical(), fine.vertical()), t.prolong_vertical());
  SparseMatrix h = multiply(multiply(t.restrict_horizontal(), fine.horizontal()), t.prolong_horizontal());
  return SeparableBlur(t.coarse_shape(), std::move(v), std::move(h));
}

}  // namespace mmfista
