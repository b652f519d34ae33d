#include "mmfista/wavelet.hpp"

#include <array>
#include <bit>
#include <cmath>

#include "mmfista/kernels.hpp"

namespace mmfista {

namespace {

// Decomposition low-pass filters. Values start from the PyWavelets 1.8.0
// tables and are Newton-refined in extended precision on the orthonormality
// and vanishing-moment equations (the tables are only accurate to ~1e-12).
const std::vector<double> kSym2 = {-0.12940952255126037, 0.2241438680420134, 0.8365163037378079,
                                   0.48296291314453416};
const std::vector<double> kSym3 = {0.03522629188570953, -0.08544127388202666, -0.13501102001025458,
                                   0.45987750211849154, 0.8068915093110925,   0.33267055295008263};
const std::vector<double> kSym4 = {-0.07576571478950221, -0.029635527646002493, 0.497618667632775,
                                   0.8037387518051321,   0.29785779560530606,   -0.09921954357663353,
                                   -0.012603967262031304, 0.032223100604051466};
const std::vector<double> kSym5 = {0.027333068344998768, 0.02951949092570626,  -0.039134249302313844,
                                   0.19939753397685558,  0.7234076904040407,   0.633978963456792,
                                   0.01660210576451085,  -0.17532808990805623, -0.021101834024689042,
                                   0.019538882735249827};
const std::vector<double> kSym10 = {
    0.0007701598091144599,  9.563267072285273e-05,  -0.00864129927702215,  -0.0014653825813046104,
    0.04592723923109151,    0.011609893903711319,   -0.1594942788849106,   -0.07088053578323157,
    0.4716906669384429,     0.7695100370210979,     0.3838267610670763,    -0.035536740473819585,
    -0.03199005688242811,   0.049994972077375154,   0.00576491203358115,   -0.02035493981231111,
    -0.0008043589320164513, 0.004593173585311792,   5.703608361849501e-05, -0.00045932942100465206};

SparseMatrix periodic_analysis(std::size_t n, const std::vector<double>& lo, const std::vector<double>& hi,
                               bool low_only) {
  if (n < 2 || n % 2 != 0) throw DimensionError("wavelet analysis needs an even length >= 2");
  const std::size_t half = n / 2;
  SparseMatrix m(low_only ? half : n, n);
  std::vector<double> row(n, 0.0);
  auto emit = [&](const std::vector<double>& taps, std::size_t i) {
    for (std::size_t k = 0; k < taps.size(); ++k) row[(2 * i + k) % n] += taps[k];
    for (std::size_t j = 0; j < n; ++j) {
      if (row[j] != 0.0) m.push(j, row[j]);
      row[j] = 0.0;
    }
    m.end_row();
  };
  for (std::size_t i = 0; i < half; ++i) emit(lo, i);
  if (!low_only) {
    for (std::size_t i = 0; i < half; ++i) emit(hi, i);
  }
  return m;
}

double orthogonality_defect(const SparseMatrix& m) {
  const auto dense = multiply(m, m.transpose()).to_dense();
  double worst = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.rows(); ++j) {
      const double expected = i == j ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(dense[i * m.rows() + j] - expected));
    }
  }
  return worst;
}

}  // namespace

WaveletBasis::WaveletBasis(std::string family_name, std::vector<double> lowpass)
    : name_(std::move(family_name)), lowpass_(std::move(lowpass)) {
  const std::size_t len = lowpass_.size();
  if (len < 2 || len % 2 != 0) throw ParameterError("WaveletBasis: filter length must be even");
  highpass_.resize(len);
  for (std::size_t k = 0; k < len; ++k) {
    const double sign = (k % 2 == 0) ? -1.0 : 1.0;
    highpass_[k] = sign * lowpass_[len - 1 - k];
  }
  // Round-trip check at a length where the filters do not wrap, and at a
  // short length where they do.
  for (std::size_t n : {std::bit_ceil(2 * len), std::size_t{2}}) {
    if (orthogonality_defect(periodic_analysis(n, lowpass_, highpass_, false)) > 1e-12) {
      throw ParameterError("WaveletBasis '" + name_ + "' is not orthonormal");
    }
  }
}

WaveletBasis WaveletBasis::haar() { return WaveletBasis("haar", {M_SQRT1_2, M_SQRT1_2}); }

WaveletBasis WaveletBasis::symlet(int vanishing_moments) {
  switch (vanishing_moments) {
    case 2: return WaveletBasis("sym2", kSym2);
    case 3: return WaveletBasis("sym3", kSym3);
    case 4: return WaveletBasis("sym4", kSym4);
    case 5: return WaveletBasis("sym5", kSym5);
    case 10: return WaveletBasis("sym10", kSym10);
    default:
      throw ParameterError("WaveletBasis::symlet: no filter table for sym" +
                           std::to_string(vanishing_moments));
  }
}

WaveletBasis WaveletBasis::from_name(const std::string& name) {
  if (name == "haar") return haar();
  if (name.rfind("sym", 0) == 0) {
    int moments = 0;
    try {
      moments = std::stoi(name.substr(3));
    } catch (const std::logic_error&) {
      throw ParameterError("unknown wavelet family '" + name + "'");
    }
    return symlet(moments);
  }
  throw ParameterError("unknown wavelet family '" + name + "'");
}

SparseMatrix WaveletBasis::analysis_matrix(std::size_t n) const {
  return periodic_analysis(n, lowpass_, highpass_, false);
}

SparseMatrix WaveletBasis::lowpass_matrix(std::size_t n) const {
  return periodic_analysis(n, lowpass_, highpass_, true);
}

int max_dwt_levels(Shape shape) {
  return std::countr_zero(std::min(shape.rows, shape.cols));
}

WaveletTransform::WaveletTransform(const WaveletBasis& basis, Shape shape, int levels)
    : basis_(basis), shape_(shape), levels_(levels) {
  if (!is_power_of_two(shape.rows) || !is_power_of_two(shape.cols)) {
    throw DimensionError("WaveletTransform: shape must have power-of-two extents");
  }
  if (levels < 0 || levels > max_dwt_levels(shape)) {
    throw ParameterError("WaveletTransform: " + std::to_string(levels) + " levels too deep for " +
                         shape.str());
  }
  Shape block = shape;
  for (int l = 0; l < levels; ++l) {
    Level level;
    level.block = block;
    level.rows_analysis = basis_.analysis_matrix(block.rows);
    level.cols_analysis = basis_.analysis_matrix(block.cols);
    level.rows_synthesis = level.rows_analysis.transpose();
    level.cols_synthesis = level.cols_analysis.transpose();
    plan_.push_back(std::move(level));
    block = block.halved();
  }
}

namespace {

GridImage extract(const GridImage& x, Shape block) {
  if (block == x.shape()) return x;
  GridImage out(block);
  for (std::size_t r = 0; r < block.rows; ++r) {
    for (std::size_t c = 0; c < block.cols; ++c) out(r, c) = x(r, c);
  }
  return out;
}

void insert(GridImage& x, const GridImage& block) {
  for (std::size_t r = 0; r < block.rows(); ++r) {
    for (std::size_t c = 0; c < block.cols(); ++c) x(r, c) = block(r, c);
  }
}

}  // namespace

GridImage WaveletTransform::forward(const GridImage& x) const {
  if (x.shape() != shape_) throw DimensionError("WaveletTransform::forward: expected " + shape_.str());
  GridImage out = x;
  for (const Level& level : plan_) {
    GridImage block = extract(out, level.block);
    GridImage tmp(level.block);
    kernels::apply_horizontal(level.cols_analysis, block.values(), level.block.rows, tmp.values());
    kernels::apply_vertical(level.rows_analysis, tmp.values(), level.block.cols, block.values());
    insert(out, block);
  }
  return out;
}

GridImage WaveletTransform::inverse(const GridImage& c) const {
  if (c.shape() != shape_) throw DimensionError("WaveletTransform::inverse: expected " + shape_.str());
  GridImage out = c;
  for (auto it = plan_.rbegin(); it != plan_.rend(); ++it) {
    const Level& level = *it;
    GridImage block = extract(out, level.block);
    GridImage tmp(level.block);
    kernels::apply_vertical(level.rows_synthesis, block.values(), level.block.cols, tmp.values());
    kernels::apply_horizontal(level.cols_synthesis, tmp.values(), level.block.rows, block.values());
    insert(out, block);
  }
  return out;
}

GridImage dwt_forward(const WaveletBasis& basis, const GridImage& x, int levels) {
  return WaveletTransform(basis, x.shape(), levels).forward(x);
}

GridImage dwt_inverse(const WaveletBasis& basis, const GridImage& c, int levels) {
  return WaveletTransform(basis, c.shape(), levels).inverse(c);
}

}  // namespace mmfista
