#include <omp.h>

#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include "doctest.h"
#include "mmfista/blur.hpp"
#include "mmfista/kernels.hpp"
#include "mmfista/wavelet.hpp"

using namespace mmfista;

namespace {

std::vector<double> random_vector(std::size_t n, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> dist;
  std::vector<double> v(n);
  for (auto& x : v) x = dist(gen);
  return v;
}

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::memcmp(&a[i], &b[i], sizeof(double)) != 0) return false;
  }
  return true;
}

const std::size_t kSizes[] = {0, 1, 7, 4096, 4097, 8192, 20000, 65536 + 3};

}  // namespace

TEST_CASE("reductions agree bitwise between serial and OpenMP for any thread count") {
  for (std::size_t n : kSizes) {
    const auto x = random_vector(n, 1), y = random_vector(n, 2);
    const double ref_dot = kernels::serial::dot(x, y);
    const double ref_abs = kernels::serial::abs_sum(x);
    for (int threads : {1, 2, 3, 4}) {
      omp_set_num_threads(threads);
      CHECK(kernels::omp::dot(x, y) == ref_dot);
      CHECK(kernels::omp::abs_sum(x) == ref_abs);
    }
  }
  omp_set_num_threads(omp_get_num_procs());
}

TEST_CASE("blocked dot product is accurate") {
  const auto x = random_vector(100000, 3), y = random_vector(100000, 4);
  long double exact = 0.0L;
  for (std::size_t i = 0; i < x.size(); ++i) exact += static_cast<long double>(x[i]) * y[i];
  CHECK(kernels::serial::dot(x, y) == doctest::Approx(static_cast<double>(exact)).epsilon(1e-12));
}

TEST_CASE("elementwise kernels agree bitwise") {
  for (std::size_t n : kSizes) {
    const auto x = random_vector(n, 5), y = random_vector(n, 6);
    std::vector<double> a(n), b(n);

    kernels::serial::lincomb(0.3, x, -1.7, y, a);
    kernels::omp::lincomb(0.3, x, -1.7, y, b);
    CHECK(bitwise_equal(a, b));

    a = y;
    b = y;
    kernels::serial::axpy(2.5, x, a);
    kernels::omp::axpy(2.5, x, b);
    CHECK(bitwise_equal(a, b));

    kernels::serial::scale(-0.125, a);
    kernels::omp::scale(-0.125, b);
    CHECK(bitwise_equal(a, b));

    kernels::serial::soft_threshold(x, 0.4, a);
    kernels::omp::soft_threshold(x, 0.4, b);
    CHECK(bitwise_equal(a, b));
  }
}

TEST_CASE("soft threshold kernel matches its definition") {
  const std::vector<double> v = {-2.0, -0.5, 0.0, 0.3, 1.0, 5.0};
  std::vector<double> out(v.size());
  kernels::serial::soft_threshold(v, 0.5, out);
  const std::vector<double> expected = {-1.5, 0.0, 0.0, 0.0, 0.5, 4.5};
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(out[i] == doctest::Approx(expected[i]));
}

TEST_CASE("separable applications agree bitwise and match a dense product") {
  for (std::size_t n : {8u, 64u, 256u}) {
    const SparseMatrix blur = neumann_blur_factor(n, make_gaussian_psf(11, 2.0));
    const SparseMatrix lowpass = WaveletBasis::symlet(4).lowpass_matrix(n);
    const std::size_t other = 32;
    const auto img = random_vector(n * other, 7);
    const auto img_t = random_vector(other * n, 8);

    for (const SparseMatrix* m : {&blur, &lowpass}) {
      std::vector<double> a(m->rows() * other), b(m->rows() * other);
      kernels::serial::apply_vertical(*m, img, other, a);
      kernels::omp::apply_vertical(*m, img, other, b);
      CHECK(bitwise_equal(a, b));

      const auto dense = m->to_dense();
      double err = 0.0;
      for (std::size_t i = 0; i < m->rows(); ++i) {
        for (std::size_t c = 0; c < other; ++c) {
          double s = 0.0;
          for (std::size_t j = 0; j < m->cols(); ++j) s += dense[i * m->cols() + j] * img[j * other + c];
          err = std::max(err, std::abs(s - a[i * other + c]));
        }
      }
      CHECK(err < 1e-13);

      std::vector<double> h1(other * m->rows()), h2(other * m->rows());
      kernels::serial::apply_horizontal(*m, img_t, other, h1);
      kernels::omp::apply_horizontal(*m, img_t, other, h2);
      CHECK(bitwise_equal(h1, h2));

      err = 0.0;
      for (std::size_t r = 0; r < other; ++r) {
        for (std::size_t i = 0; i < m->rows(); ++i) {
          double s = 0.0;
          for (std::size_t j = 0; j < m->cols(); ++j) s += img_t[r * n + j] * dense[i * m->cols() + j];
          err = std::max(err, std::abs(s - h1[r * m->rows() + i]));
        }
      }
      CHECK(err < 1e-13);
    }
  }
}
