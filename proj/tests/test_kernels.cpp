// Copyright 2026 The topicmatch Authors
// SPDX-License-Identifier: Apache-2.0

#include "topicmatch/nn/kernels.hpp"

#include <vector>

#include "doctest.h"
#include "topicmatch/rng.hpp"

using namespace topicmatch;
namespace kernels = topicmatch::nn::kernels;

namespace {

std::vector<double> random_matrix(std::size_t n, Rng& rng) {
  std::vector<double> m(n);
  for (auto& x : m) x = rng.uniform(-1.0, 1.0);
  return m;
}

}  // namespace

TEST_CASE("gemm matches hand results") {
  // identity * A = A
  std::vector<double> eye{1, 0, 0, 1};
  std::vector<double> a{1, 2, 3, 4};
  std::vector<double> c(4, -1.0);
  kernels::gemm_serial(eye.data(), a.data(), c.data(), 2, 2, 2, false, false, 0.0);
  CHECK(c == std::vector<double>{1, 2, 3, 4});

  // selector row [[1,0]] x [[2],[5]] = [[2]]
  std::vector<double> sel{1, 0};
  std::vector<double> col{2, 5};
  std::vector<double> out(1, 0.0);
  kernels::gemm_serial(sel.data(), col.data(), out.data(), 1, 1, 2, false, false, 0.0);
  CHECK(out[0] == doctest::Approx(2.0));
}

TEST_CASE("parallel gemm is bit-identical to the serial reference") {
  Rng rng(77);
  for (int iter = 0; iter < 10; ++iter) {
    const std::size_t m = 1 + rng.below(40), k = 1 + rng.below(40), n = 1 + rng.below(40);
    auto a = random_matrix(m * k, rng);
    auto b = random_matrix(k * n, rng);
    for (bool ta : {false, true}) {
      for (bool tb : {false, true}) {
        std::vector<double> c_ref(m * n, 0.5), c_omp(m * n, 0.5);
        kernels::gemm_serial(a.data(), b.data(), c_ref.data(), m, n, k, ta, tb, 1.0);
        kernels::gemm_omp(a.data(), b.data(), c_omp.data(), m, n, k, ta, tb, 1.0);
        CHECK(c_ref == c_omp);
      }
    }
  }
}

TEST_CASE("gemm transpose flags agree with explicit transposition") {
  Rng rng(5);
  const std::size_t m = 3, k = 4, n = 2;
  auto a = random_matrix(m * k, rng);   // [m x k]
  auto b = random_matrix(k * n, rng);   // [k x n]
  std::vector<double> at(k * m), bt(n * k);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t p = 0; p < k; ++p) at[p * m + i] = a[i * k + p];
  for (std::size_t p = 0; p < k; ++p)
    for (std::size_t j = 0; j < n; ++j) bt[j * k + p] = b[p * n + j];

  std::vector<double> want(m * n, 0.0), got(m * n, 0.0);
  kernels::gemm_serial(a.data(), b.data(), want.data(), m, n, k, false, false, 0.0);

  kernels::gemm_serial(at.data(), b.data(), got.data(), m, n, k, true, false, 0.0);
  CHECK(got == want);
  kernels::gemm_serial(a.data(), bt.data(), got.data(), m, n, k, false, true, 0.0);
  CHECK(got == want);
  kernels::gemm_serial(at.data(), bt.data(), got.data(), m, n, k, true, true, 0.0);
  CHECK(got == want);
}

TEST_CASE("softmax rows: symmetry, stability, closed form") {
  std::vector<double> r1{0.0, 0.0};
  kernels::softmax_row(r1.data(), 2);
  CHECK(r1[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r1[1] == doctest::Approx(0.5).epsilon(1e-12));

  std::vector<double> r2{1000.0, 1000.0};
  kernels::softmax_row(r2.data(), 2);
  CHECK(r2[0] == doctest::Approx(0.5).epsilon(1e-12));

  std::vector<double> r3{0.0, std::log(3.0)};
  kernels::softmax_row(r3.data(), 2);
  CHECK(r3[0] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(r3[1] == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("softmax rows sum to one for large-magnitude inputs") {
  Rng rng(123);
  for (int iter = 0; iter < 200; ++iter) {
    const std::size_t n = 1 + rng.below(16);
    std::vector<double> row(n);
    for (auto& x : row) x = rng.uniform(-1e6, 1e6);
    kernels::softmax_row(row.data(), n);
    double sum = 0;
    for (double x : row) sum += x;
    CHECK(std::abs(sum - 1.0) < 1e-9);
  }
}

TEST_CASE("layer_norm rows") {
  std::vector<double> gain{1, 1}, bias{0, 0};

  // constant row: variance absorbed by eps, output zero
  std::vector<double> x1{3, 3}, y1(2);
  kernels::layer_norm_row(x1.data(), y1.data(), gain.data(), bias.data(), 2, 1e-5,
                          static_cast<double*>(nullptr), static_cast<double*>(nullptr));
  CHECK(y1[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(y1[1] == doctest::Approx(0.0).epsilon(1e-12));

  // two-point normalization
  std::vector<double> x2{1, 3}, y2(2);
  kernels::layer_norm_row(x2.data(), y2.data(), gain.data(), bias.data(), 2, 1e-5,
                          static_cast<double*>(nullptr), static_cast<double*>(nullptr));
  CHECK(y2[0] == doctest::Approx(-1.0).epsilon(1e-4));
  CHECK(y2[1] == doctest::Approx(1.0).epsilon(1e-4));
}
