// Copyright 2026 The sheetlaw Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <vector>

namespace sheetlaw::linalg {

/// Dense square matrix, row-major.
struct Matrix {
  int n = 0;
  std::vector<double> a;

  Matrix() = default;
  explicit Matrix(int n_) : n(n_), a(static_cast<std::size_t>(n_) * n_, 0.0) {}

  double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
  double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
};

/// Eigenvalues of a symmetric matrix, descending. Consumes the input buffer.
/// Throws std::runtime_error (tagged with `what`) if the solver fails.
std::vector<double> sym_eigenvalues_desc(Matrix m, const char* what = "matrix");

/// c = a * b (both n x n).
Matrix matmul(const Matrix& a, const Matrix& b);

double trace(const Matrix& m);

/// max_ij |a_ij - b_ij|
double max_abs_diff(const Matrix& a, const Matrix& b);

/// True iff m + shift*I admits a Cholesky factorization, i.e. the smallest
/// eigenvalue of m is >= -shift. Consumes the input buffer.
bool psd_with_shift(Matrix m, double shift);

/// Largest-eigenvalue estimate by power iteration (deterministic start).
double top_eigenvalue_estimate(const Matrix& m, int iters = 60);

}  // namespace sheetlaw::linalg
