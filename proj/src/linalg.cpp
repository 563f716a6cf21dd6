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

#include "sheetlaw/linalg.hpp"

#include <cblas.h>
#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sheetlaw::linalg {

std::vector<double> sym_eigenvalues_desc(Matrix m, const char* what) {
  if (m.n == 0) return {};
  std::vector<double> w(static_cast<std::size_t>(m.n));
  const lapack_int info = LAPACKE_dsyevd(LAPACK_ROW_MAJOR, 'N', 'U', m.n,
                                         m.a.data(), m.n, w.data());
  if (info != 0) {
    throw std::runtime_error(std::string("eigensolver failed (dsyevd info=") +
                             std::to_string(info) + ") for " + what);
  }
  std::reverse(w.begin(), w.end());
  return w;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.n != b.n) throw std::invalid_argument("matmul: size mismatch");
  Matrix c(a.n);
  cblas_dgemm(CblasRowMajor, CblasNoTrans, CblasNoTrans, a.n, a.n, a.n, 1.0,
              a.a.data(), a.n, b.a.data(), b.n, 0.0, c.a.data(), c.n);
  return c;
}

double trace(const Matrix& m) {
  double t = 0.0;
  for (int i = 0; i < m.n; ++i) t += m(i, i);
  return t;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.n != b.n) throw std::invalid_argument("max_abs_diff: size mismatch");
  double d = 0.0;
  for (std::size_t k = 0; k < a.a.size(); ++k) d = std::max(d, std::fabs(a.a[k] - b.a[k]));
  return d;
}

bool psd_with_shift(Matrix m, double shift) {
  for (int i = 0; i < m.n; ++i) m(i, i) += shift;
  const lapack_int info =
      LAPACKE_dpotrf(LAPACK_ROW_MAJOR, 'U', m.n, m.a.data(), m.n);
  return info == 0;
}

double top_eigenvalue_estimate(const Matrix& m, int iters) {
  std::vector<double> v(static_cast<std::size_t>(m.n),
                        1.0 / std::sqrt(static_cast<double>(m.n)));
  std::vector<double> w(v.size());
  double lam = 0.0;
  for (int it = 0; it < iters; ++it) {
    cblas_dgemv(CblasRowMajor, CblasNoTrans, m.n, m.n, 1.0, m.a.data(), m.n,
                v.data(), 1, 0.0, w.data(), 1);
    double norm = 0.0;
    for (double x : w) norm += x * x;
    norm = std::sqrt(norm);
    if (norm == 0.0) return 0.0;
    lam = norm;
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = w[k] / norm;
  }
  return lam;
}

}  // namespace sheetlaw::linalg
