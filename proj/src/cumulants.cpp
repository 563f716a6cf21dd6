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

#include "sheetlaw/cumulants.hpp"

#include <cblas.h>

#include <cmath>
#include <stdexcept>

#include "sheetlaw/rng.hpp"

namespace sheetlaw {

ContractionPair contractions(const Kernel4& phi) {
  const int s = phi.side();
  if (s <= 0 || static_cast<int>(phi.values.size()) != s * s)
    throw std::invalid_argument("Kernel4 has inconsistent dimensions");
  ContractionPair out;
  out.n = phi.n;
  out.phi1 = linalg::Matrix(s);
  out.phi2 = linalg::Matrix(s);
  const double w = phi.weight();
  // phi1 = w * M^T M, phi2 = w * M M^T
  cblas_dgemm(CblasRowMajor, CblasTrans, CblasNoTrans, s, s, s, w,
              phi.values.data(), s, phi.values.data(), s, 0.0,
              out.phi1.a.data(), s);
  cblas_dgemm(CblasRowMajor, CblasNoTrans, CblasTrans, s, s, s, w,
              phi.values.data(), s, phi.values.data(), s, 0.0,
              out.phi2.a.data(), s);
  return out;
}

double cumulant_coefficient(int m) {
  if (m < 2) throw std::invalid_argument("cumulant order must be >= 2");
  double c = 1.0;
  for (int k = 2; k < m; ++k) c *= k;  // (m-1)!
  return std::ldexp(c, m - 1);         // 2^(m-1) (m-1)!
}

double cumulant_m(const linalg::Matrix& op, int m) {
  if (m < 2) throw std::invalid_argument("cumulant order must be >= 2");
  linalg::Matrix power = op;
  for (int k = 2; k <= m; ++k) power = linalg::matmul(power, op);
  return cumulant_coefficient(m) * linalg::trace(power);
}

namespace {

std::vector<double> trace_powers(const linalg::Matrix& op, int m_max) {
  std::vector<double> tr;
  linalg::Matrix power = linalg::matmul(op, op);
  tr.push_back(linalg::trace(power));
  for (int m = 3; m <= m_max; ++m) {
    power = linalg::matmul(power, op);
    tr.push_back(linalg::trace(power));
  }
  return tr;
}

linalg::Matrix scaled_matrix(const linalg::Matrix& m, double f) {
  linalg::Matrix out = m;
  for (double& v : out.a) v *= f;
  return out;
}

}  // namespace

FubiniReport fubini_check(const Kernel4& phi, int m_max, double tol) {
  if (m_max < 2) throw std::invalid_argument("m_max must be >= 2");
  const ContractionPair pair = contractions(phi);
  const double w = pair.weight();
  const linalg::Matrix op1 = scaled_matrix(pair.phi1, w);
  const linalg::Matrix op2 = scaled_matrix(pair.phi2, w);

  FubiniReport rep;
  rep.n = phi.n;
  rep.m_max = m_max;
  rep.threshold = tol;
  rep.traces1 = trace_powers(op1, m_max);
  rep.traces2 = trace_powers(op2, m_max);
  rep.pass = true;
  for (std::size_t k = 0; k < rep.traces1.size(); ++k) {
    const double denom =
        std::max(std::max(std::fabs(rep.traces1[k]), std::fabs(rep.traces2[k])), 1e-300);
    rep.rel_gap.push_back(std::fabs(rep.traces1[k] - rep.traces2[k]) / denom);
    if (rep.rel_gap.back() > tol) rep.pass = false;
  }

  // Gram duality: nonzero spectra of the two contractions coincide.
  auto e1 = linalg::sym_eigenvalues_desc(op1, "phi1 operator");
  auto e2 = linalg::sym_eigenvalues_desc(op2, "phi2 operator");
  const double top = std::max({e1.empty() ? 0.0 : e1[0], e2.empty() ? 0.0 : e2[0], 1e-300});
  double gap = 0.0;
  for (std::size_t k = 0; k < e1.size(); ++k)
    gap = std::max(gap, std::fabs(e1[k] - e2[k]));
  rep.eig_multiset_gap = gap / top;
  return rep;
}

nlohmann::ordered_json FubiniReport::to_json() const {
  nlohmann::ordered_json j;
  j["n"] = n;
  j["m_max"] = m_max;
  j["threshold"] = threshold;
  j["pass"] = pass;
  j["eig_multiset_gap"] = eig_multiset_gap;
  auto arr = nlohmann::ordered_json::array();
  for (std::size_t k = 0; k < traces1.size(); ++k) {
    nlohmann::ordered_json row;
    row["m"] = static_cast<int>(k) + 2;
    row["trace_phi1"] = traces1[k];
    row["trace_phi2"] = traces2[k];
    row["rel_gap"] = rel_gap[k];
    arr.push_back(row);
  }
  j["orders"] = arr;
  return j;
}

Kernel4 corollary2_kernel(int which, int n) {
  if (which < 1 || which > 4) throw std::invalid_argument("which must be 1..4");
  if (n < 2) throw std::invalid_argument("n must be >= 2");
  Kernel4 phi;
  phi.n = n;
  phi.values.resize(static_cast<std::size_t>(n) * n * n * n);
  const int s = n * n;
  for (int t = 0; t < s; ++t) {
    const double t1 = (t / n + 0.5) / n;
    const double t2 = (t % n + 0.5) / n;
    for (int x = 0; x < s; ++x) {
      const double x1 = (x / n + 0.5) / n;
      const double x2 = (x % n + 0.5) / n;
      const double i1 = x1 <= t1 ? 1.0 : 0.0;
      const double i2 = x2 <= t2 ? 1.0 : 0.0;
      double v = i1 * i2;
      switch (which) {
        case 1: v -= t1 * t2; break;
        case 2: v += -t1 * i2 - t2 * i1 + t1 * t2; break;
        case 3: v -= t1 * i2; break;
        case 4: v -= t2 * i1; break;
      }
      phi.at(t, x) = v;
    }
  }
  return phi;
}

Kernel4 random_kernel4(int n, std::uint64_t seed, std::uint64_t stream) {
  if (n < 2) throw std::invalid_argument("n must be >= 2");
  Kernel4 phi;
  phi.n = n;
  phi.values.resize(static_cast<std::size_t>(n) * n * n * n);
  rng::fill_normals(phi.values, seed, stream);
  return phi;
}

}  // namespace sheetlaw
