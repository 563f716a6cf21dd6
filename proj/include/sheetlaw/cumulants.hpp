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

#include <cstdint>
#include <vector>

#include "json.hpp"
#include "sheetlaw/linalg.hpp"

namespace sheetlaw {

// A kernel phi on [0,1]^4 sampled at midpoint pairs: values is the
// (n^2) x (n^2) matrix with rows indexed by the t-point and columns by the
// x-point; each 2-D integration carries weight h^2 = 1/n^2 per cell.
struct Kernel4 {
  int n = 0;
  std::vector<double> values;

  int side() const { return n * n; }
  double weight() const { return 1.0 / (static_cast<double>(n) * n); }
  double& at(int t, int x) { return values[static_cast<std::size_t>(t) * side() + x]; }
  double at(int t, int x) const { return values[static_cast<std::size_t>(t) * side() + x]; }
};

// Contraction kernels: phi1 = h^2 M^T M contracts over the first argument
// pair, phi2 = h^2 M M^T over the second. Entries are kernel values at
// midpoint pairs; the associated operators are h^2 * phi1 and h^2 * phi2.
struct ContractionPair {
  int n = 0;
  linalg::Matrix phi1;
  linalg::Matrix phi2;
  double weight() const { return 1.0 / (static_cast<double>(n) * n); }
};

ContractionPair contractions(const Kernel4& phi);

/// Combinatorial coefficient of the m-th cumulant of a double Wiener
/// integral: 2^(m-1) (m-1)!.
double cumulant_coefficient(int m);

/// m-th cumulant c_m * tr(op^m) of I_2 with weighted operator matrix `op`
/// (pass h^2 * contraction for discretized kernels). m >= 2.
double cumulant_m(const linalg::Matrix& op, int m);

struct FubiniReport {
  int n = 0;
  int m_max = 0;
  std::vector<double> traces1;  // tr((h^2 phi1)^m), m = 2..m_max
  std::vector<double> traces2;
  std::vector<double> rel_gap;
  double threshold = 0.0;
  double eig_multiset_gap = 0.0;  // max |lambda1_k - lambda2_k| / lambda_max
  bool pass = false;

  nlohmann::ordered_json to_json() const;
};

/// Discrete stochastic-Fubini check: the cyclic-trace cumulants of the two
/// contractions must agree for m = 2..m_max (exactly, up to round-off).
FubiniReport fubini_check(const Kernel4& phi, int m_max, double tol = 1e-12);

/// The indicator-minus-product kernels phi^(1)..phi^(4) whose swapped-side
/// contractions reproduce the bridge/Kiefer covariances.
Kernel4 corollary2_kernel(int which, int n);

/// Dense i.i.d. N(0,1) kernel, for the randomized Fubini property tests.
Kernel4 random_kernel4(int n, std::uint64_t seed, std::uint64_t stream = 0);

}  // namespace sheetlaw
