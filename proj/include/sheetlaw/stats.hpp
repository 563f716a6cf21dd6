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

#include <cstddef>
#include <span>
#include <vector>

namespace sheetlaw::stats {

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
};

/// Two-sided two-sample Kolmogorov-Smirnov test (asymptotic p-value).
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

/// Kolmogorov limiting tail Q(lambda) = 2 sum_{k>=1} (-1)^{k-1} e^{-2 k^2 lambda^2}.
double kolmogorov_q(double lambda);

/// p-value for a given two-sample KS distance.
double ks_p_value(double d, std::size_t n1, std::size_t n2);

double pearson_correlation(std::span<const double> x, std::span<const double> y);

/// Unbiased cumulant estimators (k-statistics) of orders 2..4.
struct SampleCumulants {
  double k2 = 0.0;
  double k3 = 0.0;
  double k4 = 0.0;
};
SampleCumulants k_statistics(std::span<const double> x);

/// Empirical Laplace transform mean exp(-u^2 x / 2) and its standard error.
double empirical_laplace(std::span<const double> x, double u);
double empirical_laplace_se(std::span<const double> x, double u);

double mean(std::span<const double> x);
double variance(std::span<const double> x);  // denominator n-1

}  // namespace sheetlaw::stats
