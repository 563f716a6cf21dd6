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

#include "sheetlaw/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sheetlaw::stats {

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("KS test needs nonempty samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / na -
                              static_cast<double>(j) / nb));
  }
  KsResult r;
  r.statistic = d;
  r.n1 = a.size();
  r.n2 = b.size();
  r.p_value = ks_p_value(d, r.n1, r.n2);
  return r;
}

double kolmogorov_q(double lambda) {
  if (lambda <= 0.0) return 1.0;
  double q = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 101; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    q += sign * term;
    sign = -sign;
    if (term < 1e-18) break;
  }
  return std::clamp(2.0 * q, 0.0, 1.0);
}

double ks_p_value(double d, std::size_t n1, std::size_t n2) {
  const double ne = static_cast<double>(n1) * static_cast<double>(n2) /
                    (static_cast<double>(n1) + static_cast<double>(n2));
  const double rt = std::sqrt(ne);
  // finite-sample correction of Stephens (as in Numerical Recipes)
  return kolmogorov_q((rt + 0.12 + 0.11 / rt) * d);
}

double pearson_correlation(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("correlation needs two equal-length samples");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  const double denom = std::sqrt(sxx * syy);
  return denom > 0.0 ? sxy / denom : 0.0;
}

SampleCumulants k_statistics(std::span<const double> x) {
  const double n = static_cast<double>(x.size());
  if (x.size() < 4) throw std::invalid_argument("k-statistics need >= 4 samples");
  double m = mean(x);
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : x) {
    const double d = v - m;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  SampleCumulants k;
  k.k2 = n / (n - 1.0) * m2;
  k.k3 = n * n / ((n - 1.0) * (n - 2.0)) * m3;
  k.k4 = n * n *
         ((n + 1.0) * m4 - 3.0 * (n - 1.0) * m2 * m2) /
         ((n - 1.0) * (n - 2.0) * (n - 3.0));
  return k;
}

double empirical_laplace(std::span<const double> x, double u) {
  double acc = 0.0;
  const double h = 0.5 * u * u;
  for (double v : x) acc += std::exp(-h * v);
  return acc / static_cast<double>(x.size());
}

double empirical_laplace_se(std::span<const double> x, double u) {
  const double h = 0.5 * u * u;
  double s1 = 0.0, s2 = 0.0;
  for (double v : x) {
    const double e = std::exp(-h * v);
    s1 += e;
    s2 += e * e;
  }
  const double n = static_cast<double>(x.size());
  const double m = s1 / n;
  const double var = std::max(0.0, s2 / n - m * m) * n / (n - 1.0);
  return std::sqrt(var / n);
}

double mean(std::span<const double> x) {
  if (x.empty()) throw std::invalid_argument("mean of empty sample");
  double acc = 0.0;
  for (double v : x) acc += v;
  return acc / static_cast<double>(x.size());
}

double variance(std::span<const double> x) {
  const double m = mean(x);
  double acc = 0.0;
  for (double v : x) acc += (v - m) * (v - m);
  return acc / (static_cast<double>(x.size()) - 1.0);
}

}  // namespace sheetlaw::stats
