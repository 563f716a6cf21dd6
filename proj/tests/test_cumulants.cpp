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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "sheetlaw/cumulants.hpp"
#include "sheetlaw/kernels.hpp"
#include "sheetlaw/rng.hpp"
#include "sheetlaw/stats.hpp"

using namespace sheetlaw;

TEST_CASE("contractions of the identity kernel") {
  Kernel4 phi;
  phi.n = 2;
  phi.values.assign(16, 0.0);
  for (int i = 0; i < 4; ++i) phi.at(i, i) = 1.0;
  const ContractionPair p = contractions(phi);
  const double w = 0.25;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      CHECK(p.phi1(i, j) == doctest::Approx(i == j ? w : 0.0));
      CHECK(p.phi2(i, j) == doctest::Approx(i == j ? w : 0.0));
    }
}

TEST_CASE("contractions are symmetric Gram matrices") {
  const Kernel4 phi = random_kernel4(4, 17);
  const ContractionPair p = contractions(phi);
  for (int i = 0; i < p.phi1.n; ++i)
    for (int j = 0; j < i; ++j) {
      CHECK(std::fabs(p.phi1(i, j) - p.phi1(j, i)) < 1e-14);
      CHECK(std::fabs(p.phi2(i, j) - p.phi2(j, i)) < 1e-14);
    }
  auto eigs = linalg::sym_eigenvalues_desc(p.phi1, "phi1");
  CHECK(eigs.back() > -1e-12 * eigs.front());
}

TEST_CASE("cumulant coefficient 2^(m-1) (m-1)!") {
  CHECK(cumulant_coefficient(2) == 2.0);
  CHECK(cumulant_coefficient(3) == 8.0);
  CHECK(cumulant_coefficient(4) == 48.0);
  CHECK(cumulant_coefficient(6) == 32.0 * 120.0);
  CHECK_THROWS_AS(cumulant_coefficient(1), std::invalid_argument);
}

TEST_CASE("cumulant_m on small operators") {
  linalg::Matrix d(2);
  d(0, 0) = 1.0;
  d(1, 1) = 1.0;
  // chi-square variance oracle: Var(sum (xi^2 - 1)) = 2 * 2
  CHECK(cumulant_m(d, 2) == doctest::Approx(4.0));
  linalg::Matrix r(1);
  r(0, 0) = 0.7;
  for (int m = 2; m <= 5; ++m) {
    CHECK(cumulant_m(r, m) ==
          doctest::Approx(cumulant_coefficient(m) * std::pow(0.7, m)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(cumulant_m(d, 1), std::invalid_argument);
}

TEST_CASE("variance cumulants are nonnegative for random kernels") {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const Kernel4 phi = random_kernel4(3, 100 + s);
    const ContractionPair p = contractions(phi);
    linalg::Matrix op = p.phi1;
    for (double& v : op.a) v *= p.weight();
    CHECK(cumulant_m(op, 2) >= 0.0);
  }
}

TEST_CASE("rank-one cumulants match Monte Carlo k-statistics") {
  // lambda (xi^2 - 1) has cumulants 2^(m-1) (m-1)! lambda^m; batched
  // k-statistics give an unbiased estimate and its standard error
  const double lambda = 0.7;
  const int batches = 50, per_batch = 20000;
  double k2s = 0, k3s = 0, k4s = 0, k2ss = 0, k3ss = 0, k4ss = 0;
  for (int b = 0; b < batches; ++b) {
    std::vector<double> x(per_batch);
    for (int i = 0; i < per_batch; ++i) {
      const double z = rng::normal(314, b, static_cast<std::uint64_t>(i));
      x[i] = lambda * (z * z - 1.0);
    }
    const auto k = stats::k_statistics(x);
    k2s += k.k2; k3s += k.k3; k4s += k.k4;
    k2ss += k.k2 * k.k2; k3ss += k.k3 * k.k3; k4ss += k.k4 * k.k4;
  }
  auto band = [&](double sum, double sumsq) {
    const double m = sum / batches;
    const double var = (sumsq / batches - m * m) * batches / (batches - 1.0);
    return 3.0 * std::sqrt(var / batches);
  };
  linalg::Matrix r(1);
  r(0, 0) = lambda;
  CHECK(std::fabs(k2s / batches - cumulant_m(r, 2)) < band(k2s, k2ss));
  CHECK(std::fabs(k3s / batches - cumulant_m(r, 3)) < band(k3s, k3ss));
  CHECK(std::fabs(k4s / batches - cumulant_m(r, 4)) < band(k4s, k4ss));
}

TEST_CASE("fubini cyclic traces agree for random kernels") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const FubiniReport rep = fubini_check(random_kernel4(8, 55, s), 6);
    CHECK(rep.pass);
    for (double g : rep.rel_gap) CHECK(g <= 1e-12);
    CHECK(rep.eig_multiset_gap <= 1e-10);
  }
}

TEST_CASE("zero kernel has zero cumulants") {
  Kernel4 phi;
  phi.n = 4;
  phi.values.assign(static_cast<std::size_t>(16) * 16, 0.0);
  const FubiniReport rep = fubini_check(phi, 4);
  CHECK(rep.pass);
  for (double t : rep.traces1) CHECK(t == 0.0);
}

TEST_CASE("corollary-2 kernel values") {
  const Kernel4 phi1 = corollary2_kernel(1, 4);
  // t = (0.625, 0.625), x = (0.375, 0.375): indicator 1, product 0.390625
  const int t_idx = 2 * 4 + 2, x_idx = 1 * 4 + 1;
  CHECK(phi1.at(t_idx, x_idx) == doctest::Approx(1.0 - 0.625 * 0.625));
  // x beyond t kills the indicator
  CHECK(phi1.at(x_idx, t_idx) == doctest::Approx(-0.375 * 0.375));
  const Kernel4 phi2 = corollary2_kernel(2, 4);
  // four-term formula at t=(0.875,0.875), x=(0.625,0.625)
  const int t2 = 3 * 4 + 3, x2 = 2 * 4 + 2;
  CHECK(phi2.at(t2, x2) ==
        doctest::Approx(1.0 - 0.875 - 0.875 + 0.875 * 0.875));
  CHECK_THROWS_AS(corollary2_kernel(5, 4), std::invalid_argument);
}

TEST_CASE("phi2 contraction reproduces the covariance kernels") {
  const int n = 16;
  const double tol = 1.0 / n;  // indicator quadrature is O(1/n)
  const struct {
    int which;
    ProcessKind kind;
  } cases[] = {{1, ProcessKind::BridgeB},
               {2, ProcessKind::TiedDownB0},
               {3, ProcessKind::Kiefer1},
               {4, ProcessKind::Kiefer2}};
  for (const auto& c : cases) {
    const Kernel4 phi = corollary2_kernel(c.which, n);
    const ContractionPair p = contractions(phi);
    const CovKernel k(c.kind);
    // spot-check a few kernel entries and the full diagonal trace
    double tr = 0.0;
    for (int t = 0; t < phi.side(); ++t) tr += p.phi2(t, t);
    tr *= phi.weight();
    double exact_tr = 0.0;
    for (int t = 0; t < phi.side(); ++t) {
      const Point2 pt{(t / n + 0.5) / n, (t % n + 0.5) / n};
      exact_tr += k(pt, pt);
    }
    exact_tr *= phi.weight();
    CHECK(std::fabs(tr - exact_tr) < tol);
    for (int t : {0, 5, 100, 200}) {
      for (int s : {3, 77, 150}) {
        const Point2 pt{(t / n + 0.5) / n, (t % n + 0.5) / n};
        const Point2 ps{(s / n + 0.5) / n, (s % n + 0.5) / n};
        CHECK(std::fabs(p.phi2(t, s) - k(pt, ps)) < tol);
      }
    }
  }
}

TEST_CASE("corollary-2 fubini check and the KL variance oracle") {
  const Kernel4 phi = corollary2_kernel(2, 12);
  const FubiniReport rep = fubini_check(phi, 6);
  CHECK(rep.pass);
  // m=2 cumulant of the phi2 side is Var(int B0^2) up to grid bias
  const ContractionPair p = contractions(phi);
  linalg::Matrix op = p.phi2;
  for (double& v : op.a) v *= p.weight();
  const double var_discrete = cumulant_m(op, 2);
  const double var_continuum = 2.0 / (90.0 * 90.0);  // 2 (sum lambda^2)^2
  CHECK(std::fabs(var_discrete - var_continuum) < 0.15 * var_continuum);
}
