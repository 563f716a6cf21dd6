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
#include <string>
#include <vector>

#include "json.hpp"

namespace sheetlaw {

// The identity-in-law catalog. Each tag binds one LHS recipe and one RHS
// recipe per supported channel (see verify.cpp for the registry).
enum class IdentityId : std::uint8_t {
  WATSON,          // path variance of the bridge vs 1/4 (b1^2 + b2^2)
  FUB1,            // |B|^2 vs full-mean-centered sheet
  FUB2,            // |B0|^2 vs double-mean-centered sheet
  FUB3,            // |K1|^2 vs sheet centered over the 1st coordinate
  FUB4,            // |K2|^2 vs sheet centered over the 2nd coordinate
  T3P1,            // full-mean-centered B0 vs (1/16)(B, K1, K2, B0)
  T3P2,            // row-centered B0 vs (1/4)(B0 + B0)
  T3P3,            // double-centered B0 vs (1/16) sum of four B0
  LEMMA4,          // antisymmetric bridge part vs scaled bridge; independence
  SODD_IS_CHALF,   // S_odd(a) = C(a/2)
  T6I,             // Fourier transform of I (proof-derived form)
  T6J,             // Fourier transform of J = S(u/2)^-1
  T6Y,             // Fourier transform of Y = S(u/4)^-2
};

enum class Channel : std::uint8_t { Spectral, ClosedForm, MonteCarlo };

const char* to_string(IdentityId id);
const char* to_string(Channel c);

struct VerifyConfig {
  int n = 32;                             // 2-D grid resolution (even)
  int n1d = 512;                          // 1-D resolution (even)
  int samples = 20000;                    // MC sample count per side
  std::vector<double> u_grid{0.5, 1.0, 2.0};
  double alpha = 0.01;                    // MC test level
  std::uint64_t seed = 1;
  int t6i_grid_n = 48;                    // grid factor for the B component of T6I

  void validate() const;  // throws std::invalid_argument
};

struct VerdictReport {
  IdentityId identity{};
  Channel channel{};
  double statistic = 0.0;
  double threshold = 0.0;
  bool pass = false;
  bool inconclusive = false;  // MC below the documented power threshold
  std::string lhs_provenance;
  std::string rhs_provenance;
  std::uint64_t seed = 0;
  int n = 0;
  int samples = 0;
  nlohmann::ordered_json details;

  nlohmann::ordered_json to_json() const;
};

/// Laplace-curve / eigenvalue-multiset comparison of the two sides.
/// LEMMA4 has no spectral formulation and throws std::invalid_argument.
VerdictReport verify_spectral(IdentityId id, const VerifyConfig& cfg);

/// Seeded two-sample comparison: KS test on independently sampled LHS/RHS
/// functionals plus empirical-Laplace agreement on cfg.u_grid. Passes when
/// p(max(0, D - delta(n))) >= alpha, with the documented grid-bias allowance
/// delta(n) = 8/n^2 for 2-D grids and 0 for 1-D identities.
VerdictReport verify_mc(IdentityId id, const VerifyConfig& cfg);

/// Closed-form identities against the independent spectral channel;
/// only T6I, T6J, T6Y and SODD_IS_CHALF are supported.
VerdictReport verify_closed_form(IdentityId id, const VerifyConfig& cfg);

/// Deliberately falsified identity (claims |B0|^2 = |K1|^2 in law); both
/// reports pass iff the falsification is detected (gap > 5%, p < 1e-4).
VerdictReport negative_control_spectral(const VerifyConfig& cfg);
VerdictReport negative_control_mc(const VerifyConfig& cfg);

/// Every identity on every supported channel, in catalog order.
std::vector<VerdictReport> run_suite(const VerifyConfig& cfg);

bool suite_pass(const std::vector<VerdictReport>& reports);
nlohmann::ordered_json suite_to_json(const std::vector<VerdictReport>& reports,
                                     const VerifyConfig& cfg);

double mc_bias_allowance(int n, bool two_dim);

}  // namespace sheetlaw
