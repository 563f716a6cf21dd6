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
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "sheetlaw/kernels.hpp"
#include "sheetlaw/linalg.hpp"

namespace sheetlaw {

// Eigenvalues of a covariance operator, descending and clamped nonnegative.
// trace_tail bounds the mass of discarded/truncated eigenvalues; Laplace
// transforms apply it as a first-order correction.
struct Spectrum {
  std::vector<double> eigs;
  double trace_tail = 0.0;
  std::string source;

  double trace() const;
  double total_trace() const { return trace() + trace_tail; }
};

/// Nystrom matrix of the kernel at midpoints with uniform weights:
/// [K(p_i, p_j) / n^dim], side n^dim. OpenMP-parallel assembly.
linalg::Matrix grid_gram(const CovKernel& kernel, int n);
/// Serial reference; bit-identical to grid_gram.
linalg::Matrix grid_gram_serial(const CovKernel& kernel, int n);

/// Spectrum of the midpoint Nystrom operator. Verifies trace preservation
/// to 1e-10 relative and clamps round-off negatives at 1e-10 * eigs[0].
Spectrum grid_spectrum(const CovKernel& kernel, int n);

/// Exact Karhunen-Loeve eigenvalues: Bridge1D 1/(j pi)^2,
/// Wiener1D 1/((j-1/2) pi)^2, CenteredWiener1D 1/(j pi)^2; trace_tail is the
/// analytic remainder of the full trace (1/6, 1/2, 1/6).
Spectrum analytic_spectrum(ProcessKind kind, int count);

/// All pairwise products of the top `cutoff` values of each factor, sorted,
/// keeping the largest max_kept; the rest goes into trace_tail.
Spectrum tensor_spectrum(const Spectrum& s1, const Spectrum& s2, int cutoff,
                         std::size_t max_kept = 100000);

/// E[exp(-u^2/2 * Q)] = prod (1 + u^2 lambda)^(-1/2), accumulated in log
/// space, times the tail correction exp(-u^2 * trace_tail / 2) (a lower
/// bound adjustment: exact to first order in the tail mass).
double laplace_from_spectrum(const Spectrum& s, double u);

/// One draw of Q = sum lambda_k xi_k^2 (+ trace_tail as its deterministic
/// mean contribution); an MC channel independent of grid simulation.
double kl_sample(const Spectrum& s, std::uint64_t seed, std::uint64_t stream);

Spectrum scaled(Spectrum s, double factor);
Spectrum merged(const std::vector<Spectrum>& parts);  // independent-sum law

void save_spectrum_csv(const Spectrum& s, const std::filesystem::path& path);
nlohmann::ordered_json spectrum_to_json(const Spectrum& s);

}  // namespace sheetlaw
