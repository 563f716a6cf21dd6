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
#include <span>
#include <vector>

#include "sheetlaw/kernels.hpp"

namespace sheetlaw {

enum class ProjectionKind : std::uint8_t { S1, S2, A1, A2, T1, T2, T3, T4 };
const char* to_string(ProjectionKind p);

// Process values on the n1 x n2 midpoint grid, entry (i,j) at
// ((i+1/2)/n1, (j+1/2)/n2). Sheet fields additionally carry the boundary
// values W(m_i, 1), W(1, m_j), W(1,1) needed by the bridge/Kiefer
// transformations; those are simulated jointly with the interior, so every
// stored value has the exact finite-dimensional law of the process at its
// labeled location. Square (n1 == n2) in all public interfaces.
struct GridField {
  int n1 = 0;
  int n2 = 0;
  std::uint64_t seed = 0;
  ProcessKind kind = ProcessKind::Sheet;
  std::vector<double> values;    // n1*n2, row-major (i = t1 index)
  std::vector<double> edge_row;  // W(m_i, 1), size n1 when boundary present
  std::vector<double> edge_col;  // W(1, m_j), size n2
  double corner = 0.0;           // W(1, 1)
  bool has_boundary = false;

  int n() const { return n1; }
  double at(int i, int j) const { return values[static_cast<std::size_t>(i) * n2 + j]; }
  double& at(int i, int j) { return values[static_cast<std::size_t>(i) * n2 + j]; }
  double mid1(int i) const { return (i + 0.5) / n1; }
  double mid2(int j) const { return (j + 0.5) / n2; }
};

/// Exact Brownian-sheet sample on the n x n midpoint grid (with boundary).
GridField sample_sheet(int n, std::uint64_t seed, std::uint64_t stream = 0);
/// Serial reference implementation; bit-identical to sample_sheet.
GridField sample_sheet_serial(int n, std::uint64_t seed, std::uint64_t stream = 0);
/// Rectangular variant (used by the anisotropic T3P1 sub-checks).
GridField sample_sheet_rect(int n1, int n2, std::uint64_t seed, std::uint64_t stream);

/// Pointwise transformation of a sheet into one of the conditioned fields.
GridField derive(const GridField& field, ProcessKind target);

/// Symmetry projection; reflections are the index map i -> n+1-i, so n must
/// be even for midpoints to map onto midpoints.
GridField project(const GridField& field, ProjectionKind p);

/// (1/(n1 n2)) * sum over midpoints of the squared centered value.
double quad_functional(const GridField& field, CenteringKind c);

// 1-D midpoint-lattice paths for the WATSON / LEMMA4 channels.
std::vector<double> sample_wiener_path(int n, std::uint64_t seed,
                                       std::uint64_t stream,
                                       double* w_at_one = nullptr);
std::vector<double> sample_bridge_path(int n, std::uint64_t seed,
                                       std::uint64_t stream);
double quad_path(std::span<const double> x,
                 CenteringKind c = CenteringKind::None);

void save_field_csv(const GridField& field, const std::filesystem::path& path);
GridField load_field_csv(const std::filesystem::path& path);

}  // namespace sheetlaw
