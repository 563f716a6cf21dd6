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

namespace sheetlaw {

struct Point2 {
  double t1 = 0.0;
  double t2 = 0.0;
};

enum class ProcessKind : std::uint8_t {
  Sheet,             // E[W W'] = (t1^s1)(t2^s2)
  BridgeB,           // sheet pinned at (1,1): (t1^s1)(t2^s2) - t1 s1 t2 s2
  TiedDownB0,        // pinned on all edges:  (t1^s1 - t1 s1)(t2^s2 - t2 s2)
  Kiefer1,           // pinned on t1 in {0,1}: (t1^s1 - t1 s1)(t2^s2)
  Kiefer2,           // pinned on t2 in {0,1}: (t1^s1)(t2^s2 - t2 s2)
  Wiener1D,          // t^s
  Bridge1D,          // t^s - ts
  CenteredWiener1D,  // covariance of W(t) - int_0^1 W
};

enum class CenteringKind : std::uint8_t {
  None,
  FullMean,    // X - int int X
  RowMean,     // X(t1,t2) - int_0^1 X(t1,u) du   (average over the 2nd coordinate)
  ColMean,     // X(t1,t2) - int_0^1 X(u,t2) du   (average over the 1st coordinate)
  DoubleMean,  // subtract row and column means, add back the full mean
};

const char* to_string(ProcessKind k);
const char* to_string(CenteringKind c);
bool is_1d(ProcessKind k);

// Evaluable covariance kernel of a (possibly centered) process. Centered
// values are exact closed forms: all centering integrals of min/product
// terms are polynomials, no quadrature is involved. Immutable, so kernels
// can be shared across threads freely.
class CovKernel {
 public:
  explicit CovKernel(ProcessKind kind,
                     CenteringKind centering = CenteringKind::None);

  double operator()(const Point2& p, const Point2& q) const;
  double operator()(double t, double s) const;  // dim-1 kernels

  ProcessKind kind() const { return kind_; }
  CenteringKind centering() const { return centering_; }
  int dim() const { return dim_; }
  bool separable() const { return separable_; }

  // 1-D factor kernels; valid only when separable() is true.
  CovKernel factor1() const;
  CovKernel factor2() const;

  std::string name() const;

 private:
  ProcessKind kind_;
  CenteringKind centering_;
  int dim_;
  bool separable_;
};

/// eval_kernel with the point preconditions of the spec (coordinates in [0,1]).
double eval_kernel(const CovKernel& kernel, const Point2& p, const Point2& q);

/// Kernel of the centered process; `base` must be uncentered.
CovKernel centered_kernel(const CovKernel& base, CenteringKind c);

/// Cov(Ab(s), Sb(t)) for the bridge split around 1/2, via the
/// 1/4 [K(s,t) + K(s,1-t) - K(1-s,t) - K(1-s,1-t)] expansion. Zero for all
/// s, t in [0,1/2].
double cross_cov_sym_antisym(double s, double t);

}  // namespace sheetlaw
