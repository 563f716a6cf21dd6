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

#include <filesystem>
#include <span>

namespace sheetlaw {

// The special products and series behind the closed-form transforms:
//   C(a)      = prod_{j>=1} cosh(a/(j pi))
//   C_odd(a)  = prod_{k odd} cosh(a/(k pi))
//   C_even(a) = prod_{k even} cosh(a/(k pi))            ( = C(a/2) )
//   S(a)      = prod_{j>=1} sinh(a/(j pi)) / (a/(j pi))
//   S_even(a) = prod over even k                        ( = S(a/2) )
//   S_odd(a)  = prod over odd k                         ( = C(a/2) )
//   T(a)      = sum_{k odd} tanh(2a/(k pi)) / (k pi)
enum class ProductId { C, Codd, Ceven, S, Seven, Sodd, Tseries };

enum class TransformId { Prop5_B, Prop5_B0, Prop5_K, Thm6_I, Thm6_J, Thm6_Y };

const char* to_string(ProductId id);
const char* to_string(TransformId id);

/// Truncated product/series in log space plus an analytic tail; the result
/// carries relative error <= tol. tol must lie in (0, 1e-2].
double eval_product(ProductId id, double a, double tol = 1e-10);

/// Laplace transforms of the three quadratic functionals:
///   B:  (C_odd(2u) * 4T(u)/u)^(-1/2)   (the u -> 0 limit of 4T(u)/u is 1)
///   B0: S(u)^(-1/2)
///   K:  S_odd(2u)^(-1/2)
double prop5_laplace(TransformId id, double u);

/// Transforms of the double Wiener integrals:
///   J: S(u/2)^(-1),  Y: S(u/4)^(-2),
///   I: S(u/4)^(-1/2) * (C_odd(u/2) * 16 T(u/4)/u)^(-1/2) * S_odd(u/2)^(-1),
/// the form the product-of-four-factors derivation yields. The printed
/// variant with the opposite S_odd exponent is thm6_i_printed.
double thm6_transform(TransformId id, double u);
double thm6_i_printed(double u);

/// 4 T(u)/u with its limit at u = 0; always in (0, 1].
double t_ratio(double u, double tol = 1e-12);

/// (u, value) rows for a transform over a grid of u values.
void save_transform_curve_csv(TransformId id, std::span<const double> us,
                              const std::filesystem::path& path);

}  // namespace sheetlaw
