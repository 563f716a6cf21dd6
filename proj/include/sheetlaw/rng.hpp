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

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <utility>

namespace sheetlaw::rng {

// Counter-based generator (Philox4x32-10, Salmon et al. 2011). Every draw is
// a pure function of (seed, stream, index), so simulations are reproducible
// independent of iteration order and thread schedule.

namespace detail {

inline constexpr std::uint32_t kMul0 = 0xD2511F53u;
inline constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
inline constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
inline constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void philox_round(std::array<std::uint32_t, 4>& x, std::uint32_t k0,
                         std::uint32_t k1) {
  const std::uint64_t p0 = std::uint64_t{kMul0} * x[0];
  const std::uint64_t p1 = std::uint64_t{kMul1} * x[2];
  const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
  const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
  const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
  const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
  x = {hi1 ^ x[1] ^ k0, lo1, hi0 ^ x[3] ^ k1, lo0};
}

}  // namespace detail

/// One Philox block: key = seed, 128-bit counter = (stream, index).
inline std::array<std::uint32_t, 4> philox4x32(std::uint64_t seed,
                                               std::uint64_t stream,
                                               std::uint64_t index) {
  std::array<std::uint32_t, 4> x = {
      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  std::uint32_t k0 = static_cast<std::uint32_t>(seed);
  std::uint32_t k1 = static_cast<std::uint32_t>(seed >> 32);
  for (int r = 0; r < 10; ++r) {
    detail::philox_round(x, k0, k1);
    k0 += detail::kWeyl0;
    k1 += detail::kWeyl1;
  }
  return x;
}

namespace detail {

// 64 random bits -> uniform in (0,1), never exactly 0 or 1.
inline double to_unit(std::uint32_t hi, std::uint32_t lo) {
  const std::uint64_t v = (std::uint64_t{hi} << 32) | lo;
  return (static_cast<double>(v) + 0.5) * 0x1p-64;
}

}  // namespace detail

/// Two independent N(0,1) variates from block (seed, stream, index).
inline std::pair<double, double> normal_pair(std::uint64_t seed,
                                             std::uint64_t stream,
                                             std::uint64_t index) {
  const auto b = philox4x32(seed, stream, index);
  const double u1 = detail::to_unit(b[0], b[1]);
  const double u2 = detail::to_unit(b[2], b[3]);
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(a), r * std::sin(a)};
}

inline double normal(std::uint64_t seed, std::uint64_t stream,
                     std::uint64_t index) {
  return normal_pair(seed, stream, index).first;
}

/// Fills out[k] with N(0,1); out[2m], out[2m+1] come from block index m.
inline void fill_normals(std::span<double> out, std::uint64_t seed,
                         std::uint64_t stream) {
  const std::size_t m = out.size();
  for (std::size_t k = 0; k + 1 < m; k += 2) {
    const auto [a, b] = normal_pair(seed, stream, k / 2);
    out[k] = a;
    out[k + 1] = b;
  }
  if (m % 2 == 1) out[m - 1] = normal_pair(seed, stream, (m - 1) / 2).first;
}

/// Uniform in (0,1) from block (seed, stream, index).
inline double uniform(std::uint64_t seed, std::uint64_t stream,
                      std::uint64_t index) {
  const auto b = philox4x32(seed, stream, index);
  return detail::to_unit(b[0], b[1]);
}

}  // namespace sheetlaw::rng
