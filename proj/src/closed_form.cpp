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

#include "sheetlaw/closed_form.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "sheetlaw/version.hpp"

namespace sheetlaw {

namespace {

constexpr double kPi = std::numbers::pi;

// index families: k = start, start+step, ...
struct Family {
  int start;
  int step;
};
constexpr Family kAll{1, 1};
constexpr Family kOdd{1, 2};
constexpr Family kEven{2, 2};

// Euler-Maclaurin tail sum_{m>=0} (k0 + step*m)^-p for k0 >= ~16.
double tail_sum(double p, double k0, double step) {
  const double ip = std::pow(k0, 1.0 - p) / (step * (p - 1.0));
  const double t0 = 0.5 * std::pow(k0, -p);
  const double t1 = step * p * std::pow(k0, -p - 1.0) / 12.0;
  const double t2 =
      step * step * step * p * (p + 1.0) * (p + 2.0) * std::pow(k0, -p - 3.0) / 720.0;
  return ip + t0 + t1 - t2;
}

double log_cosh(double x) {
  x = std::fabs(x);
  if (x > 20.0) return x - std::numbers::ln2 + std::log1p(std::exp(-2.0 * x));
  return std::log(std::cosh(x));
}

double log_sinhc(double x) {
  x = std::fabs(x);
  if (x < 1e-4) {
    const double x2 = x * x;
    return x2 / 6.0 - x2 * x2 / 180.0;
  }
  if (x > 20.0) return x - std::log(2.0 * x) + std::log1p(-std::exp(-2.0 * x));
  return std::log(std::sinh(x) / x);
}

double tanhc(double y) {
  const double a = std::fabs(y);
  if (a < 1e-4) {
    const double y2 = y * y;
    return 1.0 - y2 / 3.0 + 2.0 * y2 * y2 / 15.0;
  }
  return std::tanh(y) / y;
}

// series of log f(x) in powers of x^2 (first three used for the tail, the
// fourth bounds the residual)
struct LogSeries {
  double c2, c4, c6, c8_abs;
};
constexpr LogSeries kCoshSeries{0.5, -1.0 / 12.0, 1.0 / 45.0, 17.0 / 2520.0};
constexpr LogSeries kSinhcSeries{1.0 / 6.0, -1.0 / 180.0, 1.0 / 2835.0,
                                 1.0 / 37800.0};

// Terms k <= last explicit index are summed directly; beyond that the
// series tail in (a / (k pi))^2 is added analytically.
double log_product(double a, Family fam, const LogSeries& s,
                   double (*logf)(double), double tol) {
  const double b = std::fabs(a) / kPi;  // x_k = b / k
  int m_terms = std::max(64, static_cast<int>(std::ceil(std::fabs(a))));
  for (;;) {
    const double k0 = fam.start + static_cast<double>(fam.step) * m_terms;
    const double resid = s.c8_abs * std::pow(b, 8.0) * tail_sum(8.0, k0, fam.step);
    if (resid <= 0.25 * tol || m_terms >= (1 << 24)) break;
    m_terms *= 2;
  }
  double acc = 0.0;
  for (int m = m_terms - 1; m >= 0; --m) {  // small terms first
    const double k = fam.start + static_cast<double>(fam.step) * m;
    acc += logf(b / k);
  }
  const double k0 = fam.start + static_cast<double>(fam.step) * m_terms;
  const double b2 = b * b;
  acc += s.c2 * b2 * tail_sum(2.0, k0, fam.step) +
         s.c4 * b2 * b2 * tail_sum(4.0, k0, fam.step) +
         s.c6 * b2 * b2 * b2 * tail_sum(6.0, k0, fam.step);
  return acc;
}

// T(a) = sum_{k odd} tanh(2a/(k pi)) / (k pi)
double t_series(double a, double tol) {
  const double y0 = 2.0 * a / kPi;  // y_k = y0 / k
  int m_terms = std::max(64, static_cast<int>(std::ceil(std::fabs(a))));
  double value = 0.0;
  for (;;) {
    value = 0.0;
    for (int m = m_terms - 1; m >= 0; --m) {
      const double k = 1.0 + 2.0 * m;
      value += std::tanh(y0 / k) / (k * kPi);
    }
    const double k0 = 1.0 + 2.0 * m_terms;
    // tanh(y)/ (k pi) = 2a/(k^2 pi^2) - (2a)^3/(3 k^4 pi^4) + 2 (2a)^5/(15 k^6 pi^6) - ...
    const double q = 2.0 * a;
    value += (q / (kPi * kPi)) * tail_sum(2.0, k0, 2.0) -
             (q * q * q / (3.0 * std::pow(kPi, 4.0))) * tail_sum(4.0, k0, 2.0) +
             (2.0 * std::pow(q, 5.0) / (15.0 * std::pow(kPi, 6.0))) *
                 tail_sum(6.0, k0, 2.0);
    const double resid = (17.0 / 315.0) * std::pow(std::fabs(q), 7.0) /
                         std::pow(kPi, 8.0) * tail_sum(8.0, k0, 2.0);
    if (resid <= 0.25 * tol * std::max(std::fabs(value), 1e-300) ||
        m_terms >= (1 << 24))
      break;
    m_terms *= 2;
  }
  return value;
}

double log_eval(ProductId id, double a, double tol) {
  switch (id) {
    case ProductId::C:     return log_product(a, kAll, kCoshSeries, log_cosh, tol);
    case ProductId::Codd:  return log_product(a, kOdd, kCoshSeries, log_cosh, tol);
    case ProductId::Ceven: return log_product(a, kEven, kCoshSeries, log_cosh, tol);
    case ProductId::S:     return log_product(a, kAll, kSinhcSeries, log_sinhc, tol);
    case ProductId::Seven: return log_product(a, kEven, kSinhcSeries, log_sinhc, tol);
    case ProductId::Sodd:  return log_product(a, kOdd, kSinhcSeries, log_sinhc, tol);
    case ProductId::Tseries: break;
  }
  throw std::invalid_argument("Tseries has no log-product form");
}

void check_arg(double a, double tol) {
  if (!std::isfinite(a)) throw std::invalid_argument("argument must be finite");
  if (!(tol > 0.0 && tol <= 1e-2))
    throw std::invalid_argument("tol must lie in (0, 1e-2]");
}

constexpr double kTransformTol = 1e-12;

}  // namespace

const char* to_string(ProductId id) {
  switch (id) {
    case ProductId::C: return "C";
    case ProductId::Codd: return "C_odd";
    case ProductId::Ceven: return "C_even";
    case ProductId::S: return "S";
    case ProductId::Seven: return "S_even";
    case ProductId::Sodd: return "S_odd";
    case ProductId::Tseries: return "T";
  }
  return "?";
}

const char* to_string(TransformId id) {
  switch (id) {
    case TransformId::Prop5_B: return "Prop5_B";
    case TransformId::Prop5_B0: return "Prop5_B0";
    case TransformId::Prop5_K: return "Prop5_K";
    case TransformId::Thm6_I: return "Thm6_I";
    case TransformId::Thm6_J: return "Thm6_J";
    case TransformId::Thm6_Y: return "Thm6_Y";
  }
  return "?";
}

double eval_product(ProductId id, double a, double tol) {
  check_arg(a, tol);
  if (id == ProductId::Tseries) return t_series(a, tol);
  return std::exp(log_eval(id, a, tol));
}

double t_ratio(double u, double tol) {
  if (!std::isfinite(u)) throw std::invalid_argument("u must be finite");
  // 4 T(u)/u = sum_{k odd} (8/(k pi)^2) * tanhc(2u/(k pi)); the k^-2 decay
  // makes the u -> 0 limit (= 1) the generic code path.
  const double y0 = 2.0 * u / kPi;
  int m_terms = std::max(64, static_cast<int>(std::ceil(std::fabs(u))));
  double value = 0.0;
  for (;;) {
    value = 0.0;
    for (int m = m_terms - 1; m >= 0; --m) {
      const double k = 1.0 + 2.0 * m;
      value += 8.0 / (k * k * kPi * kPi) * tanhc(y0 / k);
    }
    const double k0 = 1.0 + 2.0 * m_terms;
    const double u2 = u * u;
    value += (8.0 / (kPi * kPi)) * tail_sum(2.0, k0, 2.0) -
             (32.0 * u2 / (3.0 * std::pow(kPi, 4.0))) * tail_sum(4.0, k0, 2.0) +
             (256.0 * u2 * u2 / (15.0 * std::pow(kPi, 6.0))) *
                 tail_sum(6.0, k0, 2.0);
    const double resid = (17.0 / 315.0) * 64.0 * std::pow(std::fabs(u), 6.0) *
                         8.0 / std::pow(kPi, 8.0) * tail_sum(8.0, k0, 2.0);
    if (resid <= 0.25 * tol * std::max(value, 1e-300) || m_terms >= (1 << 24))
      break;
    m_terms *= 2;
  }
  return value;
}

double prop5_laplace(TransformId id, double u) {
  if (!std::isfinite(u)) throw std::invalid_argument("u must be finite");
  switch (id) {
    case TransformId::Prop5_B:
      return std::exp(-0.5 * (log_eval(ProductId::Codd, 2.0 * u, kTransformTol) +
                              std::log(t_ratio(u, kTransformTol))));
    case TransformId::Prop5_B0:
      return std::exp(-0.5 * log_eval(ProductId::S, u, kTransformTol));
    case TransformId::Prop5_K:
      return std::exp(-0.5 * log_eval(ProductId::Sodd, 2.0 * u, kTransformTol));
    default:
      throw std::invalid_argument("prop5_laplace expects a Prop5_* id");
  }
}

double thm6_transform(TransformId id, double u) {
  if (!std::isfinite(u)) throw std::invalid_argument("u must be finite");
  switch (id) {
    case TransformId::Thm6_J:
      return std::exp(-log_eval(ProductId::S, 0.5 * u, kTransformTol));
    case TransformId::Thm6_Y:
      return std::exp(-2.0 * log_eval(ProductId::S, 0.25 * u, kTransformTol));
    case TransformId::Thm6_I:
      return std::exp(
          -0.5 * (log_eval(ProductId::S, 0.25 * u, kTransformTol) +
                  log_eval(ProductId::Codd, 0.5 * u, kTransformTol) +
                  std::log(t_ratio(0.25 * u, kTransformTol))) -
          log_eval(ProductId::Sodd, 0.5 * u, kTransformTol));
    default:
      throw std::invalid_argument("thm6_transform expects a Thm6_* id");
  }
}

double thm6_i_printed(double u) {
  if (!std::isfinite(u)) throw std::invalid_argument("u must be finite");
  return std::exp(-0.5 * (log_eval(ProductId::Codd, 0.5 * u, kTransformTol) +
                          std::log(t_ratio(0.25 * u, kTransformTol)) +
                          log_eval(ProductId::S, 0.25 * u, kTransformTol)) +
                  log_eval(ProductId::Sodd, 0.5 * u, kTransformTol));
}

void save_transform_curve_csv(TransformId id, std::span<const double> us,
                              const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path.string());
  os << "# sheetlaw-transform version=" << kVersion << " id=" << to_string(id)
     << '\n';
  os << "u,value\n";
  os.precision(17);
  const bool is_prop5 = id == TransformId::Prop5_B ||
                        id == TransformId::Prop5_B0 ||
                        id == TransformId::Prop5_K;
  for (double u : us)
    os << u << ',' << (is_prop5 ? prop5_laplace(id, u) : thm6_transform(id, u))
       << '\n';
}

}  // namespace sheetlaw
