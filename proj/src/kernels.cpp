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

#include "sheetlaw/kernels.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace sheetlaw {

namespace {

// Every kernel here is a sum of at most two separable terms whose 1-D
// factors come from this closed set. For each factor we carry the value,
// the row integral r(t) = int_0^1 f(t,u) du and the total int int f.
enum class Factor : std::uint8_t { Min, Prod, Bridge, CenteredMin };

double fval(Factor f, double t, double s) {
  switch (f) {
    case Factor::Min:
      return std::min(t, s);
    case Factor::Prod:
      return t * s;
    case Factor::Bridge:
      return std::min(t, s) - t * s;
    case Factor::CenteredMin:
      // min(t,s) - (t - t^2/2) - (s - s^2/2) + 1/3, corrections summed
      // first so the value is bit-symmetric in (t,s)
      return std::min(t, s) - ((t - 0.5 * t * t) + (s - 0.5 * s * s)) +
             1.0 / 3.0;
  }
  return 0.0;
}

double frow(Factor f, double t) {
  switch (f) {
    case Factor::Min:
      return t - 0.5 * t * t;
    case Factor::Prod:
      return 0.5 * t;
    case Factor::Bridge:
      return 0.5 * t * (1.0 - t);
    case Factor::CenteredMin:
      return 0.0;
  }
  return 0.0;
}

double ftot(Factor f) {
  switch (f) {
    case Factor::Min:
      return 1.0 / 3.0;
    case Factor::Prod:
      return 0.25;
    case Factor::Bridge:
      return 1.0 / 12.0;
    case Factor::CenteredMin:
      return 0.0;
  }
  return 0.0;
}

struct Term {
  double coef;
  Factor f1;
  Factor f2;
};

struct KindInfo {
  int dim;
  int n_terms;
  std::array<Term, 2> terms;
};

KindInfo info_of(ProcessKind k) {
  switch (k) {
    case ProcessKind::Sheet:
      return {2, 1, {Term{1.0, Factor::Min, Factor::Min}, {}}};
    case ProcessKind::BridgeB:
      return {2, 2,
              {Term{1.0, Factor::Min, Factor::Min},
               Term{-1.0, Factor::Prod, Factor::Prod}}};
    case ProcessKind::TiedDownB0:
      return {2, 1, {Term{1.0, Factor::Bridge, Factor::Bridge}, {}}};
    case ProcessKind::Kiefer1:
      return {2, 1, {Term{1.0, Factor::Bridge, Factor::Min}, {}}};
    case ProcessKind::Kiefer2:
      return {2, 1, {Term{1.0, Factor::Min, Factor::Bridge}, {}}};
    case ProcessKind::Wiener1D:
      return {1, 1, {Term{1.0, Factor::Min, Factor::Min}, {}}};
    case ProcessKind::Bridge1D:
      return {1, 1, {Term{1.0, Factor::Bridge, Factor::Bridge}, {}}};
    case ProcessKind::CenteredWiener1D:
      return {1, 1, {Term{1.0, Factor::CenteredMin, Factor::CenteredMin}, {}}};
  }
  throw std::invalid_argument("unknown ProcessKind");
}

// Centered value of one 1-D factor: f(t,s) - r(t) - r(s) + total. The two
// row corrections are summed first so the result is bit-symmetric in (t,s).
double fval_centered(Factor f, double t, double s) {
  return fval(f, t, s) - (frow(f, t) + frow(f, s)) + ftot(f);
}

void check_point(const Point2& p) {
  if (!(p.t1 >= 0.0 && p.t1 <= 1.0 && p.t2 >= 0.0 && p.t2 <= 1.0)) {
    throw std::invalid_argument("point outside [0,1]^2");
  }
}

}  // namespace

const char* to_string(ProcessKind k) {
  switch (k) {
    case ProcessKind::Sheet: return "Sheet";
    case ProcessKind::BridgeB: return "BridgeB";
    case ProcessKind::TiedDownB0: return "TiedDownB0";
    case ProcessKind::Kiefer1: return "Kiefer1";
    case ProcessKind::Kiefer2: return "Kiefer2";
    case ProcessKind::Wiener1D: return "Wiener1D";
    case ProcessKind::Bridge1D: return "Bridge1D";
    case ProcessKind::CenteredWiener1D: return "CenteredWiener1D";
  }
  return "?";
}

const char* to_string(CenteringKind c) {
  switch (c) {
    case CenteringKind::None: return "None";
    case CenteringKind::FullMean: return "FullMean";
    case CenteringKind::RowMean: return "RowMean";
    case CenteringKind::ColMean: return "ColMean";
    case CenteringKind::DoubleMean: return "DoubleMean";
  }
  return "?";
}

bool is_1d(ProcessKind k) {
  return k == ProcessKind::Wiener1D || k == ProcessKind::Bridge1D ||
         k == ProcessKind::CenteredWiener1D;
}

CovKernel::CovKernel(ProcessKind kind, CenteringKind centering)
    : kind_(kind), centering_(centering) {
  const KindInfo info = info_of(kind);
  dim_ = info.dim;
  if (dim_ == 1 && centering != CenteringKind::None &&
      centering != CenteringKind::FullMean) {
    throw std::invalid_argument(
        "row/column centering is undefined for 1-D kernels");
  }
  if (dim_ == 1) {
    separable_ = false;
  } else {
    // FullMean of a 2-D kernel mixes the coordinates; everything else keeps
    // a single separable term separable.
    separable_ = info.n_terms == 1 && centering != CenteringKind::FullMean;
  }
}

double CovKernel::operator()(const Point2& p, const Point2& q) const {
  const KindInfo info = info_of(kind_);
  double acc = 0.0;
  if (dim_ == 1) {
    for (int k = 0; k < info.n_terms; ++k) {
      const Term& tm = info.terms[k];
      acc += tm.coef * (centering_ == CenteringKind::FullMean
                            ? fval_centered(tm.f1, p.t1, q.t1)
                            : fval(tm.f1, p.t1, q.t1));
    }
    return acc;
  }
  for (int k = 0; k < info.n_terms; ++k) {
    const Term& tm = info.terms[k];
    switch (centering_) {
      case CenteringKind::None:
        acc += tm.coef * fval(tm.f1, p.t1, q.t1) * fval(tm.f2, p.t2, q.t2);
        break;
      case CenteringKind::RowMean:
        acc += tm.coef * fval(tm.f1, p.t1, q.t1) *
               fval_centered(tm.f2, p.t2, q.t2);
        break;
      case CenteringKind::ColMean:
        acc += tm.coef * fval_centered(tm.f1, p.t1, q.t1) *
               fval(tm.f2, p.t2, q.t2);
        break;
      case CenteringKind::DoubleMean:
        acc += tm.coef * fval_centered(tm.f1, p.t1, q.t1) *
               fval_centered(tm.f2, p.t2, q.t2);
        break;
      case CenteringKind::FullMean:
        // K - a(t1)b(t2) - a(s1)b(s2) + total, termwise; corrections are
        // summed first so the value is bit-symmetric in (p,q)
        acc += tm.coef *
               (fval(tm.f1, p.t1, q.t1) * fval(tm.f2, p.t2, q.t2) -
                (frow(tm.f1, p.t1) * frow(tm.f2, p.t2) +
                 frow(tm.f1, q.t1) * frow(tm.f2, q.t2)) +
                ftot(tm.f1) * ftot(tm.f2));
        break;
    }
  }
  return acc;
}

double CovKernel::operator()(double t, double s) const {
  return (*this)(Point2{t, 0.0}, Point2{s, 0.0});
}

namespace {

CovKernel factor_kernel(Factor f, bool centered) {
  switch (f) {
    case Factor::Min:
      return CovKernel(ProcessKind::Wiener1D,
                       centered ? CenteringKind::FullMean : CenteringKind::None);
    case Factor::Bridge:
      return CovKernel(ProcessKind::Bridge1D,
                       centered ? CenteringKind::FullMean : CenteringKind::None);
    case Factor::CenteredMin:
      return CovKernel(ProcessKind::CenteredWiener1D);
    case Factor::Prod:
      break;
  }
  throw std::logic_error("no factor kernel for this term");
}

}  // namespace

CovKernel CovKernel::factor1() const {
  if (!separable_) throw std::invalid_argument("kernel is not separable");
  const KindInfo info = info_of(kind_);
  const bool centered = centering_ == CenteringKind::ColMean ||
                        centering_ == CenteringKind::DoubleMean;
  return factor_kernel(info.terms[0].f1, centered);
}

CovKernel CovKernel::factor2() const {
  if (!separable_) throw std::invalid_argument("kernel is not separable");
  const KindInfo info = info_of(kind_);
  const bool centered = centering_ == CenteringKind::RowMean ||
                        centering_ == CenteringKind::DoubleMean;
  return factor_kernel(info.terms[0].f2, centered);
}

std::string CovKernel::name() const {
  std::string s = to_string(kind_);
  if (centering_ != CenteringKind::None) {
    s += "+";
    s += to_string(centering_);
  }
  return s;
}

double eval_kernel(const CovKernel& kernel, const Point2& p, const Point2& q) {
  check_point(p);
  check_point(q);
  return kernel(p, q);
}

CovKernel centered_kernel(const CovKernel& base, CenteringKind c) {
  if (base.centering() != CenteringKind::None) {
    throw std::invalid_argument("kernel is already centered");
  }
  return CovKernel(base.kind(), c);
}

double cross_cov_sym_antisym(double s, double t) {
  if (!(s >= 0.0 && s <= 0.5 && t >= 0.0 && t <= 0.5)) {
    throw std::invalid_argument("arguments must lie in [0, 1/2]");
  }
  const CovKernel b(ProcessKind::Bridge1D);
  return 0.25 * (b(s, t) + b(s, 1.0 - t) - b(1.0 - s, t) - b(1.0 - s, 1.0 - t));
}

}  // namespace sheetlaw
