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

#include "sheetlaw/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "sheetlaw/parallel.hpp"
#include "sheetlaw/rng.hpp"
#include "sheetlaw/version.hpp"

namespace sheetlaw {

namespace {

constexpr double kPi = std::numbers::pi;

linalg::Matrix assemble(const CovKernel& kernel, int n, bool parallel) {
  if (n < 2) throw std::invalid_argument("grid resolution must be >= 2");
  if (kernel.dim() == 2 && n > 128)
    throw std::invalid_argument(
        "2-D grid spectra are supported up to n = 128 (dense operator side n^2)");
  const int threads = parallel ? worker_count() : 1;
  if (kernel.dim() == 1) {
    linalg::Matrix m(n);
    const double w = 1.0 / n;
#pragma omp parallel for num_threads(threads) schedule(static)
    for (int i = 0; i < n; ++i) {
      const double ti = (i + 0.5) / n;
      for (int j = 0; j < n; ++j) m(i, j) = w * kernel(ti, (j + 0.5) / n);
    }
    return m;
  }
  const int side = n * n;
  linalg::Matrix m(side);
  const double w = 1.0 / (static_cast<double>(n) * n);
#pragma omp parallel for num_threads(threads) schedule(static)
  for (int p = 0; p < side; ++p) {
    const Point2 tp{(p / n + 0.5) / static_cast<double>(n),
                    (p % n + 0.5) / static_cast<double>(n)};
    for (int q = 0; q < side; ++q) {
      const Point2 tq{(q / n + 0.5) / static_cast<double>(n),
                      (q % n + 0.5) / static_cast<double>(n)};
      m(p, q) = w * kernel(tp, tq);
    }
  }
  return m;
}

}  // namespace

double Spectrum::trace() const {
  double t = 0.0;
  for (double v : eigs) t += v;
  return t;
}

linalg::Matrix grid_gram(const CovKernel& kernel, int n) {
  return assemble(kernel, n, true);
}

linalg::Matrix grid_gram_serial(const CovKernel& kernel, int n) {
  return assemble(kernel, n, false);
}

Spectrum grid_spectrum(const CovKernel& kernel, int n) {
  linalg::Matrix m = grid_gram(kernel, n);
  const double mat_trace = linalg::trace(m);
  const std::string name = kernel.name();
  std::vector<double> w = linalg::sym_eigenvalues_desc(std::move(m), name.c_str());

  const double top = w.empty() ? 0.0 : std::max(w.front(), 0.0);
  const double clamp = 1e-10 * top;
  double sum = 0.0;
  int clamped = 0;
  for (double& v : w) {
    if (v < 0.0) {
      if (v < -clamp) {
        throw std::runtime_error("grid operator for " + name +
                                 " is not PSD within tolerance");
      }
      v = 0.0;
      ++clamped;
    }
    sum += v;
  }
  if (std::fabs(sum - mat_trace) > 1e-10 * std::max(std::fabs(mat_trace), 1e-30)) {
    throw std::runtime_error("trace not preserved by eigendecomposition of " + name);
  }

  Spectrum s;
  s.eigs = std::move(w);
  s.trace_tail = 0.0;
  s.source = "grid(n=" + std::to_string(n) + "," + name + ")";
  if (clamped > 0) s.source += ",clamped=" + std::to_string(clamped);
  return s;
}

Spectrum analytic_spectrum(ProcessKind kind, int count) {
  if (count < 1) throw std::invalid_argument("eigenvalue count must be >= 1");
  double full = 0.0;
  Spectrum s;
  s.eigs.resize(static_cast<std::size_t>(count));
  switch (kind) {
    case ProcessKind::Bridge1D:
    case ProcessKind::CenteredWiener1D:
      // gamma_i = lambda_i: the centered Wiener shares the bridge spectrum
      full = 1.0 / 6.0;
      for (int j = 1; j <= count; ++j) s.eigs[j - 1] = 1.0 / ((j * kPi) * (j * kPi));
      break;
    case ProcessKind::Wiener1D:
      full = 0.5;
      for (int j = 1; j <= count; ++j) {
        const double d = (j - 0.5) * kPi;
        s.eigs[j - 1] = 1.0 / (d * d);
      }
      break;
    default:
      throw std::invalid_argument("no analytic spectrum for this kind");
  }
  s.trace_tail = std::max(0.0, full - s.trace());
  s.source = std::string("analytic(") + to_string(kind) + ",count=" +
             std::to_string(count) + ")";
  return s;
}

Spectrum tensor_spectrum(const Spectrum& s1, const Spectrum& s2, int cutoff,
                         std::size_t max_kept) {
  if (s1.eigs.empty() || s2.eigs.empty())
    throw std::invalid_argument("tensor_spectrum needs nonempty spectra");
  const std::size_t c1 = std::min<std::size_t>(cutoff, s1.eigs.size());
  const std::size_t c2 = std::min<std::size_t>(cutoff, s2.eigs.size());
  std::vector<double> prod;
  prod.reserve(c1 * c2);
  for (std::size_t i = 0; i < c1; ++i)
    for (std::size_t j = 0; j < c2; ++j) prod.push_back(s1.eigs[i] * s2.eigs[j]);
  std::sort(prod.begin(), prod.end(), std::greater<double>());
  if (prod.size() > max_kept) prod.resize(max_kept);

  Spectrum out;
  out.eigs = std::move(prod);
  out.trace_tail =
      std::max(0.0, s1.total_trace() * s2.total_trace() - out.trace());
  out.source = "tensor(" + s1.source + "," + s2.source + ",cutoff=" +
               std::to_string(cutoff) + ")";
  return out;
}

double laplace_from_spectrum(const Spectrum& s, double u) {
  if (!std::isfinite(u)) throw std::invalid_argument("u must be finite");
  const double u2 = u * u;
  double logv = 0.0;
  for (double lam : s.eigs) logv += std::log1p(u2 * lam);
  return std::exp(-0.5 * logv - 0.5 * u2 * s.trace_tail);
}

double kl_sample(const Spectrum& s, std::uint64_t seed, std::uint64_t stream) {
  double acc = s.trace_tail;
  for (std::size_t k = 0; k + 1 < s.eigs.size(); k += 2) {
    const auto [a, b] = rng::normal_pair(seed, stream, k / 2);
    acc += s.eigs[k] * a * a + s.eigs[k + 1] * b * b;
  }
  if (s.eigs.size() % 2 == 1) {
    const double z = rng::normal_pair(seed, stream, (s.eigs.size() - 1) / 2).first;
    acc += s.eigs.back() * z * z;
  }
  return acc;
}

Spectrum scaled(Spectrum s, double factor) {
  if (factor < 0.0) throw std::invalid_argument("scale factor must be >= 0");
  for (double& v : s.eigs) v *= factor;
  s.trace_tail *= factor;
  s.source = std::to_string(factor) + "*" + s.source;
  return s;
}

Spectrum merged(const std::vector<Spectrum>& parts) {
  Spectrum out;
  out.source = "merge(";
  for (std::size_t k = 0; k < parts.size(); ++k) {
    out.eigs.insert(out.eigs.end(), parts[k].eigs.begin(), parts[k].eigs.end());
    out.trace_tail += parts[k].trace_tail;
    if (k) out.source += ",";
    out.source += parts[k].source;
  }
  out.source += ")";
  std::sort(out.eigs.begin(), out.eigs.end(), std::greater<double>());
  return out;
}

void save_spectrum_csv(const Spectrum& s, const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path.string());
  os << "# sheetlaw-spectrum version=" << kVersion << " source=" << s.source
     << " trace_tail=" << s.trace_tail << '\n';
  os << "rank,eigenvalue\n";
  os.precision(17);
  for (std::size_t k = 0; k < s.eigs.size(); ++k)
    os << (k + 1) << ',' << s.eigs[k] << '\n';
}

nlohmann::ordered_json spectrum_to_json(const Spectrum& s) {
  nlohmann::ordered_json j;
  j["version"] = kVersion;
  j["source"] = s.source;
  j["count"] = s.eigs.size();
  j["trace"] = s.trace();
  j["trace_tail"] = s.trace_tail;
  j["eigenvalues"] = s.eigs;
  return j;
}

}  // namespace sheetlaw
