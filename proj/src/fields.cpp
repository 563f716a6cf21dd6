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

#include "sheetlaw/fields.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "sheetlaw/parallel.hpp"
#include "sheetlaw/rng.hpp"
#include "sheetlaw/version.hpp"

namespace sheetlaw {

namespace {

// Cell widths of the augmented partition {0, h/2, 3h/2, ..., 1-h/2, 1}:
// n+1 cells, the first and last of width h/2. Prefix sums over i.i.d. cell
// increments give the sheet exactly at all midpoints and at the 1-boundary.
std::vector<double> cell_widths(int n) {
  std::vector<double> w(static_cast<std::size_t>(n) + 1, 1.0 / n);
  w.front() = 0.5 / n;
  w.back() = 0.5 / n;
  return w;
}

// P has (n1+1) x (n2+1) entries; P(i,j) = W at partition point (p_{i+1}, q_{j+1}),
// so rows/cols 0..n-1 are midpoints and row/col n is the 1-boundary.
void sample_prefix(int n1, int n2, std::uint64_t seed, std::uint64_t stream,
                   std::vector<double>& P, bool parallel) {
  const auto w1 = cell_widths(n1);
  const auto w2 = cell_widths(n2);
  const int r = n1 + 1, c = n2 + 1;
  P.assign(static_cast<std::size_t>(r) * c, 0.0);

  const int threads = parallel ? worker_count() : 1;

// increments, then prefix along rows, then along columns
#pragma omp parallel for num_threads(threads) schedule(static)
  for (int i = 0; i < r; ++i) {
    const double si = std::sqrt(w1[i]);
    double acc = 0.0;
    for (int j = 0; j < c; ++j) {
      const std::uint64_t idx = static_cast<std::uint64_t>(i) * c + j;
      acc += si * std::sqrt(w2[j]) * rng::normal(seed, stream, idx);
      P[static_cast<std::size_t>(i) * c + j] = acc;
    }
  }
#pragma omp parallel for num_threads(threads) schedule(static)
  for (int j = 0; j < c; ++j) {
    double acc = 0.0;
    for (int i = 0; i < r; ++i) {
      acc += P[static_cast<std::size_t>(i) * c + j];
      P[static_cast<std::size_t>(i) * c + j] = acc;
    }
  }
}

GridField sheet_from_prefix(int n1, int n2, std::uint64_t seed,
                            const std::vector<double>& P) {
  const int c = n2 + 1;
  GridField f;
  f.n1 = n1;
  f.n2 = n2;
  f.seed = seed;
  f.kind = ProcessKind::Sheet;
  f.values.resize(static_cast<std::size_t>(n1) * n2);
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j)
      f.at(i, j) = P[static_cast<std::size_t>(i) * c + j];
  f.edge_row.resize(n1);
  f.edge_col.resize(n2);
  for (int i = 0; i < n1; ++i) f.edge_row[i] = P[static_cast<std::size_t>(i) * c + n2];
  for (int j = 0; j < n2; ++j) f.edge_col[j] = P[static_cast<std::size_t>(n1) * c + j];
  f.corner = P[static_cast<std::size_t>(n1) * c + n2];
  f.has_boundary = true;
  return f;
}

GridField sample_impl(int n1, int n2, std::uint64_t seed, std::uint64_t stream,
                      bool parallel) {
  if (n1 < 2 || n2 < 2) throw std::invalid_argument("grid resolution must be >= 2");
  std::vector<double> P;
  sample_prefix(n1, n2, seed, stream, P, parallel);
  return sheet_from_prefix(n1, n2, seed, P);
}

}  // namespace

const char* to_string(ProjectionKind p) {
  switch (p) {
    case ProjectionKind::S1: return "S1";
    case ProjectionKind::S2: return "S2";
    case ProjectionKind::A1: return "A1";
    case ProjectionKind::A2: return "A2";
    case ProjectionKind::T1: return "T1";
    case ProjectionKind::T2: return "T2";
    case ProjectionKind::T3: return "T3";
    case ProjectionKind::T4: return "T4";
  }
  return "?";
}

GridField sample_sheet(int n, std::uint64_t seed, std::uint64_t stream) {
  return sample_impl(n, n, seed, stream, true);
}

GridField sample_sheet_serial(int n, std::uint64_t seed, std::uint64_t stream) {
  return sample_impl(n, n, seed, stream, false);
}

GridField sample_sheet_rect(int n1, int n2, std::uint64_t seed,
                            std::uint64_t stream) {
  return sample_impl(n1, n2, seed, stream, true);
}

GridField derive(const GridField& field, ProcessKind target) {
  if (field.kind != ProcessKind::Sheet)
    throw std::invalid_argument("derive expects a Sheet field");
  if (!field.has_boundary)
    throw std::invalid_argument("sheet field lacks boundary values");
  if (target == ProcessKind::Sheet || is_1d(target))
    throw std::invalid_argument("derive target must be a transformed 2-D field");

  GridField out = field;
  out.kind = target;
  for (int i = 0; i < field.n1; ++i) {
    const double t1 = field.mid1(i);
    for (int j = 0; j < field.n2; ++j) {
      const double t2 = field.mid2(j);
      const double w = field.at(i, j);
      double v = 0.0;
      switch (target) {
        case ProcessKind::BridgeB:
          v = w - t1 * t2 * field.corner;
          break;
        case ProcessKind::TiedDownB0:
          v = w - t1 * field.edge_col[j] - t2 * field.edge_row[i] +
              t1 * t2 * field.corner;
          break;
        case ProcessKind::Kiefer1:
          v = w - t1 * field.edge_col[j];
          break;
        case ProcessKind::Kiefer2:
          v = w - t2 * field.edge_row[i];
          break;
        default:
          break;
      }
      out.at(i, j) = v;
    }
  }
  out.edge_row.clear();
  out.edge_col.clear();
  out.corner = 0.0;
  out.has_boundary = false;
  return out;
}

namespace {

void reflect1(GridField& g, const GridField& in, double sign) {
  const int n = in.n1;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < in.n2; ++j)
      g.at(i, j) = 0.5 * (in.at(i, j) + sign * in.at(n - 1 - i, j));
}

void reflect2(GridField& g, const GridField& in, double sign) {
  const int n = in.n2;
  for (int i = 0; i < in.n1; ++i)
    for (int j = 0; j < n; ++j)
      g.at(i, j) = 0.5 * (in.at(i, j) + sign * in.at(i, n - 1 - j));
}

}  // namespace

GridField project(const GridField& field, ProjectionKind p) {
  if (field.n1 % 2 != 0 || field.n2 % 2 != 0)
    throw std::invalid_argument("projections need an even grid resolution");
  GridField out = field;
  out.edge_row.clear();
  out.edge_col.clear();
  out.corner = 0.0;
  out.has_boundary = false;
  GridField tmp = out;
  switch (p) {
    case ProjectionKind::S1: reflect1(out, field, +1.0); break;
    case ProjectionKind::A1: reflect1(out, field, -1.0); break;
    case ProjectionKind::S2: reflect2(out, field, +1.0); break;
    case ProjectionKind::A2: reflect2(out, field, -1.0); break;
    case ProjectionKind::T1:
      reflect1(tmp, field, +1.0);
      reflect2(out, tmp, +1.0);
      break;
    case ProjectionKind::T2:
      reflect1(tmp, field, +1.0);
      reflect2(out, tmp, -1.0);
      break;
    case ProjectionKind::T3:
      reflect1(tmp, field, -1.0);
      reflect2(out, tmp, +1.0);
      break;
    case ProjectionKind::T4:
      reflect1(tmp, field, -1.0);
      reflect2(out, tmp, -1.0);
      break;
  }
  return out;
}

double quad_functional(const GridField& field, CenteringKind c) {
  const int n1 = field.n1, n2 = field.n2;
  const double w = 1.0 / (static_cast<double>(n1) * n2);
  double acc = 0.0;
  switch (c) {
    case CenteringKind::None: {
      for (double v : field.values) acc += v * v;
      break;
    }
    case CenteringKind::FullMean: {
      double m = 0.0;
      for (double v : field.values) m += v;
      m /= static_cast<double>(field.values.size());
      for (double v : field.values) acc += (v - m) * (v - m);
      break;
    }
    case CenteringKind::RowMean: {
      for (int i = 0; i < n1; ++i) {
        double m = 0.0;
        for (int j = 0; j < n2; ++j) m += field.at(i, j);
        m /= n2;
        for (int j = 0; j < n2; ++j) {
          const double d = field.at(i, j) - m;
          acc += d * d;
        }
      }
      break;
    }
    case CenteringKind::ColMean: {
      std::vector<double> m(n2, 0.0);
      for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j) m[j] += field.at(i, j);
      for (double& v : m) v /= n1;
      for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j) {
          const double d = field.at(i, j) - m[j];
          acc += d * d;
        }
      break;
    }
    case CenteringKind::DoubleMean: {
      std::vector<double> mr(n1, 0.0), mc(n2, 0.0);
      double mf = 0.0;
      for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j) {
          const double v = field.at(i, j);
          mr[i] += v;
          mc[j] += v;
          mf += v;
        }
      for (double& v : mr) v /= n2;
      for (double& v : mc) v /= n1;
      mf /= static_cast<double>(n1) * n2;
      for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j) {
          const double d = field.at(i, j) - mr[i] - mc[j] + mf;
          acc += d * d;
        }
      break;
    }
  }
  return w * acc;
}

std::vector<double> sample_wiener_path(int n, std::uint64_t seed,
                                       std::uint64_t stream, double* w_at_one) {
  if (n < 2) throw std::invalid_argument("path resolution must be >= 2");
  const auto w = cell_widths(n);
  std::vector<double> x(static_cast<std::size_t>(n));
  double acc = 0.0;
  for (int k = 0; k <= n; ++k) {
    acc += std::sqrt(w[k]) * rng::normal(seed, stream, static_cast<std::uint64_t>(k));
    if (k < n) x[k] = acc;
  }
  if (w_at_one) *w_at_one = acc;
  return x;
}

std::vector<double> sample_bridge_path(int n, std::uint64_t seed,
                                       std::uint64_t stream) {
  double w1 = 0.0;
  std::vector<double> x = sample_wiener_path(n, seed, stream, &w1);
  for (int i = 0; i < n; ++i) x[i] -= ((i + 0.5) / n) * w1;
  return x;
}

double quad_path(std::span<const double> x, CenteringKind c) {
  if (c != CenteringKind::None && c != CenteringKind::FullMean)
    throw std::invalid_argument("1-D paths support None or FullMean centering");
  double m = 0.0;
  if (c == CenteringKind::FullMean) {
    for (double v : x) m += v;
    m /= static_cast<double>(x.size());
  }
  double acc = 0.0;
  for (double v : x) acc += (v - m) * (v - m);
  return acc / static_cast<double>(x.size());
}

namespace {

std::string fmt(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_row(std::ofstream& os, std::span<const double> row) {
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (j) os << ',';
    os << fmt(row[j]);
  }
  os << '\n';
}

std::vector<double> parse_row(const std::string& line) {
  std::vector<double> out;
  const char* p = line.data();
  const char* end = line.data() + line.size();
  while (p < end) {
    double v = 0.0;
    auto res = std::from_chars(p, end, v);
    if (res.ec != std::errc{}) throw std::runtime_error("bad CSV number");
    out.push_back(v);
    p = res.ptr;
    if (p < end && *p == ',') ++p;
  }
  return out;
}

ProcessKind kind_from_string(const std::string& s) {
  for (ProcessKind k :
       {ProcessKind::Sheet, ProcessKind::BridgeB, ProcessKind::TiedDownB0,
        ProcessKind::Kiefer1, ProcessKind::Kiefer2, ProcessKind::Wiener1D,
        ProcessKind::Bridge1D, ProcessKind::CenteredWiener1D}) {
    if (s == to_string(k)) return k;
  }
  throw std::runtime_error("unknown process kind: " + s);
}

}  // namespace

void save_field_csv(const GridField& field, const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path.string());
  os << "# sheetlaw-field version=" << kVersion << " n=" << field.n1
     << " n2=" << field.n2 << " seed=" << field.seed
     << " kind=" << to_string(field.kind)
     << " boundary=" << (field.has_boundary ? 1 : 0) << '\n';
  for (int i = 0; i < field.n1; ++i)
    write_row(os, std::span<const double>(&field.values[static_cast<std::size_t>(i) * field.n2],
                                          static_cast<std::size_t>(field.n2)));
  if (field.has_boundary) {
    write_row(os, field.edge_row);
    write_row(os, field.edge_col);
    os << fmt(field.corner) << '\n';
  }
}

GridField load_field_csv(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path.string());
  std::string header;
  std::getline(is, header);
  GridField f;
  int boundary = 0;
  {
    std::istringstream ss(header);
    std::string tok;
    while (ss >> tok) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
      if (key == "n") f.n1 = std::stoi(val);
      else if (key == "n2") f.n2 = std::stoi(val);
      else if (key == "seed") f.seed = std::stoull(val);
      else if (key == "kind") f.kind = kind_from_string(val);
      else if (key == "boundary") boundary = std::stoi(val);
    }
  }
  if (f.n1 < 2 || f.n2 < 2) throw std::runtime_error("bad field header");
  f.values.reserve(static_cast<std::size_t>(f.n1) * f.n2);
  std::string line;
  for (int i = 0; i < f.n1; ++i) {
    if (!std::getline(is, line)) throw std::runtime_error("truncated field file");
    const auto row = parse_row(line);
    if (static_cast<int>(row.size()) != f.n2) throw std::runtime_error("bad row width");
    f.values.insert(f.values.end(), row.begin(), row.end());
  }
  if (boundary) {
    std::getline(is, line);
    f.edge_row = parse_row(line);
    std::getline(is, line);
    f.edge_col = parse_row(line);
    std::getline(is, line);
    f.corner = parse_row(line).at(0);
    f.has_boundary = true;
  }
  return f;
}

}  // namespace sheetlaw
