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

// Command-line front end. Machine output (CSV/JSON) goes to files or stdout;
// human-readable summaries go to stderr so pipelines stay clean.
// Exit codes: 0 success / all checks pass, 1 verification failure, 2 usage.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sheetlaw/closed_form.hpp"
#include "sheetlaw/cumulants.hpp"
#include "sheetlaw/fields.hpp"
#include "sheetlaw/spectral.hpp"
#include "sheetlaw/verify.hpp"
#include "sheetlaw/version.hpp"

namespace {

using namespace sheetlaw;

const std::map<std::string, ProcessKind> kProcessNames = {
    {"sheet", ProcessKind::Sheet},     {"b", ProcessKind::BridgeB},
    {"b0", ProcessKind::TiedDownB0},   {"k1", ProcessKind::Kiefer1},
    {"k2", ProcessKind::Kiefer2},      {"w1d", ProcessKind::Wiener1D},
    {"b1d", ProcessKind::Bridge1D},    {"z1d", ProcessKind::CenteredWiener1D}};

const std::map<std::string, CenteringKind> kCenteringNames = {
    {"none", CenteringKind::None},
    {"full", CenteringKind::FullMean},
    {"row", CenteringKind::RowMean},
    {"col", CenteringKind::ColMean},
    {"double", CenteringKind::DoubleMean}};

const std::map<std::string, IdentityId> kIdentityNames = {
    {"WATSON", IdentityId::WATSON}, {"FUB1", IdentityId::FUB1},
    {"FUB2", IdentityId::FUB2},     {"FUB3", IdentityId::FUB3},
    {"FUB4", IdentityId::FUB4},     {"T3P1", IdentityId::T3P1},
    {"T3P2", IdentityId::T3P2},     {"T3P3", IdentityId::T3P3},
    {"LEMMA4", IdentityId::LEMMA4}, {"SODD_IS_CHALF", IdentityId::SODD_IS_CHALF},
    {"T6I", IdentityId::T6I},       {"T6J", IdentityId::T6J},
    {"T6Y", IdentityId::T6Y}};

std::vector<double> parse_u_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(std::stod(tok));
  }
  if (out.empty()) throw CLI::ValidationError("u list must be nonempty");
  return out;
}

void emit_json(const nlohmann::ordered_json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << '\n';
  } else {
    std::ofstream os(out_path);
    if (!os) throw std::runtime_error("cannot open " + out_path);
    os << j.dump(2) << '\n';
  }
}

int run(int argc, char** argv) {
  CLI::App app{"sheetlaw: identities in law for quadratic functionals of "
               "bivariate Gaussian fields"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  // simulate
  std::string sim_process = "sheet", sim_out;
  int sim_n = 32;
  std::uint64_t sim_seed = 1;
  auto* sim = app.add_subcommand("simulate", "sample a field on the midpoint grid");
  sim->add_option("--process", sim_process, "sheet|b|b0|k1|k2")
      ->check(CLI::IsMember({"sheet", "b", "b0", "k1", "k2"}));
  sim->add_option("--n", sim_n, "grid resolution")->check(CLI::Range(2, 4096));
  sim->add_option("--seed", sim_seed, "RNG seed");
  sim->add_option("--out", sim_out, "output CSV path")->required();

  // spectrum
  std::string sp_kernel = "b0", sp_centering = "none", sp_out, sp_json;
  int sp_n = 32, sp_count = 0;
  auto* sp = app.add_subcommand("spectrum", "eigenvalues of a covariance operator");
  sp->add_option("--kernel", sp_kernel, "sheet|b|b0|k1|k2|w1d|b1d|z1d");
  sp->add_option("--centering", sp_centering, "none|full|row|col|double");
  sp->add_option("--n", sp_n, "grid resolution")->check(CLI::Range(2, 128 * 128));
  sp->add_option("--analytic-count", sp_count,
                 "use the analytic spectrum with this many eigenvalues (1-D kinds)");
  sp->add_option("--out", sp_out, "output CSV path");
  sp->add_option("--json", sp_json, "output JSON path");

  // laplace
  std::string lp_process = "b0", lp_transform, lp_u = "1", lp_out;
  auto* lp = app.add_subcommand("laplace", "closed-form Laplace/Fourier transforms");
  lp->add_option("--process", lp_process, "b|b0|k (Prop5_* transforms)")
      ->check(CLI::IsMember({"b", "b0", "k"}));
  lp->add_option("--transform", lp_transform, "t6i|t6j|t6y (instead of --process)")
      ->check(CLI::IsMember({"t6i", "t6j", "t6y"}));
  lp->add_option("--u", lp_u, "comma list of u values");
  lp->add_option("--out", lp_out, "write u,value CSV here instead of stdout");

  // cumulants
  int cu_n = 8, cu_mmax = 6, cu_which = 0;
  std::uint64_t cu_seed = 1;
  std::string cu_out;
  auto* cu = app.add_subcommand("cumulants",
                                "stochastic-Fubini cyclic-trace check");
  cu->add_option("--n", cu_n, "kernel grid resolution")->check(CLI::Range(2, 24));
  cu->add_option("--m-max", cu_mmax, "highest cumulant order")->check(CLI::Range(2, 12));
  cu->add_option("--phi", cu_which, "0 = random kernel, 1..4 = the indicator-minus-product kernels")
      ->check(CLI::Range(0, 4));
  cu->add_option("--seed", cu_seed, "seed for the random kernel");
  cu->add_option("--out", cu_out, "output JSON path");

  // shared verification config flags
  VerifyConfig cfg;
  std::string cfg_u = "0.5,1,2";
  auto add_cfg = [&](CLI::App* cmd) {
    cmd->add_option("--n", cfg.n, "2-D grid resolution (even)");
    cmd->add_option("--n1d", cfg.n1d, "1-D grid resolution (even)");
    cmd->add_option("--samples", cfg.samples, "MC samples per side");
    cmd->add_option("--alpha", cfg.alpha, "MC test level");
    cmd->add_option("--seed", cfg.seed, "RNG seed");
    cmd->add_option("--u", cfg_u, "comma list of Laplace arguments");
    cmd->add_option("--t6i-grid-n", cfg.t6i_grid_n,
                    "grid factor resolution for the T6I closed-form check");
  };

  // verify
  std::string vf_identity = "WATSON", vf_channel = "spectral", vf_out;
  bool vf_negative = false;
  auto* vf = app.add_subcommand("verify", "verify one identity on one channel");
  vf->add_option("--identity", vf_identity, "identity tag (e.g. T3P2)");
  vf->add_option("--channel", vf_channel, "spectral|mc|closed-form")
      ->check(CLI::IsMember({"spectral", "mc", "closed-form"}));
  vf->add_flag("--negative-control", vf_negative,
               "run the deliberately falsified identity instead");
  vf->add_option("--out", vf_out, "output JSON path");
  add_cfg(vf);

  // suite
  std::string su_out;
  auto* su = app.add_subcommand("suite", "run every identity on every channel");
  su->add_option("--out", su_out, "output JSON path");
  add_cfg(su);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return 0;
  } catch (const CLI::CallForVersion& e) {
    app.exit(e);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (sim->parsed()) {
    const ProcessKind kind = kProcessNames.at(sim_process);
    GridField f = sample_sheet(sim_n, sim_seed);
    if (kind != ProcessKind::Sheet) f = derive(f, kind);
    save_field_csv(f, sim_out);
    std::cerr << "wrote " << sim_out << " (process=" << sim_process
              << " n=" << sim_n << " seed=" << sim_seed << ")\n";
    return 0;
  }

  if (sp->parsed()) {
    const ProcessKind kind = kProcessNames.at(sp_kernel);
    Spectrum s;
    if (sp_count > 0) {
      s = analytic_spectrum(kind, sp_count);
    } else {
      s = grid_spectrum(CovKernel(kind, kCenteringNames.at(sp_centering)), sp_n);
    }
    if (!sp_out.empty()) save_spectrum_csv(s, sp_out);
    if (!sp_json.empty()) emit_json(spectrum_to_json(s), sp_json);
    if (sp_out.empty() && sp_json.empty()) save_spectrum_csv(s, "/dev/stdout");
    std::cerr << "spectrum " << s.source << ": " << s.eigs.size()
              << " eigenvalues, trace " << s.trace() << "\n";
    return 0;
  }

  if (lp->parsed()) {
    const std::vector<double> us = parse_u_list(lp_u);
    std::optional<TransformId> id;
    if (!lp_transform.empty()) {
      id = lp_transform == "t6i"   ? TransformId::Thm6_I
           : lp_transform == "t6j" ? TransformId::Thm6_J
                                   : TransformId::Thm6_Y;
    } else {
      id = lp_process == "b"    ? TransformId::Prop5_B
           : lp_process == "b0" ? TransformId::Prop5_B0
                                : TransformId::Prop5_K;
    }
    if (!lp_out.empty()) {
      save_transform_curve_csv(*id, us, lp_out);
      std::cerr << "wrote " << lp_out << "\n";
    } else {
      const bool prop5 = lp_transform.empty();
      for (double u : us) {
        const double v = prop5 ? prop5_laplace(*id, u) : thm6_transform(*id, u);
        std::printf("%.12g\n", v);
      }
    }
    return 0;
  }

  if (cu->parsed()) {
    Kernel4 phi = cu_which == 0 ? random_kernel4(cu_n, cu_seed)
                                : corollary2_kernel(cu_which, cu_n);
    const FubiniReport rep = fubini_check(phi, cu_mmax);
    nlohmann::ordered_json j = rep.to_json();
    j["phi"] = cu_which == 0 ? "random" : ("corollary2_" + std::to_string(cu_which));
    j["seed"] = cu_seed;
    j["version"] = kVersion;
    emit_json(j, cu_out);
    std::cerr << "fubini_check n=" << cu_n << " m_max=" << cu_mmax << ": "
              << (rep.pass ? "pass" : "FAIL") << "\n";
    return rep.pass ? 0 : 1;
  }

  if (vf->parsed() || su->parsed()) {
    cfg.u_grid = parse_u_list(cfg_u);
    if (vf->parsed()) {
      VerdictReport rep;
      if (vf_negative) {
        rep = vf_channel == "mc" ? negative_control_mc(cfg)
                                 : negative_control_spectral(cfg);
      } else {
        const auto it = kIdentityNames.find(vf_identity);
        if (it == kIdentityNames.end()) {
          std::cerr << "unknown identity: " << vf_identity << "\n";
          return 2;
        }
        rep = vf_channel == "spectral"   ? verify_spectral(it->second, cfg)
              : vf_channel == "mc"       ? verify_mc(it->second, cfg)
                                         : verify_closed_form(it->second, cfg);
      }
      emit_json(rep.to_json(), vf_out);
      std::cerr << to_string(rep.identity) << "/" << to_string(rep.channel)
                << ": " << (rep.pass ? "pass" : "FAIL")
                << " (statistic=" << rep.statistic
                << ", threshold=" << rep.threshold << ")\n";
      return rep.pass ? 0 : 1;
    }
    const auto reports = run_suite(cfg);
    emit_json(suite_to_json(reports, cfg), su_out);
    int failures = 0;
    for (const auto& rep : reports) {
      std::cerr << to_string(rep.identity) << "/" << to_string(rep.channel)
                << ": "
                << (rep.inconclusive ? "inconclusive"
                                     : (rep.pass ? "pass" : "FAIL"))
                << "\n";
      if (!rep.inconclusive && !rep.pass) ++failures;
    }
    std::cerr << reports.size() << " reports, " << failures << " failures\n";
    return failures == 0 ? 0 : 1;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
