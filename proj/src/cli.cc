// Copyright 2026 The AML Authors.
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

#include "aml/cli.h"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>

#include "aml/afm.h"
#include "aml/error.h"
#include "aml/io.h"
#include "aml/jl.h"
#include "aml/metrics.h"
#include "aml/parallel.h"
#include "aml/perturb.h"
#include "aml/pmme.h"
#include "aml/toy.h"

namespace aml::cli {
namespace fs = std::filesystem;
namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Dims2 {
  std::size_t h = 0;
  std::size_t w = 0;
};

// "14x14" -> {14, 14}
Dims2 parse_dims(const std::string& text, const char* flag) {
  const auto x = text.find('x');
  Dims2 d;
  try {
    if (x == std::string::npos) throw std::invalid_argument(text);
    std::size_t used = 0;
    d.h = std::stoul(text.substr(0, x), &used);
    if (used != x) throw std::invalid_argument(text);
    const std::string rest = text.substr(x + 1);
    d.w = std::stoul(rest, &used);
    if (used != rest.size()) throw std::invalid_argument(text);
  } catch (const std::exception&) {
    throw UsageError(std::string(flag) + " expects HxW, got '" + text + "'");
  }
  if (d.h == 0 || d.w == 0) throw UsageError(std::string(flag) + " dimensions must be positive");
  return d;
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::vector<fs::path> sorted_files(const fs::path& dir, const std::string& ext) {
  if (!fs::is_directory(dir)) fail(ErrorCode::kIo, "not a directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ext) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

struct PmmeArgs {
  std::string visual, text, out, grid = "14x14";
  std::size_t da = 2048;
  std::uint64_t seed = 0;
};

struct AfmArgs {
  std::string sim, image, out, mask_out, block = "32x32";
  double tau = 0.4, rho = 0.25;
  std::uint64_t seed = 0;
};

struct JlArgs {
  std::size_t m = 0, n = 0, da = 0;
  double sigma = 0.0, eps = 0.0;
};

struct VerifyArgs {
  std::string mode;
  std::size_t trials = 0, da = 2048, di = 512, dt = 256, input_dim = 2;
  double eps = 0.2;
  std::uint64_t seed = 0;
};

struct MetricsArgs {
  std::string pred_dir, gt_dir;
};

struct PerturbArgs {
  std::string kind, input, output;
  std::optional<std::uint64_t> seed;
};

struct ToyArgs {
  std::size_t samples = 200, epochs = 20, da = 256;
  std::string block = "8x8", history;
  double tau = 0.4, rho = 0.25, lr = 0.5;
  std::uint64_t seed = 0;
};

void run_pmme(const PmmeArgs& a, std::ostream& out) {
  const Dims2 grid = parse_dims(a.grid, "--grid");
  const Tensor visual = read_tensor(a.visual);
  const Tensor text = read_tensor(a.text);
  require(visual.rank() == 2 && text.rank() == 2, ErrorCode::kShapeMismatch,
          "visual and text tensors must be matrices");
  const ProjectionPair proj = sample_projection(a.seed, visual.cols(), text.cols(), a.da);
  const SimilarityMap s = pmme(visual, text, proj, grid.h, grid.w);
  write_tensor(s.grid(), a.out);
  out << "mean_S=" << fixed(s.mean(), 6) << "\n";
}

void run_afm(const AfmArgs& a, std::ostream& out) {
  const Dims2 block = parse_dims(a.block, "--block");
  AmlConfig cfg;
  cfg.tau = a.tau;
  cfg.rho = a.rho;
  cfg.block_h = block.h;
  cfg.block_w = block.w;
  cfg.seed = a.seed;
  const SimilarityMap s(read_tensor(a.sim));
  const ImageRGB image = read_ppm(a.image);
  const AfmResult r = afm(s, image, cfg);
  write_ppm(r.masked, a.out);
  if (!a.mask_out.empty()) write_pgm(r.mask.to_bitmap(), a.mask_out);
  out << "masked_blocks=" << r.mask.count() << "\n"
      << "total_blocks=" << r.mask.rows() * r.mask.cols() << "\n"
      << "masked_fraction=" << fixed(r.mask.masked_fraction(), 6) << "\n";
}

void run_verify(const VerifyArgs& a, std::ostream& out) {
  DistortionReport report;
  if (a.mode == "block-distance") {
    report = mc_block_distance_distortion(a.seed, a.trials, a.di, a.dt, a.da, a.eps);
  } else if (a.mode == "cross-inner") {
    report = mc_cross_inner_error(a.seed, a.trials, a.di, a.dt, a.da, a.eps);
  } else if (a.mode == "chi2-tail") {
    report = mc_chi2_tail(a.seed, a.trials, a.da, a.eps, a.input_dim);
  } else {
    throw UsageError("unknown --mode '" + a.mode + "'");
  }
  out << format_report(report);
  if (a.mode == "chi2-tail") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "analytic_bound=%.6g\n", chi2_tail_bound(a.da, a.eps));
    out << buf;
  }
}

void run_metrics(const MetricsArgs& a, std::ostream& out) {
  const auto preds = sorted_files(a.pred_dir, ".pgm");
  const auto gts = sorted_files(a.gt_dir, ".pgm");
  require(!preds.empty(), ErrorCode::kInvalidArgument, "no .pgm files in " + a.pred_dir);
  require(preds.size() == gts.size(), ErrorCode::kInvalidArgument,
          "prediction and ground-truth directories hold different file counts");
  std::vector<EvalSample> samples;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    require(preds[i].filename() == gts[i].filename(), ErrorCode::kInvalidArgument,
            "unpaired file " + preds[i].filename().string());
    samples.push_back(EvalSample{read_pgm(preds[i]), read_pgm(gts[i])});
  }
  out << metrics_report(samples);
}

void run_perturb(const PerturbArgs& a, std::ostream& out) {
  PerturbKind kind{PerturbType::kHaze, a.seed};
  try {
    kind.type = parse_perturb_type(a.kind);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  if (kind.stochastic() && !a.seed) throw UsageError(a.kind + " requires --seed");
  if (!kind.stochastic() && a.seed) throw UsageError(a.kind + " does not take --seed");
  const fs::path in(a.input);
  const fs::path dst(a.output);
  if (fs::is_directory(in)) {
    fs::create_directories(dst);
    const auto files = sorted_files(in, ".ppm");
    for (const fs::path& f : files) {
      const fs::path target = dst / (f.stem().string() + "_" + a.kind + ".ppm");
      write_ppm(perturb(read_ppm(f), kind), target);
    }
    out << "perturbed=" << files.size() << "\n";
    return;
  }
  write_ppm(perturb(read_ppm(in), kind), dst);
  out << "perturbed=1\n";
}

void run_toy(const ToyArgs& a, std::ostream& out) {
  const Dims2 block = parse_dims(a.block, "--block");
  AmlConfig cfg = toy::default_config(a.seed);
  cfg.tau = a.tau;
  cfg.rho = a.rho;
  cfg.block_h = block.h;
  cfg.block_w = block.w;
  cfg.d_a = a.da;
  const auto data = toy::synth_dataset(a.seed, a.samples);
  const toy::TrainHistory h = toy::train(data, a.epochs, cfg, a.lr, a.seed);
  if (!a.history.empty()) {
    const std::string csv = toy::history_csv(h);
    write_file(a.history, std::span(reinterpret_cast<const std::uint8_t*>(csv.data()),
                                    csv.size()));
  }
  out << "first_loss=" << fixed(h.loss.front(), 6) << "\n"
      << "final_loss=" << fixed(h.loss.back(), 6) << "\n"
      << "final_masked_fraction=" << fixed(h.masked_fraction.back(), 6) << "\n"
      << "final_mean_S=" << fixed(h.mean_similarity.back(), 6) << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  configure_threads_from_env();
  CLI::App app{"aml: similarity maps, block masking, bounds and metrics"};
  app.require_subcommand(1);

  PmmeArgs pm;
  auto* pmme_cmd = app.add_subcommand("pmme", "patch-token alignment heatmap");
  pmme_cmd->add_option("--visual", pm.visual, "[H_f*W_f, D_i] AMLT")->required();
  pmme_cmd->add_option("--text", pm.text, "[N_l, D_t] AMLT")->required();
  pmme_cmd->add_option("--da", pm.da, "projection dimension");
  pmme_cmd->add_option("--grid", pm.grid, "patch grid HxW");
  pmme_cmd->add_option("--seed", pm.seed, "projection seed")->required();
  pmme_cmd->add_option("--out", pm.out, "output [H_f, W_f] AMLT")->required();

  AfmArgs af;
  auto* afm_cmd = app.add_subcommand("afm", "alignment-aware block masking");
  afm_cmd->add_option("--sim", af.sim, "similarity map AMLT")->required();
  afm_cmd->add_option("--image", af.image, "input PPM")->required();
  afm_cmd->add_option("--tau", af.tau);
  afm_cmd->add_option("--rho", af.rho);
  afm_cmd->add_option("--block", af.block, "block size HxW");
  afm_cmd->add_option("--seed", af.seed, "dropout seed")->required();
  afm_cmd->add_option("--out", af.out, "masked PPM")->required();
  afm_cmd->add_option("--mask-out", af.mask_out, "block mask PGM");

  JlArgs jd;
  auto* dim_cmd = app.add_subcommand("jl-dim", "minimum projection dimension");
  dim_cmd->add_option("--m", jd.m)->required();
  dim_cmd->add_option("--n", jd.n)->required();
  dim_cmd->add_option("--sigma", jd.sigma)->required();
  dim_cmd->add_option("--eps", jd.eps)->required();

  JlArgs je;
  auto* eps_cmd = app.add_subcommand("jl-eps", "distortion bound for a projection dimension");
  eps_cmd->add_option("--da", je.da)->required();
  eps_cmd->add_option("--m", je.m)->required();
  eps_cmd->add_option("--n", je.n)->required();
  eps_cmd->add_option("--sigma", je.sigma)->required();

  VerifyArgs vf;
  auto* verify_cmd = app.add_subcommand("jl-verify", "Monte Carlo checks of the bounds");
  verify_cmd->add_option("--mode", vf.mode)
      ->required()
      ->check(CLI::IsMember({"block-distance", "cross-inner", "chi2-tail"}));
  verify_cmd->add_option("--trials", vf.trials)->required();
  verify_cmd->add_option("--seed", vf.seed)->required();
  verify_cmd->add_option("--da", vf.da, "projection dimension (d for chi2-tail)");
  verify_cmd->add_option("--di", vf.di);
  verify_cmd->add_option("--dt", vf.dt);
  verify_cmd->add_option("--eps", vf.eps);
  verify_cmd->add_option("--input-dim", vf.input_dim);

  MetricsArgs mt;
  auto* metrics_cmd = app.add_subcommand("metrics", "mIoU / oIoU / P@X over mask folders");
  metrics_cmd->add_option("--pred-dir", mt.pred_dir)->required();
  metrics_cmd->add_option("--gt-dir", mt.gt_dir)->required();

  PerturbArgs pt;
  auto* perturb_cmd = app.add_subcommand("perturb", "robustness transformations");
  perturb_cmd->add_option("--kind", pt.kind)->required();
  perturb_cmd->add_option("--seed", pt.seed);
  perturb_cmd->add_option("input", pt.input, "PPM file or directory")->required();
  perturb_cmd->add_option("output", pt.output, "PPM file or directory")->required();

  ToyArgs ty;
  auto* toy_cmd = app.add_subcommand("toy-train", "two-stage training on synthetic data");
  toy_cmd->add_option("--samples", ty.samples);
  toy_cmd->add_option("--epochs", ty.epochs);
  toy_cmd->add_option("--seed", ty.seed)->required();
  toy_cmd->add_option("--history", ty.history, "CSV output");
  toy_cmd->add_option("--tau", ty.tau);
  toy_cmd->add_option("--rho", ty.rho);
  toy_cmd->add_option("--lr", ty.lr);
  toy_cmd->add_option("--da", ty.da);
  toy_cmd->add_option("--block", ty.block);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (pmme_cmd->parsed()) run_pmme(pm, out);
    if (afm_cmd->parsed()) run_afm(af, out);
    if (dim_cmd->parsed()) out << jl_dim_bound(jd.m, jd.n, jd.sigma, jd.eps) << "\n";
    if (eps_cmd->parsed()) out << fixed(jl_epsilon(je.da, je.m, je.n, je.sigma), 6) << "\n";
    if (verify_cmd->parsed()) run_verify(vf, out);
    if (metrics_cmd->parsed()) run_metrics(mt, out);
    if (perturb_cmd->parsed()) run_perturb(pt, out);
    if (toy_cmd->parsed()) run_toy(ty, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error (" << error_code_name(e.code()) << "): " << e.what() << "\n";
    return e.code() == ErrorCode::kIo ? kExitIo : kExitValidation;
  } catch (const fs::filesystem_error& e) {
    err << "error (io error): " << e.what() << "\n";
    return kExitIo;
  }
  return kExitOk;
}

}  // namespace aml::cli
