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

#include "aml/toy.h"

#include <cmath>
#include <cstdio>
#include <cstring>

#include "aml/bilinear.h"
#include "aml/error.h"
#include "aml/rng.h"

namespace aml::toy {
namespace {

constexpr double kNoiseTokenStddev = 0.1;
constexpr double kHeadInitStddev = 0.01;
constexpr int kMaxPlacementAttempts = 10000;

bool overlaps(const Square& a, const Square& b) {
  return a.left < b.left + b.side && b.left < a.left + a.side && a.top < b.top + b.side &&
         b.top < a.top + a.side;
}

Square place_square(RngStream& rng, const ToySpec& spec, Rgb color) {
  Square s{};
  s.side = spec.min_side + rng.next_below(spec.max_side - spec.min_side + 1);
  s.top = rng.next_below(spec.image_size - s.side + 1);
  s.left = rng.next_below(spec.image_size - s.side + 1);
  s.color = color;
  return s;
}

void paint(ImageRGB& image, const Square& s) {
  for (std::size_t r = s.top; r < s.top + s.side; ++r)
    for (std::size_t c = s.left; c < s.left + s.side; ++c) image.set(r, c, s.color);
}

void check_spec(const ToySpec& spec) {
  require(spec.grid >= 1 && spec.image_size % spec.grid == 0, ErrorCode::kInvalidArgument,
          "toy image size must be a multiple of the patch grid");
  require(spec.min_side >= 1 && spec.min_side <= spec.max_side &&
              2 * spec.max_side <= spec.image_size,
          ErrorCode::kInvalidArgument, "toy square sides do not fit the image");
  require(spec.d_text >= 7 && spec.n_tokens >= 2, ErrorCode::kInvalidArgument,
          "toy tokens need d_text >= 7 and at least two rows");
}

void check_image(const ToySpec& spec, const ImageRGB& image) {
  require(image.width() == spec.image_size && image.height() == spec.image_size,
          ErrorCode::kShapeMismatch, "toy image does not match the model geometry");
}

}  // namespace

const std::vector<Rgb>& palette() {
  static const std::vector<Rgb> colors = {
      {220, 40, 40}, {40, 200, 60}, {50, 80, 230}, {230, 210, 40}};
  return colors;
}

std::size_t quadrant(const Square& s, std::size_t image_size) {
  const std::size_t cy2 = 2 * s.top + s.side;  // twice the centre
  const std::size_t cx2 = 2 * s.left + s.side;
  return (cy2 >= image_size ? 2 : 0) + (cx2 >= image_size ? 1 : 0);
}

std::vector<ToySample> synth_dataset(std::uint64_t seed, std::size_t n, const ToySpec& spec) {
  require(n >= 1, ErrorCode::kInvalidArgument, "dataset size must be >= 1");
  check_spec(spec);
  RngStream rng(seed, streams::kToyData);
  const auto& colors = palette();
  std::vector<ToySample> data;
  data.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    ToySample s;
    std::vector<std::uint8_t> px(3 * spec.image_size * spec.image_size);
    for (auto& v : px) v = static_cast<std::uint8_t>(rng.next_below(64));
    s.image = ImageRGB(spec.image_size, spec.image_size, std::move(px));

    const std::size_t tc = rng.next_below(colors.size());
    const std::size_t dc = (tc + 1 + rng.next_below(colors.size() - 1)) % colors.size();
    s.target = place_square(rng, spec, colors[tc]);
    int attempts = 0;
    do {
      require(++attempts <= kMaxPlacementAttempts, ErrorCode::kInvalidArgument,
              "could not place a non-overlapping distractor");
      s.distractor = place_square(rng, spec, colors[dc]);
    } while (overlaps(s.target, s.distractor));
    paint(s.image, s.target);
    paint(s.image, s.distractor);

    s.gt = MaskBitmap(spec.image_size, spec.image_size);
    for (std::size_t r = s.target.top; r < s.target.top + s.target.side; ++r)
      for (std::size_t c = s.target.left; c < s.target.left + s.target.side; ++c)
        s.gt.set(r, c, true);

    // Row 0 carries the target colour in the same [0, 1] RGB units as the
    // patch statistics, row 1 one-hot encodes the quadrant.
    s.tokens = Tensor::matrix(spec.n_tokens, spec.d_text);
    for (int k = 0; k < 3; ++k) s.tokens(0, k) = s.target.color[k] / 255.0f;
    s.tokens(1, 3 + quadrant(s.target, spec.image_size)) = 1.0f;
    for (std::size_t r = 2; r < spec.n_tokens; ++r)
      for (std::size_t c = 0; c < spec.d_text; ++c)
        s.tokens(r, c) = static_cast<float>(rng.next_gaussian(0.0, kNoiseTokenStddev));
    data.push_back(std::move(s));
  }
  return data;
}

std::uint64_t ToyModel::theta_checksum() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](const std::vector<double>& values) {
    for (double v : values) {
      unsigned char bytes[sizeof(double)];
      std::memcpy(bytes, &v, sizeof(double));
      for (unsigned char b : bytes) {
        h ^= b;
        h *= 0x100000001b3ULL;
      }
    }
  };
  mix(theta_pos);
  mix(theta_neg);
  return h;
}

ToyModel make_model(std::uint64_t seed, const ToySpec& spec) {
  check_spec(spec);
  ToyModel m;
  m.spec = spec;
  m.encoder = Tensor::matrix(kPatchStats, spec.d_image);
  RngStream rng(seed, streams::kToyModel);
  for (float& v : m.encoder.data()) v = static_cast<float>(rng.next_gaussian());
  m.theta_pos.resize(m.head_width());
  m.theta_neg.resize(m.head_width());
  for (double& v : m.theta_pos) v = rng.next_gaussian(0.0, kHeadInitStddev);
  for (double& v : m.theta_neg) v = rng.next_gaussian(0.0, kHeadInitStddev);
  return m;
}

Tensor patch_statistics(const ImageRGB& image, const ToySpec& spec) {
  check_image(spec, image);
  const std::size_t g = spec.grid;
  const std::size_t ps = spec.patch_size();
  Tensor stats = Tensor::matrix(g * g, kPatchStats);
  const double inv = 1.0 / (255.0 * static_cast<double>(ps * ps));
  for (std::size_t i = 0; i < g; ++i) {
    for (std::size_t j = 0; j < g; ++j) {
      double sum[3] = {0.0, 0.0, 0.0};
      for (std::size_t r = i * ps; r < (i + 1) * ps; ++r) {
        for (std::size_t c = j * ps; c < (j + 1) * ps; ++c) {
          const Rgb px = image.at(r, c);
          for (int k = 0; k < 3; ++k) sum[k] += px[k];
        }
      }
      auto row = stats.row(i * g + j);
      for (int k = 0; k < 3; ++k) row[k] = static_cast<float>(sum[k] * inv);
      row[3] = static_cast<float>((static_cast<double>(i) + 0.5) / static_cast<double>(g));
      row[4] = static_cast<float>((static_cast<double>(j) + 0.5) / static_cast<double>(g));
      row[5] = 1.0f;
    }
  }
  return stats;
}

Tensor encode_patches(const ToyModel& model, const ImageRGB& image) {
  return project(patch_statistics(image, model.spec), model.encoder);
}

Tensor encode_text(const ToySample& sample) { return sample.tokens; }

std::vector<double> head_features(const ToyModel& model, const ImageRGB& image,
                                  const Tensor& tokens) {
  const ToySpec& spec = model.spec;
  require(tokens.rank() == 2 && tokens.cols() == spec.d_text, ErrorCode::kShapeMismatch,
          "toy tokens must be [n, d_text]");
  const Tensor visual = encode_patches(model, image);
  std::vector<double> pooled(spec.d_text, 0.0);
  for (std::size_t r = 0; r < tokens.rows(); ++r)
    for (std::size_t c = 0; c < spec.d_text; ++c) pooled[c] += tokens(r, c);
  for (double& v : pooled) v /= static_cast<double>(tokens.rows());

  const std::size_t width = model.head_width();
  const std::size_t patches = visual.rows();
  std::vector<double> x(patches * width);
  for (std::size_t p = 0; p < patches; ++p) {
    double* row = x.data() + p * width;
    for (std::size_t k = 0; k < spec.d_image; ++k) row[k] = visual(p, k);
    for (std::size_t k = 0; k < spec.d_text; ++k) row[spec.d_image + k] = pooled[k];
    row[width - 1] = 1.0;
  }
  return x;
}

namespace {

std::vector<double> head_logits(const std::vector<double>& theta,
                                const std::vector<double>& features, std::size_t width) {
  const std::size_t patches = features.size() / width;
  std::vector<double> z(patches, 0.0);
  for (std::size_t p = 0; p < patches; ++p) {
    const double* row = features.data() + p * width;
    double acc = 0.0;
    for (std::size_t k = 0; k < width; ++k) acc += theta[k] * row[k];
    z[p] = acc;
  }
  return z;
}

std::vector<double> upsample_logits(const std::vector<double>& patch, const ToySpec& spec,
                                    const std::vector<AxisTap>& taps) {
  const std::size_t n = spec.image_size;
  std::vector<double> out(n * n);
  bilinear_resize<double, double>(patch, spec.grid, spec.grid, std::span<double>(out), n, n,
                                  taps, taps);
  return out;
}

}  // namespace

HeadEval head_loss_and_grad(const ToyModel& model, const std::vector<double>& features,
                            const MaskBitmap& gt) {
  const ToySpec& spec = model.spec;
  const std::size_t width = model.head_width();
  const std::size_t patches = spec.grid * spec.grid;
  require(features.size() == patches * width, ErrorCode::kShapeMismatch,
          "head features have the wrong size");
  require(gt.width() == spec.image_size && gt.height() == spec.image_size,
          ErrorCode::kShapeMismatch, "ground truth does not match the model geometry");

  HeadEval eval;
  eval.patch_pos = head_logits(model.theta_pos, features, width);
  eval.patch_neg = head_logits(model.theta_neg, features, width);
  const auto taps = bilinear_taps(spec.grid, spec.image_size);
  const auto pos = upsample_logits(eval.patch_pos, spec, taps);
  const auto neg = upsample_logits(eval.patch_neg, spec, taps);

  const auto bits = gt.bits();
  const double inv_n = 1.0 / static_cast<double>(bits.size());
  std::vector<double> pixel_grad(bits.size());
  double loss = 0.0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    const double diff = pos[i] - neg[i];
    const bool y = bits[i] != 0;
    loss += bce_from_logit(diff, y);
    pixel_grad[i] = (logistic(diff) - (y ? 1.0 : 0.0)) * inv_n;
  }
  eval.loss = loss * inv_n;

  std::vector<double> patch_grad(patches);
  bilinear_resize_adjoint(pixel_grad, spec.image_size, spec.image_size, patch_grad,
                          spec.grid, taps, taps);
  eval.grad_pos.assign(width, 0.0);
  for (std::size_t p = 0; p < patches; ++p) {
    const double* row = features.data() + p * width;
    for (std::size_t k = 0; k < width; ++k) eval.grad_pos[k] += patch_grad[p] * row[k];
  }
  // m_neg enters the loss only through m_pos - m_neg.
  eval.grad_neg.resize(width);
  for (std::size_t k = 0; k < width; ++k) eval.grad_neg[k] = -eval.grad_pos[k];
  return eval;
}

PredictionPair predict(const ToyModel& model, const ImageRGB& image, const Tensor& tokens) {
  const ToySpec& spec = model.spec;
  const auto x = head_features(model, image, tokens);
  const auto taps = bilinear_taps(spec.grid, spec.image_size);
  const auto pos = upsample_logits(head_logits(model.theta_pos, x, model.head_width()),
                                   spec, taps);
  const auto neg = upsample_logits(head_logits(model.theta_neg, x, model.head_width()),
                                   spec, taps);
  const std::size_t n = spec.image_size;
  PredictionPair out{Tensor::matrix(n, n), Tensor::matrix(n, n)};
  for (std::size_t i = 0; i < n * n; ++i) {
    out.m_pos.data()[i] = static_cast<float>(pos[i]);
    out.m_neg.data()[i] = static_cast<float>(neg[i]);
  }
  return out;
}

Stage1Result stage1_mask(const ToySample& sample, const ToyModel& model,
                         const ProjectionPair& proj, const AmlConfig& cfg) {
  cfg.validate();
  const ToySpec& spec = model.spec;
  require(cfg.grid_h == spec.grid && cfg.grid_w == spec.grid, ErrorCode::kInvalidArgument,
          "config patch grid does not match the toy encoder");
  const Tensor visual = encode_patches(model, sample.image);
  const Tensor text = encode_text(sample);
  SimilarityMap sim = pmme(visual, text, proj, spec.grid, spec.grid);
  AfmResult masked = afm(sim, sample.image, cfg);
  return Stage1Result{std::move(masked.masked), std::move(masked.mask), std::move(sim)};
}

double stage2_step(const ImageRGB& masked, const ToySample& sample, ToyModel& model,
                   double lr) {
  require(lr >= 0.0, ErrorCode::kInvalidArgument, "learning rate must be >= 0");
  const auto x = head_features(model, masked, sample.tokens);
  const HeadEval eval = head_loss_and_grad(model, x, sample.gt);
  require(std::isfinite(eval.loss), ErrorCode::kNonFinite, "toy loss is not finite");
  for (std::size_t k = 0; k < model.head_width(); ++k) {
    model.theta_pos[k] -= lr * eval.grad_pos[k];
    model.theta_neg[k] -= lr * eval.grad_neg[k];
  }
  return eval.loss;
}

AmlConfig default_config(std::uint64_t seed) {
  AmlConfig cfg;
  cfg.block_h = 8;
  cfg.block_w = 8;
  cfg.d_a = 256;
  cfg.grid_h = 8;
  cfg.grid_w = 8;
  cfg.seed = seed;
  return cfg;
}

namespace {

void check_train_args(const std::vector<ToySample>& data, std::size_t epochs,
                      const ToySpec& spec) {
  require(!data.empty(), ErrorCode::kInvalidArgument, "training data is empty");
  require(epochs >= 1, ErrorCode::kInvalidArgument, "epochs must be >= 1");
  for (const ToySample& s : data) check_image(spec, s.image);
}

}  // namespace

TrainHistory train(const std::vector<ToySample>& data, std::size_t epochs,
                   const AmlConfig& cfg, double lr, std::uint64_t seed,
                   ToyModel* final_model) {
  cfg.validate();
  ToyModel model = make_model(seed);
  check_train_args(data, epochs, model.spec);
  const ProjectionPair proj =
      sample_projection(cfg.seed, model.spec.d_image, model.spec.d_text, cfg.d_a);
  TrainHistory history;
  const double n = static_cast<double>(data.size());
  for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
    double loss_sum = 0.0, masked_sum = 0.0, sim_sum = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
      AmlConfig step_cfg = cfg;
      step_cfg.seed = derive_seed(cfg.seed, epoch, i);
      const Stage1Result s1 = stage1_mask(data[i], model, proj, step_cfg);
      const double loss = stage2_step(s1.masked, data[i], model, lr);
      history.step_losses.push_back(loss);
      loss_sum += loss;
      masked_sum += s1.mask.masked_fraction();
      sim_sum += s1.similarity.mean();
    }
    history.loss.push_back(loss_sum / n);
    history.masked_fraction.push_back(masked_sum / n);
    history.mean_similarity.push_back(sim_sum / n);
  }
  if (final_model != nullptr) *final_model = std::move(model);
  return history;
}

TrainHistory train_baseline(const std::vector<ToySample>& data, std::size_t epochs,
                            double lr, std::uint64_t seed, ToyModel* final_model) {
  ToyModel model = make_model(seed);
  check_train_args(data, epochs, model.spec);
  TrainHistory history;
  const double n = static_cast<double>(data.size());
  for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
    double loss_sum = 0.0;
    for (const ToySample& s : data) {
      const double loss = stage2_step(s.image, s, model, lr);
      history.step_losses.push_back(loss);
      loss_sum += loss;
    }
    history.loss.push_back(loss_sum / n);
    history.masked_fraction.push_back(0.0);
    history.mean_similarity.push_back(0.0);
  }
  if (final_model != nullptr) *final_model = std::move(model);
  return history;
}

std::string history_csv(const TrainHistory& h) {
  std::string out = "epoch,loss,masked_fraction,mean_S\n";
  char line[128];
  for (std::size_t e = 0; e < h.epochs(); ++e) {
    std::snprintf(line, sizeof(line), "%zu,%.9g,%.9g,%.9g\n", e + 1, h.loss[e],
                  h.masked_fraction[e], h.mean_similarity[e]);
    out += line;
  }
  return out;
}

}  // namespace aml::toy
