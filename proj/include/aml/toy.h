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

#ifndef AML_TOY_H_
#define AML_TOY_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "aml/afm.h"
#include "aml/image.h"
#include "aml/loss.h"
#include "aml/pmme.h"
#include "aml/projection.h"
#include "aml/tensor.h"

namespace aml::toy {

// Geometry and widths of the desk-scale setup.
struct ToySpec {
  std::size_t image_size = 112;
  std::size_t grid = 8;          // 8x8 patches of 14x14 pixels
  std::size_t d_image = 32;      // visual feature width
  std::size_t d_text = 8;        // token width
  std::size_t n_tokens = 4;      // colour, quadrant, two noise tokens
  std::size_t min_side = 20;
  std::size_t max_side = 32;

  std::size_t patch_size() const { return image_size / grid; }
};

// Number of per-patch statistics fed to the frozen encoder:
// mean R, G, B in [0, 1], patch-centre row and column in [0, 1], and 1.
inline constexpr std::size_t kPatchStats = 6;

struct Square {
  std::size_t top;
  std::size_t left;
  std::size_t side;
  Rgb color;
};

struct ToySample {
  ImageRGB image;
  Tensor tokens;  // [n_tokens, d_text]
  MaskBitmap gt;
  Square target;
  Square distractor;
};

// Four saturated colours; target and distractor never share one.
const std::vector<Rgb>& palette();

// Quadrant of the target centre: 0 top-left, 1 top-right, 2 bottom-left,
// 3 bottom-right.
std::size_t quadrant(const Square& s, std::size_t image_size);

std::vector<ToySample> synth_dataset(std::uint64_t seed, std::size_t n,
                                     const ToySpec& spec = {});

// Frozen encoders plus the learnable two-channel linear head. Head inputs per
// patch are [visual feature, mean token, 1].
struct ToyModel {
  ToySpec spec;
  Tensor encoder;  // [kPatchStats, d_image], never updated
  std::vector<double> theta_pos;
  std::vector<double> theta_neg;

  std::size_t head_width() const { return spec.d_image + spec.d_text + 1; }
  // FNV-1a over the head parameters.
  std::uint64_t theta_checksum() const;
};

ToyModel make_model(std::uint64_t seed, const ToySpec& spec = {});

// [grid * grid, kPatchStats]
Tensor patch_statistics(const ImageRGB& image, const ToySpec& spec);
// Frozen visual encoder: [grid * grid, d_image].
Tensor encode_patches(const ToyModel& model, const ImageRGB& image);
// Frozen text encoder (identity on the tokens).
Tensor encode_text(const ToySample& sample);

// Row-major [grid * grid, head_width] head inputs in f64.
std::vector<double> head_features(const ToyModel& model, const ImageRGB& image,
                                  const Tensor& tokens);

struct HeadEval {
  double loss = 0.0;
  std::vector<double> grad_pos;
  std::vector<double> grad_neg;
  std::vector<double> patch_pos;  // patch logits before upsampling
  std::vector<double> patch_neg;
};

// Loss and parameter gradient for fixed head inputs: patch logits are
// bilinearly upsampled to pixels and scored with the mean BCE; the pixel
// gradient (P - y)/HW is pulled back through the upsampler and the head.
HeadEval head_loss_and_grad(const ToyModel& model, const std::vector<double>& features,
                            const MaskBitmap& gt);

// Pixel logits of the head, rounded to f32.
PredictionPair predict(const ToyModel& model, const ImageRGB& image, const Tensor& tokens);

struct Stage1Result {
  ImageRGB masked;
  BlockMask mask;
  SimilarityMap similarity;
};

// Forward only: frozen encoders -> PMME -> AFM. Never touches the head.
Stage1Result stage1_mask(const ToySample& sample, const ToyModel& model,
                         const ProjectionPair& proj, const AmlConfig& cfg);

// One SGD step on the head using the masked image; returns the loss before
// the step.
double stage2_step(const ImageRGB& masked, const ToySample& sample, ToyModel& model,
                   double lr);

struct TrainHistory {
  std::vector<double> loss;             // per-epoch mean
  std::vector<double> masked_fraction;  // per-epoch mean over samples
  std::vector<double> mean_similarity;  // per-epoch mean of S
  std::vector<double> step_losses;      // every stage-2 loss, in order

  std::size_t epochs() const { return loss.size(); }
};

// Scaled defaults: 8x8 blocks and D_a = 256 on the 8x8 patch grid.
AmlConfig default_config(std::uint64_t seed = 0);

// Two-stage loop. The head is initialised from `seed`, the projection from
// cfg.seed, and the dropout stream of (epoch, sample) from
// derive_seed(cfg.seed, epoch, sample).
TrainHistory train(const std::vector<ToySample>& data, std::size_t epochs,
                   const AmlConfig& cfg, double lr, std::uint64_t seed,
                   ToyModel* final_model = nullptr);

// Single-stage reference loop on unmasked images.
TrainHistory train_baseline(const std::vector<ToySample>& data, std::size_t epochs,
                            double lr, std::uint64_t seed, ToyModel* final_model = nullptr);

// epoch,loss,masked_fraction,mean_S
std::string history_csv(const TrainHistory& history);

}  // namespace aml::toy

#endif  // AML_TOY_H_
