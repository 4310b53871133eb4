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

#include <gtest/gtest.h>

#include <unistd.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "aml/cli.h"
#include "aml/io.h"
#include "aml/metrics.h"
#include "aml/perturb.h"

namespace fs = std::filesystem;

namespace aml::cli {
namespace {

const fs::path kData = AML_TEST_DATA_DIR;
const fs::path kCli = kData / "cli";

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() /
           ("aml_cli_" + std::string(info->name()) + "_" + std::to_string(::getpid()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

TEST_F(CliTest, JlDimExample) {
  const Result r = invoke({"jl-dim", "--m", "196", "--n", "20", "--sigma", "0.05", "--eps", "0.2"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "2254\n");
}

TEST_F(CliTest, JlEpsRoundTrip) {
  const Result r = invoke({"jl-eps", "--da", "2254", "--m", "196", "--n", "20", "--sigma", "0.05"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_LE(std::stod(r.out), 0.2);
  EXPECT_GT(std::stod(r.out), 0.1999);
}

TEST_F(CliTest, JlVerifyModes) {
  Result r = invoke({"jl-verify", "--mode", "block-distance", "--trials", "50", "--seed", "1",
                     "--da", "256", "--di", "32", "--dt", "16"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("mode=block-distance\n"), std::string::npos);
  EXPECT_NE(r.out.find("trials=50\n"), std::string::npos);
  r = invoke({"jl-verify", "--mode", "chi2-tail", "--trials", "100", "--seed", "1", "--da", "512",
              "--eps", "0.3"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("analytic_bound="), std::string::npos);
  r = invoke({"jl-verify", "--mode", "cross-inner", "--trials", "20", "--seed", "1", "--da", "64",
              "--di", "8", "--dt", "8"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  r = invoke({"jl-verify", "--mode", "nonsense", "--trials", "20", "--seed", "1"});
  EXPECT_EQ(r.code, kExitUsage);
}

TEST_F(CliTest, PmmeAfmChain) {
  const std::vector<std::string> pmme = {"pmme", "--visual", (kCli / "visual.amlt").string(),
                                         "--text", (kCli / "text.amlt").string(), "--grid",
                                         "14x14", "--seed", "5", "--out", path("s.amlt")};
  Result r = invoke(pmme);
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out.rfind("mean_S=", 0), 0u);
  const Tensor s = read_tensor(path("s.amlt"));
  EXPECT_EQ(s.dim(0), 14u);
  EXPECT_EQ(s.dim(1), 14u);

  fs::create_directories(dir_ / "pred");
  r = invoke({"afm", "--sim", path("s.amlt"), "--image", (kCli / "image.ppm").string(), "--tau",
              "0.205", "--block", "8x8", "--seed", "5", "--out", path("m.ppm"), "--mask-out",
              path("pred/sample.pgm")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("total_blocks=196\n"), std::string::npos);
  const MaskBitmap mask = read_pgm(path("pred/sample.pgm"));
  EXPECT_EQ(mask.width(), 14u);
  EXPECT_GT(mask.count(), 0u);
  EXPECT_LT(mask.count(), 196u);

  r = invoke({"metrics", "--pred-dir", path("pred"), "--gt-dir", (kCli / "gt").string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out.rfind("miou=", 0), 0u);
}

TEST_F(CliTest, AfmWithStrongMapCopiesImage) {
  write_tensor(Tensor({2, 2}, {0.9f, 0.9f, 0.9f, 0.9f}), path("s.amlt"));
  const Result r = invoke({"afm", "--sim", path("s.amlt"), "--image",
                           (kCli / "image.ppm").string(), "--seed", "1", "--out", path("m.ppm")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(read_file(path("m.ppm")), read_file(kCli / "image.ppm"));
}

TEST_F(CliTest, MetricsIdenticalDirs) {
  const std::string gt = (kCli / "gt").string();
  const Result r = invoke({"metrics", "--pred-dir", gt, "--gt-dir", gt});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("oiou=100.00\n"), std::string::npos);
}

TEST_F(CliTest, MetricsRejectsUnpairedFiles) {
  fs::create_directories(dir_ / "pred");
  fs::copy_file(kCli / "gt" / "sample.pgm", dir_ / "pred" / "other.pgm");
  const Result r =
      invoke({"metrics", "--pred-dir", path("pred"), "--gt-dir", (kCli / "gt").string()});
  EXPECT_EQ(r.code, kExitValidation);
  EXPECT_NE(r.err.find("other.pgm"), std::string::npos);
}

TEST_F(CliTest, PerturbFileAndDirectory) {
  const std::string fixture = (kData / "perturb" / "fixture.ppm").string();
  Result r = invoke({"perturb", "--kind", "haze", fixture, path("h.ppm")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(read_file(path("h.ppm")), read_file(kData / "perturb" / "fixture_haze.ppm"));

  fs::create_directories(dir_ / "in");
  fs::copy_file(fixture, dir_ / "in" / "a.ppm");
  fs::copy_file(fixture, dir_ / "in" / "b.ppm");
  r = invoke({"perturb", "--kind", "occlusion_box", "--seed", "42", path("in"), path("out")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out, "perturbed=2\n");
  EXPECT_EQ(read_file(path("out/a_occlusion_box.ppm")),
            read_file(kData / "perturb" / "fixture_occlusion_box.ppm"));
  EXPECT_TRUE(fs::exists(path("out/b_occlusion_box.ppm")));
}

TEST_F(CliTest, PerturbSeedRules) {
  const std::string fixture = (kData / "perturb" / "fixture.ppm").string();
  EXPECT_EQ(invoke({"perturb", "--kind", "color_jitter", fixture, path("o.ppm")}).code,
            kExitUsage);
  EXPECT_EQ(invoke({"perturb", "--kind", "haze", "--seed", "1", fixture, path("o.ppm")}).code,
            kExitUsage);
  EXPECT_EQ(invoke({"perturb", "--kind", "blur", fixture, path("o.ppm")}).code, kExitUsage);
}

TEST_F(CliTest, ToyTrainWritesHistory) {
  const Result r = invoke({"toy-train", "--samples", "4", "--epochs", "2", "--seed", "3",
                           "--history", path("h.csv")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("final_loss="), std::string::npos);
  const auto bytes = read_file(path("h.csv"));
  const std::string csv(bytes.begin(), bytes.end());
  EXPECT_EQ(csv.rfind("epoch,loss,masked_fraction,mean_S\n", 0), 0u);
}

TEST_F(CliTest, ErrorCodes) {
  EXPECT_EQ(invoke({}).code, kExitUsage);
  EXPECT_EQ(invoke({"nosuch"}).code, kExitUsage);
  EXPECT_EQ(invoke({"jl-dim", "--m", "196"}).code, kExitUsage);
  EXPECT_EQ(invoke({"pmme", "--visual", path("missing.amlt"), "--text", path("missing.amlt"),
                    "--seed", "1", "--out", path("s.amlt")})
                .code,
            kExitIo);
  const Result bad = invoke({"pmme", "--visual", (kCli / "image.ppm").string(), "--text",
                             (kCli / "text.amlt").string(), "--seed", "1", "--out",
                             path("s.amlt")});
  EXPECT_EQ(bad.code, kExitValidation);
  EXPECT_EQ(std::count(bad.err.begin(), bad.err.end(), '\n'), 1);
  // Wrong grid for the feature count.
  EXPECT_EQ(invoke({"pmme", "--visual", (kCli / "visual.amlt").string(), "--text",
                    (kCli / "text.amlt").string(), "--grid", "10x10", "--seed", "1", "--out",
                    path("s.amlt")})
                .code,
            kExitValidation);
  EXPECT_EQ(invoke({"afm", "--sim", path("s.amlt"), "--image", (kCli / "image.ppm").string(),
                    "--tau", "1.5", "--seed", "1", "--out", path("m.ppm")})
                .code == kExitOk,
            false);
}

TEST_F(CliTest, BinaryExitStatus) {
  const std::string cmd = std::string(AML_CLI_PATH) + " jl-dim --m 196 > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  ASSERT_TRUE(WIFEXITED(status));
  EXPECT_EQ(WEXITSTATUS(status), kExitUsage);
  const std::string ok = std::string(AML_CLI_PATH) +
                         " jl-dim --m 196 --n 20 --sigma 0.05 --eps 0.2 > " + path("o.txt");
  EXPECT_EQ(std::system(ok.c_str()), 0);
  const auto bytes = read_file(path("o.txt"));
  EXPECT_EQ(std::string(bytes.begin(), bytes.end()), "2254\n");
}

}  // namespace
}  // namespace aml::cli
