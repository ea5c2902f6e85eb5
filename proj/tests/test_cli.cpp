#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "csnet/bcs/measurement.hpp"
#include "csnet/cli/commands.hpp"
#include "csnet/data/image_io.hpp"
#include "csnet/errors.hpp"
#include "csnet/metrics/report.hpp"
#include "csnet/model/model_io.hpp"
#include "support.hpp"

using namespace csnet;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("csnet_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_tool(const std::string& args, const fs::path& log) {
  const std::string cmd = std::string(CSNET_TOOL_PATH) + " " + args + " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// Small, fast settings shared by the end-to-end runs.
RunConfig tiny_config(const fs::path& images) {
  RunConfig c;
  c.images = images.string();
  c.block = 4;
  c.ratio = 0.5;
  c.depth = 2;
  c.width = 8;
  c.epochs = 10;
  c.iterations = 100;
  c.batch = 1;
  c.patch_size = 16;
  c.patches = 4;
  c.augment = false;
  c.learning_rate = 0.01;
  c.precision = 64;
  c.seed = 7;
  c.spl_iters = 20;
  for (const auto& key : config_keys()) c.assigned.insert(key);
  return c;
}

fs::path constant_corpus(const std::string& name) {
  auto dir = scratch_dir(name) / "images";
  fs::create_directories(dir);
  save_image((dir / "flat.pgm").string(), Tensor<double>({16, 16, 1}, 0.5));
  return dir;
}

}  // namespace

TEST(RunConfig, RenderParseRoundTrip) {
  RunConfig c;
  c.ratio = 0.25;
  c.seed = 99;
  c.final_relu = true;
  c.ratios = {0.1, 0.3};
  c.algorithms = {"mmse"};
  c.images = "some dir/x";
  c.learning_rate = 3e-4;
  EXPECT_EQ(parse(render(c)), c);
  EXPECT_EQ(parse(render(RunConfig{})), RunConfig{});
}

TEST(RunConfig, ParseIgnoresCommentsAndTracksKeys) {
  auto c = parse("# a comment\n\nratio = 0.3\nblock=16\n");
  EXPECT_EQ(c.ratio, 0.3);
  EXPECT_EQ(c.block, 16u);
  EXPECT_TRUE(c.is_set("ratio"));
  EXPECT_FALSE(c.is_set("depth"));
}

TEST(RunConfig, FlagsOverrideFile) {
  auto c = parse("ratio=0.3\nseed=4\n");
  assign(c, "ratio", "0.2");
  EXPECT_EQ(c.ratio, 0.2);
  EXPECT_EQ(c.seed, 4u);
}

TEST(RunConfig, BadValuesNameTheFlag) {
  RunConfig c;
  try {
    assign(c, "batch", "many");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("--batch"), std::string::npos);
  }
  EXPECT_THROW(assign(c, "nonsense", "1"), ConfigError);
  EXPECT_THROW(parse("ratio\n"), ConfigError);
}

TEST(RunConfig, Validation) {
  RunConfig c;
  c.ratio = 0.0;
  try {
    c.validate();
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("--ratio"), std::string::npos);
  }
  c = {};
  c.patch_size = 40;
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.precision = 16;
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.algorithms = {"csnet", "bm3d"};
  EXPECT_THROW(c.validate(), ConfigError);
}

TEST(RunConfig, DerivedSettings) {
  RunConfig c;
  c.seed = 10;
  EXPECT_EQ(c.model_config().seed, 12u);
  EXPECT_EQ(c.model_config().measurements(), 102u);
  EXPECT_EQ(expand_template("m_{ratio}.csnt", 0.3), "m_0.3.csnt");
}

TEST(Commands, ExitCodes) {
  std::ostringstream out, err;
  RunConfig c;
  c.ratio = 0.0;
  c.images = "x";
  EXPECT_EQ(run_command("train", c, out, err), kExitConfig);
  EXPECT_NE(err.str().find("--ratio"), std::string::npos);

  RunConfig missing;
  missing.images = (fs::temp_directory_path() / "csnet_cli_no_such_dir").string();
  EXPECT_EQ(run_command("baseline", missing, out, err), kExitIo);
  EXPECT_EQ(run_command("train", missing, out, err), kExitIo);
  EXPECT_EQ(run_command("frobnicate", RunConfig{}, out, err), kExitConfig);
}

TEST(Commands, ToolExitCodes) {
  auto dir = scratch_dir("tool");
  EXPECT_EQ(run_tool("train --images x --ratio 0", dir / "a.log"), kExitConfig);
  EXPECT_NE(read_text(dir / "a.log").find("--ratio"), std::string::npos);
  EXPECT_EQ(run_tool("baseline --images " + (dir / "missing").string(), dir / "b.log"), kExitIo);
  EXPECT_EQ(run_tool("train --images x --batch lots", dir / "c.log"), kExitConfig);
  EXPECT_EQ(run_tool("--help", dir / "d.log"), 0);
}

TEST(Commands, TrainReconstructEndToEnd) {
  auto images = constant_corpus("e2e");
  auto root = images.parent_path();
  RunConfig c = tiny_config(images);
  c.out = (root / "model" / "m.csnt").string();
  std::ostringstream out, err;
  ASSERT_EQ(run_command("train", c, out, err), kExitOk) << err.str();
  ASSERT_TRUE(fs::exists(root / "model" / "m.csnt"));
  const auto history = read_text(root / "model" / "loss_history.csv");
  EXPECT_EQ(history.rfind("epoch,mean_loss,learning_rate\n", 0), 0u);

  // Same flags and seed: bit-identical loss history.
  RunConfig again = c;
  again.out = (root / "model2" / "m.csnt").string();
  ASSERT_EQ(run_command("train", again, out, err), kExitOk);
  EXPECT_EQ(read_text(root / "model2" / "loss_history.csv"), history);

  RunConfig rc = c;
  rc.model = c.out;
  rc.out = (root / "recon").string();
  ASSERT_EQ(run_command("reconstruct", rc, out, err), kExitOk) << err.str();
  std::ifstream in(root / "recon" / "records.csv");
  auto records = read_records_csv(in);
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(records[1].algorithm, "csnet");
  EXPECT_GT(records[1].psnr_db, 40.0);
  EXPECT_TRUE(fs::exists(root / "recon" / "flat_csnet.pgm"));
  EXPECT_TRUE(fs::exists(root / "recon" / "aggregates.csv"));

  rc.block = 8;
  EXPECT_EQ(run_command("reconstruct", rc, out, err), kExitConfig);

  RunConfig ex = c;
  ex.model = c.out;
  ex.out = (root / "phi.csmx").string();
  ASSERT_EQ(run_command("export-matrix", ex, out, err), kExitOk);
  auto phi = load_matrix(ex.out);
  EXPECT_EQ(phi.rows, 8u);
  EXPECT_EQ(phi.block_size, 4u);

  RunConfig bl = c;
  bl.matrix = ex.out;
  bl.out = (root / "baseline").string();
  ASSERT_EQ(run_command("baseline", bl, out, err), kExitOk) << err.str();
  EXPECT_TRUE(fs::exists(root / "baseline" / "flat_spl_log.csv"));

  RunConfig ev = c;
  ev.model_template = (root / "model" / "m.csnt").string();
  ev.ratios = {0.5, 0.25};
  ev.out = (root / "eval").string();
  ASSERT_EQ(run_command("eval", ev, out, err), kExitOk) << err.str();
  std::ifstream agg(root / "eval" / "aggregates.csv");
  auto rows = read_aggregates_csv(agg);
  EXPECT_EQ(rows.size(), 5u);  // csnet at 0.5, mmse and spl at both ratios
  EXPECT_TRUE(fs::exists(root / "eval" / "warnings.csv"));
}

TEST(Commands, DeterminedBaselineIsInfinite) {
  auto dir = scratch_dir("determined");
  auto images = dir / "images";
  fs::create_directories(images);
  save_image((images / "t.pgm").string(), test::random_tensor({16, 16, 1}, 3, 0, 1));
  RunConfig c;
  c.images = images.string();
  c.block = 4;
  c.ratio = 1.0;
  c.spl_iters = 5;
  c.out = (dir / "out").string();
  std::ostringstream out, err;
  ASSERT_EQ(run_command("baseline", c, out, err), kExitOk) << err.str();
  std::ifstream in(dir / "out" / "records.csv");
  auto records = read_records_csv(in);
  ASSERT_EQ(records.size(), 2u);
  for (const auto& r : records) EXPECT_EQ(r.psnr_db, std::numeric_limits<double>::infinity()) << r.algorithm;
}

TEST(Commands, SynthWritesCorpus) {
  auto dir = scratch_dir("synth");
  RunConfig c;
  c.count = 3;
  c.size = 24;
  c.out = (dir / "corpus").string();
  std::ostringstream out, err;
  ASSERT_EQ(run_command("synth", c, out, err), kExitOk);
  auto files = list_images(c.out);
  ASSERT_EQ(files.size(), 3u);
  EXPECT_EQ(load_image(files[0]).pixels.shape(), (Shape{24, 24, 1}));
}
