#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "csnet/cli/commands.hpp"
#include "csnet/errors.hpp"

namespace {

const std::map<std::string, std::string>& descriptions() {
  static const std::map<std::string, std::string> text{
      {"block", "block size B (default 32)"},
      {"ratio", "sampling ratio in (0, 1] (default 0.1)"},
      {"depth", "deep reconstruction layers (default 5)"},
      {"width", "deep reconstruction channels (default 64)"},
      {"filter", "deep reconstruction filter size (default 3)"},
      {"final-relu", "ReLU after the last deep layer (default false)"},
      {"seed", "master seed (default 0)"},
      {"epochs", "training epochs (default 10)"},
      {"iterations", "iterations per epoch (default 100)"},
      {"batch", "batch size (default 16)"},
      {"patch-size", "training patch size, a multiple of B (default 32)"},
      {"patches", "number of training patches (default 1600)"},
      {"augment", "random rotation/flip per patch (default true)"},
      {"learning-rate", "first-stage Adam learning rate (default 0.001)"},
      {"precision", "32 or 64 bit arithmetic (default 32)"},
      {"rho", "AR(1) correlation of the MMSE prior (default 0.95)"},
      {"gamma", "SPL step scale (default 1)"},
      {"tau0", "SPL initial threshold as a fraction of the largest coefficient (default 0.1)"},
      {"tau-decay", "SPL threshold decay per iteration (default 0.95)"},
      {"spl-iters", "SPL iteration limit (default 200)"},
      {"spl-tol", "SPL relative change tolerance (default 1e-4)"},
      {"wiener", "SPL Wiener window, 0 disables (default 3)"},
      {"ratios", "eval ratios, comma separated (default 0.1,0.2,0.3,0.4,0.5)"},
      {"algorithms", "eval algorithms from csnet,mmse,spl (default all)"},
      {"stage", "both, initial or final (default both)"},
      {"count", "synthetic image count (default 50)"},
      {"size", "synthetic image side (default 128)"},
      {"images", "image file or directory"},
      {"model", "CSNT model file"},
      {"model-template", "eval model path with {ratio} placeholder"},
      {"matrix", "CSMX measurement matrix file"},
      {"out", "output file or directory"},
  };
  return text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Block compressed sensing with a learned sampling network"};
  app.require_subcommand(1);
  std::string config_path;
  std::map<std::string, std::string> values;
  const std::vector<std::pair<std::string, std::string>> commands{
      {"train", "train a model on an image directory"},
      {"reconstruct", "reconstruct images with a trained model"},
      {"baseline", "MMSE and smoothed projected Landweber reconstruction"},
      {"eval", "sweep sampling ratios and write report CSVs"},
      {"export-matrix", "write a model's sampling matrix as CSMX"},
      {"synth", "write a synthetic piecewise-smooth image corpus"},
  };
  std::vector<CLI::App*> subs;
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "key=value file; flags override it");
    for (const auto& key : csnet::config_keys()) sub->add_option("--" + key, values[key], descriptions().at(key));
    subs.push_back(sub);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : csnet::kExitConfig;
  }

  csnet::RunConfig config;
  try {
    if (!config_path.empty()) config = csnet::load_run_config(config_path);
    for (CLI::App* sub : subs) {
      if (!sub->parsed()) continue;
      for (const auto& key : csnet::config_keys()) {
        if (sub->count("--" + key) > 0) csnet::assign(config, key, values[key]);
      }
    }
  } catch (const csnet::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return csnet::kExitIo;
  } catch (const csnet::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return csnet::kExitConfig;
  }
  for (CLI::App* sub : subs) {
    if (sub->parsed()) return csnet::run_command(sub->get_name(), config, std::cout, std::cerr);
  }
  return csnet::kExitConfig;
}
