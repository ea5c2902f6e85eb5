#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "csnet/bcs/bcs.hpp"
#include "csnet/model/config.hpp"

namespace csnet {

/// Every command parameter with its default. Serialized as `key=value`
/// lines; keys match the long flag names without the leading dashes.
struct RunConfig {
  // model
  std::size_t block = 32;
  double ratio = 0.1;
  std::size_t depth = 5;
  std::size_t width = 64;
  std::size_t filter = 3;
  bool final_relu = false;
  std::uint64_t seed = 0;

  // training
  std::size_t epochs = 10;
  std::size_t iterations = 100;
  std::size_t batch = 16;
  std::size_t patch_size = 32;
  std::size_t patches = 1600;
  bool augment = true;
  double learning_rate = 1e-3;
  int precision = 32;

  // classical baseline
  double rho = 0.95;
  double gamma = 1.0;
  double tau0 = 0.1;
  double tau_decay = 0.95;
  std::size_t spl_iters = 200;
  double spl_tol = 1e-4;
  std::size_t wiener = 3;

  // evaluation
  std::vector<double> ratios{0.1, 0.2, 0.3, 0.4, 0.5};
  std::vector<std::string> algorithms{"csnet", "mmse", "spl"};
  std::string stage = "both";

  // synthetic corpus
  std::size_t count = 50;
  std::size_t size = 128;

  // paths
  std::string images;
  std::string model;
  std::string model_template;
  std::string matrix;
  std::string out;

  // Keys assigned by a config file or a flag; not part of the value.
  std::set<std::string> assigned;

  bool is_set(const std::string& key) const { return assigned.count(key) != 0; }

  CsNetConfig model_config() const;
  TrainSchedule schedule() const;
  SplConfig spl_config() const;

  // Range checks shared by every command; ConfigError names the flag.
  void validate() const;

  friend bool operator==(const RunConfig& a, const RunConfig& b);
};

// All keys in render order.
const std::vector<std::string>& config_keys();

// Assigns one key from its text form. ConfigError names `--key`.
void assign(RunConfig& config, const std::string& key, const std::string& value);

std::string render(const RunConfig& config);

// Blank lines and lines starting with '#' are ignored.
RunConfig parse(const std::string& text, RunConfig base = {});

RunConfig load_run_config(const std::string& path);

}  // namespace csnet
