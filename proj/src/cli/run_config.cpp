#include "csnet/cli/run_config.hpp"

#include <charconv>
#include <sstream>

#include "csnet/errors.hpp"
#include "csnet/metrics/report.hpp"
#include "csnet/netcore/binary_io.hpp"

namespace csnet {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad(const std::string& key, const std::string& value, const char* expected) {
  throw ConfigError("--" + key + ": expected " + expected + ", got '" + value + "'");
}

std::uint64_t to_u64(const std::string& key, const std::string& value) {
  std::uint64_t out = 0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (value.empty() || ec != std::errc() || ptr != end) bad(key, value, "a non-negative integer");
  return out;
}

double to_double(const std::string& key, const std::string& value) {
  double out = 0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (value.empty() || ec != std::errc() || ptr != end) bad(key, value, "a number");
  return out;
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  bad(key, value, "true or false");
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::stringstream in(value);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

template <typename T>
std::string join(const std::vector<T>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ',';
    if constexpr (std::is_same_v<T, double>) {
      out += format_number(items[i]);
    } else {
      out += items[i];
    }
  }
  return out;
}

std::string text_of(const RunConfig& c, const std::string& key) {
  auto num = [](double v) { return format_number(v); };
  auto b = [](bool v) { return std::string(v ? "true" : "false"); };
  if (key == "block") return std::to_string(c.block);
  if (key == "ratio") return num(c.ratio);
  if (key == "depth") return std::to_string(c.depth);
  if (key == "width") return std::to_string(c.width);
  if (key == "filter") return std::to_string(c.filter);
  if (key == "final-relu") return b(c.final_relu);
  if (key == "seed") return std::to_string(c.seed);
  if (key == "epochs") return std::to_string(c.epochs);
  if (key == "iterations") return std::to_string(c.iterations);
  if (key == "batch") return std::to_string(c.batch);
  if (key == "patch-size") return std::to_string(c.patch_size);
  if (key == "patches") return std::to_string(c.patches);
  if (key == "augment") return b(c.augment);
  if (key == "learning-rate") return num(c.learning_rate);
  if (key == "precision") return std::to_string(c.precision);
  if (key == "rho") return num(c.rho);
  if (key == "gamma") return num(c.gamma);
  if (key == "tau0") return num(c.tau0);
  if (key == "tau-decay") return num(c.tau_decay);
  if (key == "spl-iters") return std::to_string(c.spl_iters);
  if (key == "spl-tol") return num(c.spl_tol);
  if (key == "wiener") return std::to_string(c.wiener);
  if (key == "ratios") return join(c.ratios);
  if (key == "algorithms") return join(c.algorithms);
  if (key == "stage") return c.stage;
  if (key == "count") return std::to_string(c.count);
  if (key == "size") return std::to_string(c.size);
  if (key == "images") return c.images;
  if (key == "model") return c.model;
  if (key == "model-template") return c.model_template;
  if (key == "matrix") return c.matrix;
  if (key == "out") return c.out;
  throw ConfigError("unknown key '" + key + "'");
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "block",     "ratio",    "depth",     "width",     "filter",     "final-relu",    "seed",
      "epochs",    "iterations", "batch",   "patch-size", "patches",   "augment",       "learning-rate",
      "precision", "rho",      "gamma",     "tau0",      "tau-decay",  "spl-iters",     "spl-tol",
      "wiener",    "ratios",   "algorithms", "stage",    "count",      "size",          "images",     "model",         "model-template",
      "matrix",    "out"};
  return keys;
}

void assign(RunConfig& c, const std::string& key, const std::string& raw) {
  const std::string value = trim(raw);
  if (value.find('\n') != std::string::npos) bad(key, value, "a single line");
  if (key == "block") c.block = to_u64(key, value);
  else if (key == "ratio") c.ratio = to_double(key, value);
  else if (key == "depth") c.depth = to_u64(key, value);
  else if (key == "width") c.width = to_u64(key, value);
  else if (key == "filter") c.filter = to_u64(key, value);
  else if (key == "final-relu") c.final_relu = to_bool(key, value);
  else if (key == "seed") c.seed = to_u64(key, value);
  else if (key == "epochs") c.epochs = to_u64(key, value);
  else if (key == "iterations") c.iterations = to_u64(key, value);
  else if (key == "batch") c.batch = to_u64(key, value);
  else if (key == "patch-size") c.patch_size = to_u64(key, value);
  else if (key == "patches") c.patches = to_u64(key, value);
  else if (key == "augment") c.augment = to_bool(key, value);
  else if (key == "learning-rate") c.learning_rate = to_double(key, value);
  else if (key == "precision") {
    c.precision = static_cast<int>(to_u64(key, value));
    if (c.precision != 32 && c.precision != 64) bad(key, value, "32 or 64");
  }
  else if (key == "rho") c.rho = to_double(key, value);
  else if (key == "gamma") c.gamma = to_double(key, value);
  else if (key == "tau0") c.tau0 = to_double(key, value);
  else if (key == "tau-decay") c.tau_decay = to_double(key, value);
  else if (key == "spl-iters") c.spl_iters = to_u64(key, value);
  else if (key == "spl-tol") c.spl_tol = to_double(key, value);
  else if (key == "wiener") c.wiener = to_u64(key, value);
  else if (key == "ratios") {
    c.ratios.clear();
    for (const auto& item : split_list(value)) c.ratios.push_back(to_double(key, item));
  }
  else if (key == "algorithms") {
    c.algorithms = split_list(value);
    for (const auto& a : c.algorithms) {
      if (a != "csnet" && a != "mmse" && a != "spl") bad(key, a, "csnet, mmse or spl");
    }
  }
  else if (key == "stage") {
    if (value != "both" && value != "initial" && value != "final") bad(key, value, "both, initial or final");
    c.stage = value;
  }
  else if (key == "count") c.count = to_u64(key, value);
  else if (key == "size") c.size = to_u64(key, value);
  else if (key == "images") c.images = value;
  else if (key == "model") c.model = value;
  else if (key == "model-template") c.model_template = value;
  else if (key == "matrix") c.matrix = value;
  else if (key == "out") c.out = value;
  else throw ConfigError("unknown configuration key '" + key + "'");
  c.assigned.insert(key);
}

std::string render(const RunConfig& config) {
  std::string out;
  for (const auto& key : config_keys()) out += key + "=" + text_of(config, key) + "\n";
  return out;
}

RunConfig parse(const std::string& text, RunConfig base) {
  std::stringstream in(text);
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(number) + ": expected key=value");
    }
    assign(base, trim(t.substr(0, eq)), t.substr(eq + 1));
  }
  return base;
}

RunConfig load_run_config(const std::string& path) { return parse(read_file(path)); }

bool operator==(const RunConfig& a, const RunConfig& b) {
  for (const auto& key : config_keys()) {
    if (text_of(a, key) != text_of(b, key)) return false;
  }
  return true;
}

CsNetConfig RunConfig::model_config() const {
  CsNetConfig c;
  c.block_size = block;
  c.sampling_ratio = ratio;
  c.deep_depth = depth;
  c.deep_width = width;
  c.deep_filter = filter;
  c.final_relu = final_relu;
  c.seed = seed + 2;
  return c;
}

TrainSchedule RunConfig::schedule() const {
  TrainSchedule s{epochs, iterations, batch, scaled_stages(epochs)};
  for (auto& stage : s.stages) stage.rate *= learning_rate / 1e-3;
  return s;
}

SplConfig RunConfig::spl_config() const {
  SplConfig s;
  s.gamma = gamma;
  s.tau0_fraction = tau0;
  s.tau_decay = tau_decay;
  s.max_iters = spl_iters;
  s.rel_tol = spl_tol;
  s.wiener_window = wiener;
  return s;
}

void RunConfig::validate() const {
  if (block < 2) throw ConfigError("--block must be at least 2");
  if (!(ratio > 0.0 && ratio <= 1.0)) throw ConfigError("--ratio must be in (0, 1], got " + format_number(ratio));
  if (measurements_for(ratio, block) == 0) {
    throw ConfigError("--ratio " + format_number(ratio) + " gives no measurements per block at --block " +
                      std::to_string(block));
  }
  for (double r : ratios) {
    if (!(r > 0.0 && r <= 1.0)) throw ConfigError("--ratios entries must be in (0, 1], got " + format_number(r));
  }
  if (!(rho >= 0.0 && rho < 1.0)) throw ConfigError("--rho must be in [0, 1)");
  if (!(learning_rate > 0.0)) throw ConfigError("--learning-rate must be positive");
  if (batch == 0) throw ConfigError("--batch must be positive");
  if (epochs == 0) throw ConfigError("--epochs must be positive");
  if (iterations == 0) throw ConfigError("--iterations must be positive");
  if (patch_size == 0 || patch_size % block != 0) {
    throw ConfigError("--patch-size must be a positive multiple of --block");
  }
  if (precision != 32 && precision != 64) throw ConfigError("--precision must be 32 or 64");
  if (stage != "both" && stage != "initial" && stage != "final") {
    throw ConfigError("--stage must be both, initial or final");
  }
  for (const auto& a : algorithms) {
    if (a != "csnet" && a != "mmse" && a != "spl") throw ConfigError("--algorithms: unknown algorithm '" + a + "'");
  }
  model_config().validate();
  spl_config().validate();
}

}  // namespace csnet
