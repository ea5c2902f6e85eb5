#include "csnet/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "csnet/data/image_io.hpp"
#include "csnet/data/synthetic.hpp"
#include "csnet/errors.hpp"
#include "csnet/metrics/quality.hpp"
#include "csnet/metrics/report.hpp"
#include "csnet/model/model_io.hpp"
#include "csnet/model/train.hpp"
#include "csnet/netcore/binary_io.hpp"

namespace csnet {

namespace fs = std::filesystem;

namespace {

struct Prepared {
  std::string name;
  Tensor<double> original;
  PaddedImage padded;
};

std::vector<Prepared> prepare_images(const std::string& path, std::size_t block) {
  if (path.empty()) throw ConfigError("--images is required");
  std::error_code ec;
  if (!fs::exists(path, ec)) throw IoError("no such file or directory: " + path);
  std::vector<ImageRecord> images;
  if (fs::is_directory(path, ec)) {
    images = load_images(path);
  } else {
    images.push_back(load_image(path));
  }
  if (images.empty()) throw IoError("no .pgm or .png images in " + path);
  std::vector<Prepared> out;
  for (auto& image : images) {
    PaddedImage padded = pad_to_block_multiple(image.pixels, block);
    out.push_back({image.name, std::move(image.pixels), std::move(padded)});
  }
  return out;
}

std::string output_dir(const RunConfig& config) {
  const std::string dir = config.out.empty() ? "." : config.out;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir + ": " + ec.message());
  return dir;
}

std::string join_path(const std::string& dir, const std::string& file) { return (fs::path(dir) / file).string(); }

// What gets written to disk: clamped and quantized to 8 bits.
Tensor<double> quantized(const Tensor<double>& image) {
  Tensor<double> out(image.shape());
  for (std::size_t i = 0; i < image.size(); ++i) out[i] = std::round(std::clamp(image[i], 0.0, 1.0) * 255.0) / 255.0;
  return out;
}

EvalRecord score(const std::string& algorithm, const Prepared& image, double ratio, const Tensor<double>& padded_result,
                 double seconds, const std::string& save_dir) {
  const Tensor<double> cropped = quantized(
      crop_to_original(padded_result, image.padded.original_height, image.padded.original_width));
  if (!save_dir.empty()) save_image(join_path(save_dir, image.name + "_" + algorithm + ".pgm"), cropped);
  return {algorithm, image.name, ratio, psnr(image.original, cropped), ssim(image.original, cropped), seconds};
}

void write_report(const std::string& dir, const std::vector<EvalRecord>& records, std::vector<std::string> warnings,
                  std::ostream& out) {
  EvalReport report = aggregate(records);
  save_records_csv(join_path(dir, "records.csv"), report.records);
  save_aggregates_csv(join_path(dir, "aggregates.csv"), report.aggregates);
  warnings.insert(warnings.end(), report.warnings.begin(), report.warnings.end());
  if (!warnings.empty()) {
    std::string text = "message\n";
    for (const auto& w : warnings) text += "\"" + w + "\"\n";
    write_file(join_path(dir, "warnings.csv"), text);
  }
  for (const auto& row : report.aggregates) {
    out << row.algorithm << " ratio " << format_number(row.ratio) << ": PSNR " << format_number(row.mean_psnr_db)
        << " dB, SSIM " << format_number(row.mean_ssim) << ", " << format_number(row.mean_seconds) << " s (n="
        << row.n << ")\n";
  }
}

template <typename T>
std::vector<EvalRecord> csnet_records(const CsNetModel<T>& model, const std::vector<Prepared>& images, double ratio,
                                      const std::string& stage, const std::string& save_dir) {
  std::vector<EvalRecord> records;
  for (const auto& image : images) {
    const Tensor<T> input = image.padded.pixels.template cast<T>();
    if (stage != "final") {
      Tensor<T> initial;
      const double seconds = time_op([&] { initial = initial_reconstruct(model, sample(model, input)); });
      records.push_back(score("csnet-initial", image, ratio, initial.template cast<double>(), seconds, save_dir));
    }
    if (stage != "initial") {
      Tensor<T> final_image;
      const double seconds = time_op([&] { final_image = forward(model, input).final; });
      records.push_back(score("csnet", image, ratio, final_image.template cast<double>(), seconds, save_dir));
    }
  }
  return records;
}

std::vector<EvalRecord> baseline_records(const MeasurementMatrix& phi, const RunConfig& config,
                                         const std::vector<Prepared>& images, double ratio, bool want_mmse,
                                         bool want_spl, const std::string& save_dir) {
  const ReconstructionMatrix phi_tilde = mmse_matrix(phi, ar1_autocorrelation(phi.block_size, config.rho));
  const SplConfig spl = config.spl_config();
  std::vector<EvalRecord> records;
  for (const auto& image : images) {
    if (want_mmse) {
      Tensor<double> initial;
      const double seconds = time_op([&] { initial = mmse_initial(block_sample(image.padded.pixels, phi), phi_tilde); });
      records.push_back(score("mmse", image, ratio, initial, seconds, save_dir));
    }
    if (want_spl) {
      SplResult result;
      const double seconds =
          time_op([&] { result = spl_reconstruct(block_sample(image.padded.pixels, phi), phi, phi_tilde, spl); });
      records.push_back(score("spl", image, ratio, result.image, seconds, save_dir));
      if (!save_dir.empty()) {
        std::string log = "iteration,tau,residual,change\n";
        for (const auto& it : result.log) {
          log += std::to_string(it.iteration) + "," + format_number(it.tau) + "," + format_number(it.residual) + "," +
                 format_number(it.change) + "\n";
        }
        write_file(join_path(save_dir, image.name + "_spl_log.csv"), log);
      }
    }
  }
  return records;
}

MeasurementMatrix baseline_matrix(const RunConfig& config, double ratio) {
  Rng rng(config.seed + 1);
  return make_gaussian_matrix(measurements_for(ratio, config.block), config.block, rng, true);
}

template <typename T>
CsNetModel<T> load_checked_model(const RunConfig& config, const std::string& path) {
  CsNetModel<T> model = load_model<T>(path);
  if (config.is_set("block") && model.config.block_size != config.block) {
    throw ConfigError("model " + path + " has block size " + std::to_string(model.config.block_size) +
                      " but --block is " + std::to_string(config.block));
  }
  if (config.is_set("ratio") &&
      measurements_for(config.ratio, model.config.block_size) != model.config.measurements()) {
    throw ConfigError("model " + path + " has " + std::to_string(model.config.measurements()) +
                      " measurements per block but --ratio " + format_number(config.ratio) + " needs " +
                      std::to_string(measurements_for(config.ratio, model.config.block_size)));
  }
  model.config.final_relu = config.final_relu;
  return model;
}

// The nominal ratio if it names the model's measurement count, else n_B / B^2.
template <typename T>
double reported_ratio(const CsNetModel<T>& model, double nominal) {
  return measurements_for(nominal, model.config.block_size) == model.config.measurements() ? nominal
                                                                                           : model.config.sampling_ratio;
}

template <typename T>
int train_impl(const RunConfig& config, std::ostream& out) {
  std::vector<ImageRecord> images;
  {
    std::error_code ec;
    if (config.images.empty()) throw ConfigError("--images is required");
    if (!fs::exists(config.images, ec)) throw IoError("no such file or directory: " + config.images);
    if (fs::is_directory(config.images, ec)) {
      images = load_images(config.images);
    } else {
      images.push_back(load_image(config.images));
    }
  }
  Rng patch_rng(config.seed + 3);
  PatchSet patches = extract_patches(images, {config.patch_size, config.patches, config.augment}, patch_rng);
  patches.seed = config.seed + 3;
  for (const auto& w : patches.warnings) out << "warning: " << w << "\n";

  const std::string model_path = config.out.empty() ? "model.csnt" : config.out;
  const fs::path parent = fs::path(model_path).parent_path();
  if (!parent.empty()) {
    std::error_code ec;
    fs::create_directories(parent, ec);
    if (ec) throw IoError("cannot create directory " + parent.string() + ": " + ec.message());
  }

  CsNetModel<T> model = build_model<T>(config.model_config());
  std::string history = "epoch,mean_loss,learning_rate\n";
  train<T>(model, patches.patches, config.schedule(), config.seed + 4, [&](const EpochRecord& r) {
    history += std::to_string(r.epoch) + "," + format_number(r.mean_loss) + "," + format_number(r.learning_rate) + "\n";
    out << "epoch " << r.epoch << " loss " << format_number(r.mean_loss) << " lr " << format_number(r.learning_rate)
        << "\n";
    out.flush();
  });
  save_model(model, model_path);
  write_file((parent / "loss_history.csv").string(), history);
  out << "saved " << model_path << "\n";
  return kExitOk;
}

template <typename T>
int reconstruct_impl(const RunConfig& config, std::ostream& out) {
  if (config.model.empty()) throw ConfigError("--model is required");
  const CsNetModel<T> model = load_checked_model<T>(config, config.model);
  const auto images = prepare_images(config.images, model.config.block_size);
  const std::string dir = output_dir(config);
  const auto records = csnet_records(model, images, reported_ratio(model, config.ratio), config.stage, dir);
  write_report(dir, records, {}, out);
  return kExitOk;
}

template <typename T>
std::vector<EvalRecord> eval_csnet(const RunConfig& config, double ratio, const std::vector<Prepared>& images,
                                   std::vector<std::string>& warnings) {
  const std::string path = expand_template(config.model_template, ratio);
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) {
    warnings.push_back("csnet ratio " + format_number(ratio) + " skipped: no model file " + path);
    return {};
  }
  CsNetModel<T> model = load_model<T>(path);
  if (model.config.block_size != config.block || model.config.measurements() != measurements_for(ratio, config.block)) {
    warnings.push_back("csnet ratio " + format_number(ratio) + " skipped: " + path + " has B=" +
                       std::to_string(model.config.block_size) + ", n_B=" + std::to_string(model.config.measurements()));
    return {};
  }
  model.config.final_relu = config.final_relu;
  return csnet_records(model, images, ratio, "final", "");
}

}  // namespace

std::string expand_template(const std::string& pattern, double ratio) {
  std::string out = pattern;
  const std::string token = "{ratio}";
  const std::string value = format_number(ratio);
  for (auto pos = out.find(token); pos != std::string::npos; pos = out.find(token, pos + value.size())) {
    out.replace(pos, token.size(), value);
  }
  return out;
}

int cmd_train(const RunConfig& config, std::ostream& out) {
  config.validate();
  return config.precision == 64 ? train_impl<double>(config, out) : train_impl<float>(config, out);
}

int cmd_reconstruct(const RunConfig& config, std::ostream& out) {
  config.validate();
  return config.precision == 64 ? reconstruct_impl<double>(config, out) : reconstruct_impl<float>(config, out);
}

int cmd_baseline(const RunConfig& config, std::ostream& out) {
  config.validate();
  MeasurementMatrix phi;
  double ratio = config.ratio;
  if (!config.matrix.empty()) {
    phi = load_matrix(config.matrix);
    if (config.is_set("block") && phi.block_size != config.block) {
      throw ConfigError("matrix " + config.matrix + " has block size " + std::to_string(phi.block_size) +
                        " but --block is " + std::to_string(config.block));
    }
    if (measurements_for(ratio, phi.block_size) != phi.rows) {
      ratio = static_cast<double>(phi.rows) / static_cast<double>(phi.cols());
    }
  } else {
    phi = baseline_matrix(config, ratio);
  }
  const auto images = prepare_images(config.images, phi.block_size);
  const std::string dir = output_dir(config);
  const auto records = baseline_records(phi, config, images, ratio, true, config.stage != "initial", dir);
  write_report(dir, records, {}, out);
  return kExitOk;
}

int cmd_eval(const RunConfig& config, std::ostream& out, std::ostream& err) {
  config.validate();
  const auto images = prepare_images(config.images, config.block);
  const std::string dir = output_dir(config);
  auto wants = [&](const char* name) {
    return std::find(config.algorithms.begin(), config.algorithms.end(), name) != config.algorithms.end();
  };
  std::vector<EvalRecord> records;
  std::vector<std::string> warnings;
  for (double ratio : config.ratios) {
    if (wants("csnet")) {
      if (config.model_template.empty()) {
        warnings.push_back("csnet ratio " + format_number(ratio) + " skipped: --model-template not given");
      } else {
        auto rows = config.precision == 64 ? eval_csnet<double>(config, ratio, images, warnings)
                                           : eval_csnet<float>(config, ratio, images, warnings);
        records.insert(records.end(), rows.begin(), rows.end());
      }
    }
    if (wants("mmse") || wants("spl")) {
      auto rows = baseline_records(baseline_matrix(config, ratio), config, images, ratio, wants("mmse"), wants("spl"), "");
      records.insert(records.end(), rows.begin(), rows.end());
    }
  }
  for (const auto& w : warnings) err << "warning: " << w << "\n";
  write_report(dir, records, warnings, out);
  return kExitOk;
}

int cmd_export_matrix(const RunConfig& config, std::ostream& out) {
  if (config.model.empty()) throw ConfigError("--model is required");
  if (config.out.empty()) throw ConfigError("--out is required");
  const auto model = load_checked_model<double>(config, config.model);
  save_matrix(export_sampling_matrix(model), config.out);
  out << "saved " << config.out << "\n";
  return kExitOk;
}

int cmd_synth(const RunConfig& config, std::ostream& out) {
  if (config.out.empty()) throw ConfigError("--out is required");
  if (config.count == 0 || config.size == 0) throw ConfigError("--count and --size must be positive");
  write_corpus(synthetic_corpus(config.count, config.size, config.size, config.seed), config.out);
  out << "wrote " << config.count << " images to " << config.out << "\n";
  return kExitOk;
}

int run_command(const std::string& command, const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (command == "train") return cmd_train(config, out);
    if (command == "reconstruct") return cmd_reconstruct(config, out);
    if (command == "baseline") return cmd_baseline(config, out);
    if (command == "eval") return cmd_eval(config, out, err);
    if (command == "export-matrix") return cmd_export_matrix(config, out);
    if (command == "synth") return cmd_synth(config, out);
    err << "error: unknown command '" << command << "'\n";
    return kExitConfig;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}

}  // namespace csnet
