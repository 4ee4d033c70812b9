// Command-line front end: covariance descriptors, SPD divergences, and the
// re-identification evaluation harness.

#include <CLI11.hpp>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "rdc/descriptor.hpp"
#include "rdc/divergence.hpp"
#include "rdc/evaluation.hpp"
#include "rdc/matrix_io.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitDataError = 2;
constexpr int kExitNumericError = 3;

rdc::SpdMatrix load_spd(const std::string& path) {
  const Eigen::MatrixXd m = rdc::read_matrix_file(path);
  try {
    return rdc::SpdMatrix::validate(m);
  } catch (const rdc::DataError& e) {
    throw rdc::DataError("'" + path + "': " + e.what());
  }
}

int run_divergence(const std::string& metric, const std::string& a_path,
                   const std::string& b_path) {
  const rdc::SpdMatrix a = load_spd(a_path);
  const rdc::SpdMatrix b = load_spd(b_path);
  double value = 0.0;
  if (metric == "stein") {
    value = rdc::stein(a, b);
  } else if (metric == "airm") {
    value = rdc::airm(a, b);
  } else if (metric == "bregman") {
    value = rdc::bregman_logdet(a, b);
  } else {
    value = rdc::js_symmetrized(a, b);
  }
  std::printf("%.12g\n", value);
  return 0;
}

int run_describe(const std::string& root, double eps) {
  if (!fs::is_directory(root)) {
    throw rdc::DataError("dataset root '" + root + "' is not a directory");
  }
  long images = 0;
  long identities = 0;
  std::vector<fs::path> dirs;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (entry.is_directory()) dirs.push_back(entry.path());
  }
  std::sort(dirs.begin(), dirs.end());
  for (const auto& dir : dirs) {
    std::vector<fs::path> ppms;
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".ppm") {
        ppms.push_back(entry.path());
      }
    }
    std::sort(ppms.begin(), ppms.end());
    if (ppms.empty()) continue;
    ++identities;
    for (const auto& ppm : ppms) {
      const rdc::Image image = rdc::read_ppm_file(ppm);
      const fs::path mask_path = dir / (ppm.stem().string() + ".mask.pgm");
      const rdc::ForegroundMask mask =
          fs::exists(mask_path) ? rdc::read_pgm_mask_file(mask_path)
                                : rdc::ForegroundMask::all_foreground(image.width, image.height);
      const rdc::CovarianceDescriptor descriptor = [&] {
        try {
          return rdc::describe(image, mask, eps);
        } catch (const rdc::NumericError& e) {
          throw rdc::NumericError("'" + ppm.string() + "': " + e.what());
        } catch (const rdc::Error& e) {
          throw rdc::DataError("'" + ppm.string() + "': " + e.what());
        }
      }();
      rdc::write_cov_file(dir / (ppm.stem().string() + ".cov"), descriptor);
      ++images;
    }
  }
  if (images == 0) {
    throw rdc::DataError("no .ppm images found under '" + root + "'");
  }
  std::printf("described %ld images across %ld identities\n", images, identities);
  return 0;
}

int run_run(const std::string& root, const std::string& method_name, int gallery_size,
            int reps, std::uint64_t seed, const std::string& out_path, int threads) {
  rdc::Experiment experiment;
  experiment.gallery_size = gallery_size;
  experiment.repetitions = reps;
  experiment.seed = seed;
  experiment.method =
      method_name == "rdc" ? rdc::Method::kRdc : rdc::Method::kDirectStein;

  const rdc::Dataset dataset = rdc::load_dataset(root);
  const rdc::ExperimentResult result = rdc::run_experiment(dataset, experiment, threads);
  for (const auto& id : result.excluded_ids) {
    std::cerr << "warning: identity '" << id << "' has at most " << gallery_size
              << " images and was excluded\n";
  }
  std::ofstream out(out_path);
  if (!out) throw rdc::DataError("cannot open '" + out_path + "' for writing");
  rdc::write_cmc_csv(out, result);
  if (!out) throw rdc::DataError("failed writing '" + out_path + "'");
  std::printf("method=%s identities=%zu mean_rank1=%.6f\n", method_name.c_str(),
              result.mean.rates.size(), result.mean.rates.front());
  return 0;
}

int run_synth(int classes, int per_class, int dim, double spread, std::uint64_t seed,
              const std::string& out_dir) {
  const rdc::Dataset dataset = rdc::generate_synthetic(classes, per_class, dim, spread, seed);
  rdc::write_dataset(dataset, out_dir);
  std::printf("wrote %d identities x %d descriptors (dim %d) to %s\n", classes, per_class,
              dim, out_dir.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Region-covariance person re-identification toolkit"};
  app.require_subcommand(1);

  auto* divergence = app.add_subcommand(
      "divergence", "Divergence between two SPD matrices in matrix text format");
  std::string metric;
  std::vector<std::string> matrix_files;
  divergence->add_option("--metric", metric, "One of stein|airm|bregman|js")
      ->required()
      ->check(CLI::IsMember({"stein", "airm", "bregman", "js"}));
  divergence->add_option("files", matrix_files, "A.mat B.mat")->expected(2)->required();

  auto* describe = app.add_subcommand(
      "describe", "Compute .cov descriptors for every .ppm under a dataset root");
  std::string describe_root;
  double eps = rdc::kDefaultCovarianceEps;
  describe->add_option("--root", describe_root, "Dataset root directory")->required();
  describe->add_option("--eps", eps, "Identity shrinkage added to each covariance")
      ->check(CLI::NonNegativeNumber);

  auto* run = app.add_subcommand("run", "Run a CMC evaluation experiment");
  std::string run_root;
  std::string method = "rdc";
  int gallery_size = 0;
  int reps = 10;
  std::uint64_t seed = 0;
  std::string out_path;
  int threads = 1;
  run->add_option("--root", run_root, "Dataset root directory")->required();
  run->add_option("--method", method, "rdc or direct-stein")
      ->required()
      ->check(CLI::IsMember({"rdc", "direct-stein"}));
  run->add_option("--gallery-size", gallery_size, "Gallery images per person")
      ->required()
      ->check(CLI::PositiveNumber);
  run->add_option("--reps", reps, "Number of random repetitions")->check(CLI::PositiveNumber);
  run->add_option("--seed", seed, "Experiment seed")->required();
  run->add_option("--out", out_path, "Output CSV path")->required();
  run->add_option("--threads", threads, "Worker threads (results are identical for any count)")
      ->check(CLI::PositiveNumber);

  auto* synth = app.add_subcommand("synth", "Generate a synthetic dataset of descriptors");
  int classes = 0;
  int per_class = 0;
  int dim = 14;
  double spread = 0.05;
  std::uint64_t synth_seed = 0;
  std::string synth_out;
  synth->add_option("--classes", classes, "Number of identities")
      ->required()
      ->check(CLI::Range(2, 1000000));
  synth->add_option("--per-class", per_class, "Descriptors per identity")
      ->required()
      ->check(CLI::Range(3, 1000000));
  synth->add_option("--dim", dim, "Descriptor dimension")->check(CLI::Range(2, 1000));
  synth->add_option("--spread", spread, "Congruence perturbation scale")
      ->check(CLI::NonNegativeNumber);
  synth->add_option("--seed", synth_seed, "Generator seed")->required();
  synth->add_option("--out", synth_out, "Output dataset directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (app.got_subcommand(divergence)) {
      return run_divergence(metric, matrix_files[0], matrix_files[1]);
    }
    if (app.got_subcommand(describe)) {
      return run_describe(describe_root, eps);
    }
    if (app.got_subcommand(run)) {
      if (method == "rdc" && gallery_size < 2) {
        std::cerr << "error: --method rdc needs --gallery-size of at least 2\n";
        return kExitUsage;
      }
      return run_run(run_root, method, gallery_size, reps, seed, out_path, threads);
    }
    return run_synth(classes, per_class, dim, spread, synth_seed, synth_out);
  } catch (const rdc::NumericError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumericError;
  } catch (const rdc::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDataError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumericError;
  }
}
