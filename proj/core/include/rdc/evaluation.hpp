#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "rdc/classifier.hpp"
#include "rdc/descriptor.hpp"

namespace rdc {

/// A re-identification dataset: one descriptor list per person.
struct Dataset {
  struct Identity {
    std::string id;
    std::vector<CovarianceDescriptor> descriptors;
  };
  std::vector<Identity> identities;
  int dim = 0;
};

enum class Method { kRdc, kDirectStein };

/// Evaluation protocol: N gallery images per person, R random repetitions.
struct Experiment {
  int gallery_size = 0;
  int repetitions = 0;
  std::uint64_t seed = 0;
  Method method = Method::kRdc;
};

/// Cumulative matching characteristic; rates[k-1] is the fraction of probes
/// whose true identity appears within the top k ranks. Non-decreasing and
/// ends at 1.0.
struct CmcCurve {
  std::vector<double> rates;
};

/// One random gallery/probe split. Identities with fewer than
/// gallery_size + 1 images are excluded (no probes would remain) and listed
/// in excluded_ids. Class ids are assigned 1..m over the eligible
/// identities in sorted-id order; class_ids maps them back to person ids.
struct SplitResult {
  TrainingSet gallery;
  std::vector<std::pair<CovarianceDescriptor, int>> probes;  // descriptor, true class
  std::vector<std::string> class_ids;
  std::vector<std::string> excluded_ids;
};

/// Draws exactly gallery_size descriptors per eligible identity, uniformly
/// without replacement; the rest become probes. Each identity consumes its
/// own RNG stream keyed by (seed, repetition, sorted-id-index), so the split
/// depends on neither the enumeration order of the dataset nor the method
/// run on it. Throws NoEligibleIdentities when nothing qualifies.
SplitResult split(const Dataset& dataset, int gallery_size, std::uint64_t seed,
                  std::uint64_t repetition);

/// CMC over per-probe rank lists. Every rank list must be a permutation of
/// the class ids 1..num_classes holding the probe's true id; otherwise
/// MalformedRankList.
CmcCurve cmc(const std::vector<std::vector<int>>& rank_lists,
             const std::vector<int>& true_ids, int num_classes);

struct ExperimentResult {
  CmcCurve mean;
  std::vector<CmcCurve> per_repetition;
  std::vector<std::string> excluded_ids;
};

/// Runs the full protocol: per repetition r in 1..R, split with
/// (seed, r), fit the chosen method on the gallery, rank every probe, and
/// compute the CMC; the mean curve is the pointwise average. Deterministic
/// for fixed inputs, for any thread count.
ExperimentResult run_experiment(const Dataset& dataset, const Experiment& experiment,
                                int threads = 1);

/// Synthetic dataset: per class a random SPD center G G^T + I, per sample a
/// congruence perturbation X C X^T with X = I + spread * E (E standard
/// normal, redrawn until invertible). Deterministic for a fixed seed.
Dataset generate_synthetic(int classes, int per_class, int dim, double spread,
                           std::uint64_t seed);

/// CSV with header "rank,mean_rate,rep1,...,repR" and one row per rank;
/// rates use six decimal places.
void write_cmc_csv(std::ostream& out, const ExperimentResult& result);

/// Loads a dataset from the directory layout <root>/<person-id>/<image>.ppm
/// with optional <image>.mask.pgm siblings (absent mask = all foreground).
/// Descriptors are cached to <image>.cov next to the image and reused on
/// later runs; identities and images are taken in sorted name order.
Dataset load_dataset(const std::filesystem::path& root,
                     double eps = kDefaultCovarianceEps);

/// Writes descriptors as <root>/<person-id>/<index>.cov, the layout
/// load_dataset reads back.
void write_dataset(const Dataset& dataset, const std::filesystem::path& root);

}  // namespace rdc
