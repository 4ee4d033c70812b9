#include "rdc/evaluation.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>

#include "parallel.hpp"
#include "rdc/divergence.hpp"
#include "rdc/rng.hpp"

namespace rdc {

namespace fs = std::filesystem;

namespace {

Eigen::MatrixXd fill_normal(int rows, int cols, Xoshiro256StarStar& rng) {
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = rng.normal();
  }
  return m;
}

std::vector<int> ranked_ids(const std::vector<ScoredClass>& ranked) {
  std::vector<int> ids(ranked.size());
  for (std::size_t i = 0; i < ranked.size(); ++i) ids[i] = ranked[i].class_id;
  return ids;
}

}  // namespace

SplitResult split(const Dataset& dataset, int gallery_size, std::uint64_t seed,
                  std::uint64_t repetition) {
  if (gallery_size < 1) throw DataError("gallery size must be at least 1");

  std::vector<std::size_t> order(dataset.identities.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return dataset.identities[a].id < dataset.identities[b].id;
  });

  SplitResult result;
  std::vector<SpdMatrix> gallery_points;
  std::vector<int> gallery_labels;
  for (std::size_t sorted_index = 0; sorted_index < order.size(); ++sorted_index) {
    const auto& identity = dataset.identities[order[sorted_index]];
    const std::size_t image_count = identity.descriptors.size();
    // An identity needs at least one probe left over after the draw.
    if (image_count <= static_cast<std::size_t>(gallery_size)) {
      result.excluded_ids.push_back(identity.id);
      continue;
    }
    const int class_id = static_cast<int>(result.class_ids.size()) + 1;
    result.class_ids.push_back(identity.id);

    Xoshiro256StarStar rng(stream_seed(seed, repetition, sorted_index));
    std::vector<std::size_t> indices(image_count);
    std::iota(indices.begin(), indices.end(), 0);
    for (int t = 0; t < gallery_size; ++t) {
      const std::size_t j = t + rng.below(image_count - t);
      std::swap(indices[t], indices[j]);
    }
    std::sort(indices.begin(), indices.begin() + gallery_size);
    std::sort(indices.begin() + gallery_size, indices.end());
    for (int t = 0; t < gallery_size; ++t) {
      gallery_points.push_back(identity.descriptors[indices[t]].matrix);
      gallery_labels.push_back(class_id);
    }
    for (std::size_t t = gallery_size; t < image_count; ++t) {
      result.probes.emplace_back(identity.descriptors[indices[t]], class_id);
    }
  }
  if (result.class_ids.empty()) {
    throw NoEligibleIdentities("no identity has more than " + std::to_string(gallery_size) +
                               " images");
  }
  result.gallery = TrainingSet::create(std::move(gallery_points), std::move(gallery_labels));
  return result;
}

CmcCurve cmc(const std::vector<std::vector<int>>& rank_lists,
             const std::vector<int>& true_ids, int num_classes) {
  if (rank_lists.size() != true_ids.size()) {
    throw DataError("CMC: rank list count does not match true id count");
  }
  if (rank_lists.empty()) throw DataError("CMC: no probes");
  std::vector<long> hits_at_rank(num_classes, 0);
  std::vector<char> seen(num_classes);
  for (std::size_t p = 0; p < rank_lists.size(); ++p) {
    const auto& list = rank_lists[p];
    if (list.size() != static_cast<std::size_t>(num_classes)) {
      throw MalformedRankList("rank list has " + std::to_string(list.size()) +
                              " entries; expected " + std::to_string(num_classes));
    }
    std::fill(seen.begin(), seen.end(), 0);
    int true_rank = 0;
    for (std::size_t r = 0; r < list.size(); ++r) {
      const int id = list[r];
      if (id < 1 || id > num_classes || seen[id - 1]) {
        throw MalformedRankList("rank list is not a permutation of the gallery identities");
      }
      seen[id - 1] = 1;
      if (id == true_ids[p]) true_rank = static_cast<int>(r) + 1;
    }
    if (true_rank == 0) {
      throw MalformedRankList("true identity " + std::to_string(true_ids[p]) +
                              " missing from a rank list");
    }
    ++hits_at_rank[true_rank - 1];
  }
  CmcCurve curve;
  curve.rates.resize(num_classes);
  long running = 0;
  for (int k = 0; k < num_classes; ++k) {
    running += hits_at_rank[k];
    curve.rates[k] = static_cast<double>(running) / static_cast<double>(rank_lists.size());
  }
  return curve;
}

ExperimentResult run_experiment(const Dataset& dataset, const Experiment& experiment,
                                int threads) {
  if (experiment.repetitions < 1) throw DataError("repetitions must be at least 1");
  if (experiment.gallery_size < 1) throw DataError("gallery size must be at least 1");
  if (experiment.method == Method::kRdc && experiment.gallery_size < 2) {
    throw DataError("the rdc method needs a gallery of at least 2 images per person");
  }

  ExperimentResult result;
  for (int rep = 1; rep <= experiment.repetitions; ++rep) {
    SplitResult s = split(dataset, experiment.gallery_size, experiment.seed,
                          static_cast<std::uint64_t>(rep));
    if (rep == 1) result.excluded_ids = s.excluded_ids;
    const int m = s.gallery.num_classes();
    const auto probe_count = static_cast<std::int64_t>(s.probes.size());
    std::vector<std::vector<int>> rank_lists(probe_count);
    std::vector<int> true_ids(probe_count);
    for (std::int64_t p = 0; p < probe_count; ++p) true_ids[p] = s.probes[p].second;

    if (experiment.method == Method::kRdc) {
      const RdcClassifier classifier = RdcClassifier::fit(std::move(s.gallery), threads);
      detail::parallel_for(probe_count, threads, [&](std::int64_t p) {
        rank_lists[p] = ranked_ids(classifier.classify(s.probes[p].first.matrix));
      });
    } else {
      detail::parallel_for(probe_count, threads, [&](std::int64_t p) {
        rank_lists[p] = ranked_ids(classify_direct_stein(s.gallery, s.probes[p].first.matrix));
      });
    }
    result.per_repetition.push_back(cmc(rank_lists, true_ids, m));
  }

  const std::size_t ranks = result.per_repetition.front().rates.size();
  result.mean.rates.assign(ranks, 0.0);
  for (const auto& curve : result.per_repetition) {
    for (std::size_t k = 0; k < ranks; ++k) result.mean.rates[k] += curve.rates[k];
  }
  for (auto& rate : result.mean.rates) rate /= static_cast<double>(experiment.repetitions);
  return result;
}

Dataset generate_synthetic(int classes, int per_class, int dim, double spread,
                           std::uint64_t seed) {
  if (classes < 2) throw DataError("synthetic dataset needs at least 2 classes");
  if (per_class < 3) throw DataError("synthetic dataset needs at least 3 images per class");
  if (dim < 2) throw DataError("synthetic dataset needs dimension at least 2");
  if (!(spread >= 0.0) || !std::isfinite(spread)) {
    throw DataError("spread must be a finite nonnegative value");
  }

  Xoshiro256StarStar rng(seed);
  const Eigen::MatrixXd identity_matrix = Eigen::MatrixXd::Identity(dim, dim);
  Dataset dataset;
  dataset.dim = dim;
  int id_width = 1;
  for (int v = classes - 1; v >= 10; v /= 10) ++id_width;

  for (int l = 0; l < classes; ++l) {
    const Eigen::MatrixXd g = fill_normal(dim, dim, rng);
    const SpdMatrix center = SpdMatrix::validate(g * g.transpose() + identity_matrix);

    Dataset::Identity identity;
    std::string label = std::to_string(l);
    if (static_cast<int>(label.size()) < id_width) {
      label.insert(0, id_width - label.size(), '0');
    }
    identity.id = "c" + label;
    for (int s = 0; s < per_class; ++s) {
      Eigen::MatrixXd transform;
      do {
        transform = identity_matrix + spread * fill_normal(dim, dim, rng);
      } while (std::abs(transform.determinant()) <= kSingularDeterminantGuard);
      identity.descriptors.push_back({congruence(center, transform), 0});
    }
    dataset.identities.push_back(std::move(identity));
  }
  return dataset;
}

void write_cmc_csv(std::ostream& out, const ExperimentResult& result) {
  out << "rank,mean_rate";
  for (std::size_t r = 1; r <= result.per_repetition.size(); ++r) out << ",rep" << r;
  out << '\n';
  char buffer[32];
  for (std::size_t k = 0; k < result.mean.rates.size(); ++k) {
    out << (k + 1);
    std::snprintf(buffer, sizeof(buffer), ",%.6f", result.mean.rates[k]);
    out << buffer;
    for (const auto& curve : result.per_repetition) {
      std::snprintf(buffer, sizeof(buffer), ",%.6f", curve.rates[k]);
      out << buffer;
    }
    out << '\n';
  }
}

Dataset load_dataset(const fs::path& root, double eps) {
  if (!fs::is_directory(root)) {
    throw DataError("dataset root '" + root.string() + "' is not a directory");
  }
  std::vector<fs::path> identity_dirs;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (entry.is_directory()) identity_dirs.push_back(entry.path());
  }
  std::sort(identity_dirs.begin(), identity_dirs.end());

  Dataset dataset;
  for (const auto& dir : identity_dirs) {
    std::vector<std::string> stems;
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (!entry.is_regular_file()) continue;
      const fs::path& file = entry.path();
      const std::string ext = file.extension().string();
      if (ext == ".cov") {
        stems.push_back(file.stem().string());
      } else if (ext == ".ppm") {
        stems.push_back(file.stem().string());
      }
    }
    std::sort(stems.begin(), stems.end());
    stems.erase(std::unique(stems.begin(), stems.end()), stems.end());
    if (stems.empty()) continue;  // empty identity directories are skipped

    Dataset::Identity identity;
    identity.id = dir.filename().string();
    for (const auto& stem : stems) {
      const fs::path cov_path = dir / (stem + ".cov");
      if (fs::exists(cov_path)) {
        identity.descriptors.push_back(read_cov_file(cov_path));
        continue;
      }
      const fs::path image_path = dir / (stem + ".ppm");
      const Image image = read_ppm_file(image_path);
      const fs::path mask_path = dir / (stem + ".mask.pgm");
      ForegroundMask mask = fs::exists(mask_path)
                                ? read_pgm_mask_file(mask_path)
                                : ForegroundMask::all_foreground(image.width, image.height);
      CovarianceDescriptor descriptor = [&] {
        try {
          return describe(image, mask, eps);
        } catch (const NumericError& e) {
          throw NumericError("'" + image_path.string() + "': " + e.what());
        } catch (const Error& e) {
          throw DataError("'" + image_path.string() + "': " + e.what());
        }
      }();
      // Cache for later runs; a read-only tree only costs recomputation.
      try {
        write_cov_file(cov_path, descriptor);
      } catch (const DataError&) {
        std::cerr << "warning: could not cache descriptor to '" << cov_path.string() << "'\n";
      }
      identity.descriptors.push_back(std::move(descriptor));
    }
    dataset.identities.push_back(std::move(identity));
  }
  if (dataset.identities.empty()) {
    throw DataError("dataset root '" + root.string() + "' contains no identities");
  }
  dataset.dim = dataset.identities.front().descriptors.front().matrix.dim();
  for (const auto& identity : dataset.identities) {
    for (const auto& descriptor : identity.descriptors) {
      if (descriptor.matrix.dim() != dataset.dim) {
        throw DimensionMismatch("identity '" + identity.id + "' mixes descriptor dimensions");
      }
    }
  }
  return dataset;
}

void write_dataset(const Dataset& dataset, const fs::path& root) {
  fs::create_directories(root);
  for (const auto& identity : dataset.identities) {
    const fs::path dir = root / identity.id;
    fs::create_directories(dir);
    std::size_t index_width = 1;
    for (std::size_t v = identity.descriptors.size(); v >= 10; v /= 10) ++index_width;
    for (std::size_t i = 0; i < identity.descriptors.size(); ++i) {
      std::string name = std::to_string(i);
      if (name.size() < index_width) name.insert(0, index_width - name.size(), '0');
      write_cov_file(dir / (name + ".cov"), identity.descriptors[i]);
    }
  }
}

}  // namespace rdc
