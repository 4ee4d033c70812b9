#pragma once

#include <Eigen/Core>
#include <iosfwd>
#include <vector>

#include "rdc/spd_matrix.hpp"

namespace rdc {

/// Labeled SPD matrices. Class ids run 1..num_classes() and every class has
/// at least one member; all matrices share one dimension.
class TrainingSet {
 public:
  /// Empty set; only create() produces a usable one.
  TrainingSet() = default;

  static TrainingSet create(std::vector<SpdMatrix> points, std::vector<int> labels);

  int size() const { return static_cast<int>(points_.size()); }
  int num_classes() const { return num_classes_; }
  int dim() const { return points_.front().dim(); }
  const std::vector<SpdMatrix>& points() const { return points_; }
  const std::vector<int>& labels() const { return labels_; }
  int class_count(int class_id) const { return class_counts_[class_id - 1]; }

 private:
  std::vector<SpdMatrix> points_;
  std::vector<int> labels_;
  std::vector<int> class_counts_;
  int num_classes_ = 0;
};

/// Similarity vector of training point i: entry l is the mean Stein
/// divergence from point i to the members of class l, the point itself
/// excluded (divide by n_l - 1 for its own class, n_l otherwise).
/// Entries are dissimilarities: smaller means closer.
/// Throws SingletonOwnClass when point i is the only member of its class.
Eigen::VectorXd similarity_train(const TrainingSet& training, int i);

/// Similarity vector of an out-of-set query: entry l is the mean Stein
/// divergence to all n_l members of class l.
Eigen::VectorXd similarity_query(const TrainingSet& training, const SpdMatrix& query);

/// Fisher discriminant fitted on similarity vectors.
struct LdaModel {
  Eigen::MatrixXd projection;           // p x k, unit columns, sign-canonical
  Eigen::VectorXd eigenvalues;          // retained, non-increasing
  Eigen::MatrixXd projected_training;   // n x k
  std::vector<int> labels;              // n
  double scatter_regularizer = 0.0;     // gamma added to S_W before solving
};

/// Solves S_B w = lambda (S_W + gamma I) w on the rows of `vectors`
/// (one sample per row), gamma = 1e-6 * trace(S_W) / m. Keeps the
/// eigenvectors with lambda > 1e-10 * lambda_max, at most m - 1 of them,
/// sorted by decreasing eigenvalue; each column is normalized to unit
/// Euclidean length with its first nonzero component positive.
/// Throws DegenerateScatter when the class means coincide.
LdaModel fit_lda(const Eigen::MatrixXd& vectors, const std::vector<int>& labels);

/// W^T s; the linear map into discriminant space.
Eigen::VectorXd project(const LdaModel& model, const Eigen::VectorXd& s);

struct ScoredClass {
  int class_id = 0;
  double score = 0.0;
};

/// Ascending by score, ties broken by ascending class id. scores[l-1] is
/// the score of class l.
std::vector<ScoredClass> rank_classes(const std::vector<double>& scores);

/// Relational divergence classifier: similarity vectors of the training set,
/// an LDA map fitted on them, and nearest-neighbour ranking in the projected
/// space. Immutable once fitted; safe for concurrent classification.
class RdcClassifier {
 public:
  static RdcClassifier fit(TrainingSet training, int threads = 1);

  /// All classes ranked by the minimum projected-space distance from the
  /// query to each class's training points.
  std::vector<ScoredClass> classify(const SpdMatrix& query) const;

  const TrainingSet& training() const { return training_; }
  const LdaModel& lda() const { return lda_; }

  /// Rebuilds a classifier from a persisted model plus the training set it
  /// was fitted on. Throws DataError when the two disagree.
  static RdcClassifier from_parts(TrainingSet training, const struct RdcModelFile& model);

 private:
  RdcClassifier(TrainingSet training, LdaModel lda);

  TrainingSet training_;
  LdaModel lda_;
  std::vector<std::vector<int>> class_members_;  // class id - 1 -> indices
};

/// Baseline: rank classes by the minimum Stein divergence from the query to
/// each class's training points; same tie rule as classify().
std::vector<ScoredClass> classify_direct_stein(const TrainingSet& training,
                                               const SpdMatrix& query);

/// Persisted LDA half of a fitted classifier (the gallery matrices live in
/// their own .cov files). Text format:
///   rdc-model v1 d=<d> m=<m> k=<k> n=<n> gamma=<gamma>
///   <projection in matrix text format>
///   <n lines: label followed by k projected coordinates>
struct RdcModelFile {
  int d = 0;
  int m = 0;
  int k = 0;
  int n = 0;
  double gamma = 0.0;
  Eigen::MatrixXd projection;
  Eigen::MatrixXd projected_training;
  std::vector<int> labels;
};

void save_rdc_model(std::ostream& out, const RdcClassifier& classifier);
RdcModelFile load_rdc_model(std::istream& in);

}  // namespace rdc
