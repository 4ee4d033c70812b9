#include "rdc/classifier.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <utility>

#include "parallel.hpp"
#include "rdc/divergence.hpp"
#include "rdc/matrix_io.hpp"

namespace rdc {

namespace {

constexpr double kScatterRegularizerScale = 1e-6;
constexpr double kEigenvalueKeepRatio = 1e-10;
constexpr double kSignCanonicalThreshold = 1e-10;

std::vector<int> count_classes(const std::vector<int>& labels, int num_classes) {
  std::vector<int> counts(num_classes, 0);
  for (const int label : labels) {
    if (label < 1 || label > num_classes) {
      throw DataError("class label " + std::to_string(label) + " outside 1.." +
                      std::to_string(num_classes));
    }
    ++counts[label - 1];
  }
  return counts;
}

}  // namespace

TrainingSet TrainingSet::create(std::vector<SpdMatrix> points, std::vector<int> labels) {
  if (points.empty()) throw DataError("training set is empty");
  if (points.size() != labels.size()) {
    throw DataError("training set has " + std::to_string(points.size()) + " points but " +
                    std::to_string(labels.size()) + " labels");
  }
  const int dim = points.front().dim();
  for (const auto& p : points) {
    if (p.dim() != dim) {
      throw DimensionMismatch("training matrices mix dimensions " + std::to_string(dim) +
                              " and " + std::to_string(p.dim()));
    }
  }
  const int num_classes = *std::max_element(labels.begin(), labels.end());
  auto counts = count_classes(labels, num_classes);
  for (int l = 0; l < num_classes; ++l) {
    if (counts[l] == 0) {
      throw DataError("class " + std::to_string(l + 1) + " has no members");
    }
  }
  TrainingSet ts;
  ts.points_ = std::move(points);
  ts.labels_ = std::move(labels);
  ts.class_counts_ = std::move(counts);
  ts.num_classes_ = num_classes;
  return ts;
}

Eigen::VectorXd similarity_train(const TrainingSet& training, int i) {
  if (i < 0 || i >= training.size()) {
    throw DataError("training index " + std::to_string(i) + " out of range");
  }
  const int own_class = training.labels()[i];
  if (training.class_count(own_class) < 2) {
    throw SingletonOwnClass("class " + std::to_string(own_class) +
                            " has a single member; its leave-one-out mean is undefined");
  }
  const int m = training.num_classes();
  Eigen::VectorXd s = Eigen::VectorXd::Zero(m);
  for (int j = 0; j < training.size(); ++j) {
    if (j == i) continue;
    s[training.labels()[j] - 1] += stein(training.points()[i], training.points()[j]);
  }
  for (int l = 1; l <= m; ++l) {
    const int divisor = (l == own_class) ? training.class_count(l) - 1 : training.class_count(l);
    s[l - 1] /= static_cast<double>(divisor);
  }
  return s;
}

Eigen::VectorXd similarity_query(const TrainingSet& training, const SpdMatrix& query) {
  if (query.dim() != training.dim()) {
    throw DimensionMismatch("query dimension " + std::to_string(query.dim()) +
                            " does not match training dimension " +
                            std::to_string(training.dim()));
  }
  const int m = training.num_classes();
  Eigen::VectorXd s = Eigen::VectorXd::Zero(m);
  for (int j = 0; j < training.size(); ++j) {
    s[training.labels()[j] - 1] += stein(query, training.points()[j]);
  }
  for (int l = 1; l <= m; ++l) {
    s[l - 1] /= static_cast<double>(training.class_count(l));
  }
  return s;
}

LdaModel fit_lda(const Eigen::MatrixXd& vectors, const std::vector<int>& labels) {
  const Eigen::Index n = vectors.rows();
  const Eigen::Index p = vectors.cols();
  if (static_cast<std::size_t>(n) != labels.size()) {
    throw DataError("LDA: row count does not match label count");
  }
  if (n == 0) throw DataError("LDA: empty input");
  const int m = *std::max_element(labels.begin(), labels.end());
  const auto counts = count_classes(labels, m);
  for (int l = 0; l < m; ++l) {
    if (counts[l] == 0) throw DataError("LDA: class " + std::to_string(l + 1) + " is empty");
  }
  if (m < 2) throw DataError("LDA needs at least two classes");
  if (n <= m) throw DataError("LDA needs more samples than classes");

  Eigen::MatrixXd class_means = Eigen::MatrixXd::Zero(p, m);
  for (Eigen::Index i = 0; i < n; ++i) {
    class_means.col(labels[i] - 1) += vectors.row(i).transpose();
  }
  Eigen::VectorXd global_mean = Eigen::VectorXd::Zero(p);
  for (int l = 0; l < m; ++l) {
    global_mean += class_means.col(l);
    class_means.col(l) /= static_cast<double>(counts[l]);
  }
  global_mean /= static_cast<double>(n);

  Eigen::MatrixXd within = Eigen::MatrixXd::Zero(p, p);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::VectorXd dev = vectors.row(i).transpose() - class_means.col(labels[i] - 1);
    within.noalias() += dev * dev.transpose();
  }
  Eigen::MatrixXd between = Eigen::MatrixXd::Zero(p, p);
  for (int l = 0; l < m; ++l) {
    const Eigen::VectorXd dev = class_means.col(l) - global_mean;
    between.noalias() += static_cast<double>(counts[l]) * dev * dev.transpose();
  }

  if (between.norm() <= 1e-12 * std::max(1.0, within.norm())) {
    throw DegenerateScatter("between-class scatter is numerically zero");
  }

  double gamma = kScatterRegularizerScale * within.trace() / static_cast<double>(m);
  if (!(gamma > 0.0)) {
    // Identical vectors within every class leave S_W exactly zero; fall back
    // to a tiny absolute ridge so the pencil stays definite.
    gamma = 1e-12 * std::max(1.0, between.trace() / static_cast<double>(m));
  }
  const Eigen::MatrixXd regularized =
      within + gamma * Eigen::MatrixXd::Identity(p, p);

  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      between, regularized, Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
  if (solver.info() != Eigen::Success) {
    throw EigenFailure("generalized symmetric eigensolver did not converge");
  }
  const Eigen::VectorXd eigenvalues = solver.eigenvalues();  // ascending
  const double lambda_max = eigenvalues(p - 1);
  if (!(lambda_max > 0.0)) {
    throw DegenerateScatter("no positive generalized eigenvalue");
  }
  const Eigen::Index max_rank = std::min<Eigen::Index>(m - 1, p);
  Eigen::Index k = 0;
  while (k < max_rank && eigenvalues(p - 1 - k) > kEigenvalueKeepRatio * lambda_max) ++k;

  LdaModel model;
  model.projection.resize(p, k);
  model.eigenvalues.resize(k);
  for (Eigen::Index t = 0; t < k; ++t) {
    Eigen::VectorXd column = solver.eigenvectors().col(p - 1 - t);
    column /= column.norm();
    for (Eigen::Index j = 0; j < p; ++j) {
      if (std::abs(column(j)) > kSignCanonicalThreshold) {
        if (column(j) < 0.0) column = -column;
        break;
      }
    }
    model.projection.col(t) = column;
    model.eigenvalues(t) = eigenvalues(p - 1 - t);
  }
  model.projected_training = vectors * model.projection;
  model.labels = labels;
  model.scatter_regularizer = gamma;
  return model;
}

Eigen::VectorXd project(const LdaModel& model, const Eigen::VectorXd& s) {
  if (s.size() != model.projection.rows()) {
    throw DimensionMismatch("similarity vector has length " + std::to_string(s.size()) +
                            "; the model expects " + std::to_string(model.projection.rows()));
  }
  return model.projection.transpose() * s;
}

std::vector<ScoredClass> rank_classes(const std::vector<double>& scores) {
  std::vector<ScoredClass> ranked(scores.size());
  for (std::size_t l = 0; l < scores.size(); ++l) {
    ranked[l] = {static_cast<int>(l) + 1, scores[l]};
  }
  std::sort(ranked.begin(), ranked.end(), [](const ScoredClass& a, const ScoredClass& b) {
    if (a.score != b.score) return a.score < b.score;
    return a.class_id < b.class_id;
  });
  return ranked;
}

RdcClassifier::RdcClassifier(TrainingSet training, LdaModel lda)
    : training_(std::move(training)), lda_(std::move(lda)) {
  class_members_.resize(training_.num_classes());
  for (int i = 0; i < training_.size(); ++i) {
    class_members_[training_.labels()[i] - 1].push_back(i);
  }
}

RdcClassifier RdcClassifier::fit(TrainingSet training, int threads) {
  const int n = training.size();
  const int m = training.num_classes();
  for (int l = 1; l <= m; ++l) {
    if (training.class_count(l) < 2) {
      throw SingletonOwnClass("class " + std::to_string(l) +
                              " needs at least 2 training points");
    }
  }
  const Eigen::MatrixXd pairwise = pairwise_stein(training.points(), threads);
  Eigen::MatrixXd vectors(n, m);
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd s = Eigen::VectorXd::Zero(m);
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      s[training.labels()[j] - 1] += pairwise(i, j);
    }
    for (int l = 1; l <= m; ++l) {
      const int divisor =
          (l == training.labels()[i]) ? training.class_count(l) - 1 : training.class_count(l);
      s[l - 1] /= static_cast<double>(divisor);
    }
    vectors.row(i) = s.transpose();
  }
  LdaModel lda = fit_lda(vectors, training.labels());
  return RdcClassifier(std::move(training), std::move(lda));
}

std::vector<ScoredClass> RdcClassifier::classify(const SpdMatrix& query) const {
  const Eigen::VectorXd s = similarity_query(training_, query);
  const Eigen::VectorXd x = project(lda_, s);
  std::vector<double> scores(training_.num_classes());
  for (std::size_t l = 0; l < class_members_.size(); ++l) {
    double best = std::numeric_limits<double>::infinity();
    for (const int i : class_members_[l]) {
      const double dist = (lda_.projected_training.row(i).transpose() - x).norm();
      best = std::min(best, dist);
    }
    scores[l] = best;
  }
  return rank_classes(scores);
}

std::vector<ScoredClass> classify_direct_stein(const TrainingSet& training,
                                               const SpdMatrix& query) {
  if (query.dim() != training.dim()) {
    throw DimensionMismatch("query dimension does not match the training set");
  }
  std::vector<double> scores(training.num_classes(),
                             std::numeric_limits<double>::infinity());
  for (int j = 0; j < training.size(); ++j) {
    const double d = stein(query, training.points()[j]);
    double& slot = scores[training.labels()[j] - 1];
    slot = std::min(slot, d);
  }
  return rank_classes(scores);
}

RdcClassifier RdcClassifier::from_parts(TrainingSet training, const RdcModelFile& file) {
  if (file.d != training.dim() || file.n != training.size() ||
      file.m != training.num_classes()) {
    throw DataError("model file does not match the training set shape");
  }
  if (file.labels != training.labels()) {
    throw DataError("model file labels do not match the training set");
  }
  LdaModel lda;
  lda.projection = file.projection;
  lda.projected_training = file.projected_training;
  lda.labels = file.labels;
  lda.scatter_regularizer = file.gamma;
  lda.eigenvalues.resize(0);
  return RdcClassifier(std::move(training), std::move(lda));
}

void save_rdc_model(std::ostream& out, const RdcClassifier& classifier) {
  const LdaModel& lda = classifier.lda();
  const int k = static_cast<int>(lda.projection.cols());
  out << "rdc-model v1 d=" << classifier.training().dim()
      << " m=" << classifier.training().num_classes() << " k=" << k
      << " n=" << classifier.training().size()
      << " gamma=" << format_sig17(lda.scatter_regularizer) << '\n';
  write_matrix(out, lda.projection);
  for (Eigen::Index i = 0; i < lda.projected_training.rows(); ++i) {
    out << lda.labels[i];
    for (Eigen::Index j = 0; j < k; ++j) {
      out << ' ' << format_sig17(lda.projected_training(i, j));
    }
    out << '\n';
  }
}

namespace {

long parse_keyed(const std::string& token, const std::string& key) {
  if (token.rfind(key, 0) != 0) {
    throw ParseError("model file: expected '" + key + "...', got '" + token + "'");
  }
  try {
    return std::stol(token.substr(key.size()));
  } catch (const std::exception&) {
    throw ParseError("model file: malformed field '" + token + "'");
  }
}

}  // namespace

RdcModelFile load_rdc_model(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("model file: missing header");
  std::istringstream header(line);
  std::string magic, version, tok_d, tok_m, tok_k, tok_n, tok_gamma;
  if (!(header >> magic >> version >> tok_d >> tok_m >> tok_k >> tok_n >> tok_gamma) ||
      magic != "rdc-model" || version != "v1") {
    throw ParseError("model file: bad header '" + line + "'");
  }
  RdcModelFile file;
  file.d = static_cast<int>(parse_keyed(tok_d, "d="));
  file.m = static_cast<int>(parse_keyed(tok_m, "m="));
  file.k = static_cast<int>(parse_keyed(tok_k, "k="));
  file.n = static_cast<int>(parse_keyed(tok_n, "n="));
  if (tok_gamma.rfind("gamma=", 0) != 0) {
    throw ParseError("model file: expected 'gamma=...', got '" + tok_gamma + "'");
  }
  try {
    file.gamma = std::stod(tok_gamma.substr(6));
  } catch (const std::exception&) {
    throw ParseError("model file: malformed gamma '" + tok_gamma + "'");
  }
  if (file.d < 1 || file.m < 1 || file.k < 1 || file.n < 1) {
    throw ParseError("model file: non-positive dimension in header");
  }
  file.projection = read_matrix(in);
  if (file.projection.rows() != file.m || file.projection.cols() != file.k) {
    throw ParseError("model file: projection shape does not match the header");
  }
  file.projected_training.resize(file.n, file.k);
  file.labels.resize(file.n);
  for (int i = 0; i < file.n; ++i) {
    if (!std::getline(in, line)) throw ParseError("model file: truncated training block");
    std::istringstream row(line);
    if (!(row >> file.labels[i])) throw ParseError("model file: bad label on row " +
                                                   std::to_string(i + 1));
    for (int j = 0; j < file.k; ++j) {
      if (!(row >> file.projected_training(i, j))) {
        throw ParseError("model file: truncated coordinates on row " + std::to_string(i + 1));
      }
    }
  }
  return file;
}

}  // namespace rdc
