#include "adapt/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <map>
#include <random>

#include <nlohmann/json.hpp>

#include "adapt/knn.hpp"

namespace adapt {

namespace {

using Clock = std::chrono::steady_clock;
using Json = nlohmann::ordered_json;

// Keeps the anchor subsample stream independent of the split stream.
constexpr std::uint64_t kAnchorSalt = 0x9e3779b97f4a7c15ULL;

double elapsed_seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

double parse_number(const std::string& text, const std::string& what) {
  double v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  require(res.ec == std::errc() && res.ptr == text.data() + text.size(),
          ErrorKind::ParseError, "bad " + what + " value '" + text + "'");
  return v;
}

std::string format_number(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

Matrix concat_columns(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows(), a.cols() + b.cols());
  out.leftCols(a.cols()) = a;
  out.rightCols(b.cols()) = b;
  return out;
}

AnchorSet build_anchors(const AnchorPolicy& policy, const Matrix& train, const Matrix& test,
                        std::uint64_t trial_seed) {
  AnchorSet anchors;
  switch (policy.kind) {
    case AnchorPolicy::Kind::Source:
      anchors.anchors = train;
      break;
    case AnchorPolicy::Kind::Target:
      anchors.anchors = test;
      break;
    case AnchorPolicy::Kind::Union:
      anchors.anchors = concat_columns(train, test);
      break;
    case AnchorPolicy::Kind::UnionSubsample: {
      const Matrix joint = concat_columns(train, test);
      const Eigen::Index n = joint.cols();
      require(policy.subsample <= n, ErrorKind::InvalidArgument,
              "anchor subsample exceeds the available samples");
      std::vector<Eigen::Index> order(static_cast<size_t>(n));
      std::iota(order.begin(), order.end(), Eigen::Index{0});
      std::mt19937_64 rng(trial_seed ^ kAnchorSalt);
      std::shuffle(order.begin(), order.end(), rng);
      order.resize(static_cast<size_t>(policy.subsample));
      std::sort(order.begin(), order.end());
      anchors.anchors.resize(joint.rows(), policy.subsample);
      for (size_t i = 0; i < order.size(); ++i)
        anchors.anchors.col(static_cast<Eigen::Index>(i)) = joint.col(order[i]);
      break;
    }
  }
  anchors.validate();
  return anchors;
}

void require_labeled_source(const LabeledDataset& source) {
  for (Eigen::Index i = 0; i < source.count(); ++i)
    require(source.labels(i) != kUnlabeled, ErrorKind::UnlabeledSource,
            "source sample " + std::to_string(i) + " is unlabeled");
}

// Re-throws component errors with the pipeline stage prepended.
template <typename F>
decltype(auto) in_stage(const char* stage, F&& fn) {
  try {
    return std::forward<F>(fn)();
  } catch (const Error& e) {
    throw Error(e.kind(), std::string(stage) + ": " + e.message());
  }
}

Json config_to_json(const ExperimentConfig& c) {
  Json j;
  j["method"] = to_string(c.method);
  j["kernel_base"] = c.base.to_text();
  j["kernel_beta"] = c.beta.to_text();
  j["eta"] = c.eta;
  j["mu_kernel"] = c.mu_kernel;
  j["mu"] = c.mu_sub;
  j["lambda"] = c.lambda_sub;
  j["gamma"] = c.gamma_mix;
  j["dim"] = c.subspace_dim;
  j["tol"] = c.tol;
  j["trials"] = c.trials;
  j["seed"] = c.seed;
  j["knn_k"] = c.knn_k;
  j["kernel_learning"] = c.kernel_learning;
  j["anchors"] = c.anchors.to_text();
  j["split"] = c.split.to_text();
  j["laplacian_neighbors"] = c.laplacian_neighbors;
  j["laplacian_bandwidth"] = c.laplacian_bandwidth;
  return j;
}

}  // namespace

SplitPolicy SplitPolicy::parse(const std::string& text) {
  SplitPolicy p;
  const size_t colon = text.find(':');
  require(colon != std::string::npos, ErrorKind::ParseError,
          "split policy '" + text + "' is missing ':'");
  const std::string name = text.substr(0, colon);
  const std::string value = text.substr(colon + 1);
  if (name == "fraction") {
    p.kind = Kind::Fraction;
    p.fraction = parse_number(value, "split fraction");
  } else if (name == "per-class") {
    p.kind = Kind::PerClass;
    p.per_class = static_cast<int>(parse_number(value, "per-class count"));
  } else {
    fail(ErrorKind::ParseError, "unknown split policy '" + name + "'");
  }
  p.validate();
  return p;
}

std::string SplitPolicy::to_text() const {
  if (kind == Kind::Fraction) return "fraction:" + format_number(fraction);
  return "per-class:" + std::to_string(per_class);
}

void SplitPolicy::validate() const {
  if (kind == Kind::Fraction)
    require(fraction > 0.0 && fraction <= 1.0, ErrorKind::InvalidArgument,
            "split fraction must lie in (0, 1]");
  else
    require(per_class >= 1, ErrorKind::InvalidArgument, "per-class count must be >= 1");
}

AnchorPolicy AnchorPolicy::parse(const std::string& text) {
  AnchorPolicy p;
  if (text == "source") {
    p.kind = Kind::Source;
  } else if (text == "target") {
    p.kind = Kind::Target;
  } else if (text == "union") {
    p.kind = Kind::Union;
  } else if (text.rfind("union-subsample:", 0) == 0) {
    p.kind = Kind::UnionSubsample;
    p.subsample = static_cast<int>(
        parse_number(text.substr(sizeof("union-subsample:") - 1), "anchor subsample"));
  } else {
    fail(ErrorKind::ParseError, "unknown anchor policy '" + text + "'");
  }
  p.validate();
  return p;
}

std::string AnchorPolicy::to_text() const {
  switch (kind) {
    case Kind::Source: return "source";
    case Kind::Target: return "target";
    case Kind::Union: return "union";
    case Kind::UnionSubsample: return "union-subsample:" + std::to_string(subsample);
  }
  return {};
}

void AnchorPolicy::validate() const {
  if (kind == Kind::UnionSubsample)
    require(subsample >= 1, ErrorKind::InvalidArgument, "anchor subsample must be >= 1");
}

void ExperimentConfig::validate() const {
  base.validate();
  beta.validate();
  anchors.validate();
  split.validate();
  require(eta > 0.0, ErrorKind::InvalidArgument, "eta must be positive");
  require(mu_kernel > 0.0, ErrorKind::InvalidArgument, "mu_kernel must be positive");
  require(mu_sub > 0.0, ErrorKind::InvalidArgument, "mu must be positive");
  require(lambda_sub >= 0.0, ErrorKind::InvalidArgument, "lambda must be non-negative");
  require(gamma_mix >= 0.0 && gamma_mix <= 1.0, ErrorKind::InvalidArgument,
          "gamma must lie in [0, 1]");
  require(subspace_dim >= 1, ErrorKind::InvalidArgument, "subspace dimension must be >= 1");
  require(tol > 0.0, ErrorKind::InvalidArgument, "tol must be positive");
  require(trials >= 1, ErrorKind::InvalidArgument, "trial count must be >= 1");
  require(knn_k >= 1, ErrorKind::InvalidArgument, "knn k must be >= 1");
  require(laplacian_neighbors >= 1, ErrorKind::InvalidArgument,
          "laplacian neighbour count must be >= 1");
}

std::vector<Eigen::Index> split_source(const LabeledDataset& source, const SplitPolicy& policy,
                                       std::uint64_t seed) {
  source.validate();
  policy.validate();
  const Eigen::Index n = source.count();
  std::mt19937_64 rng(seed);
  std::vector<Eigen::Index> selected;

  if (policy.kind == SplitPolicy::Kind::Fraction) {
    std::vector<Eigen::Index> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::shuffle(order.begin(), order.end(), rng);
    const auto take = std::clamp<Eigen::Index>(
        static_cast<Eigen::Index>(std::llround(policy.fraction * static_cast<double>(n))), 1, n);
    selected.assign(order.begin(), order.begin() + take);
  } else {
    std::map<int, std::vector<Eigen::Index>> classes;
    for (Eigen::Index i = 0; i < n; ++i) {
      require(source.labels(i) != kUnlabeled, ErrorKind::UnlabeledSource,
              "source sample " + std::to_string(i) + " is unlabeled");
      classes[source.labels(i)].push_back(i);
    }
    for (auto& [label, members] : classes) {
      std::shuffle(members.begin(), members.end(), rng);
      const size_t take = std::min<size_t>(static_cast<size_t>(policy.per_class), members.size());
      selected.insert(selected.end(), members.begin(), members.begin() + take);
    }
  }
  std::sort(selected.begin(), selected.end());
  return selected;
}

TrialArtifacts run_trial(const ExperimentConfig& config, const DomainPair& pair,
                         std::uint64_t trial_seed, StageTimings* timings) {
  config.validate();
  validate_domain_pair(pair);
  require_labeled_source(pair.source);

  auto mark = Clock::now();
  const auto charge = [&](double& slot) {
    slot += elapsed_seconds(mark);
    mark = Clock::now();
  };
  StageTimings scratch;
  StageTimings& st = timings ? *timings : scratch;

  TrialArtifacts art;
  art.result.seed = trial_seed;
  DomainPair trial_pair;
  AnchorSet anchors;
  in_stage("source split", [&] {
    art.train_indices = split_source(pair.source, config.split, trial_seed);
    const Eigen::Index d = pair.source.dim();
    const Eigen::Index n_train = static_cast<Eigen::Index>(art.train_indices.size());
    trial_pair.source.data.features.resize(d, n_train);
    trial_pair.source.labels.resize(n_train);
    for (Eigen::Index i = 0; i < n_train; ++i) {
      trial_pair.source.data.features.col(i) = pair.source.data.features.col(art.train_indices[i]);
      trial_pair.source.labels(i) = pair.source.labels(art.train_indices[i]);
    }
    // Target labels stay behind: every training-facing view is unlabeled.
    trial_pair.target = pair.target.without_labels();
  });
  in_stage("anchor selection", [&] {
    anchors = build_anchors(config.anchors, trial_pair.source.data.features,
                            trial_pair.target.data.features, trial_seed);
  });
  const Eigen::Index n_train = trial_pair.source.count();
  const Eigen::Index n_test = trial_pair.target.count();
  charge(st.split_anchor);

  JointGram gram_joint;
  const GammaVector gamma = gamma_vector(n_train, n_test);
  if (config.kernel_learning) {
    in_stage("kernel learning", [&] {
      LearnerInputs inputs;
      inputs.pair = trial_pair;
      inputs.anchors = anchors;
      inputs.base = config.base;
      inputs.beta = config.beta;
      inputs.eta = config.eta;
      inputs.mu = config.mu_kernel;
      inputs.tr_settings.tol = config.tol;
      // Truncate the inner solve hard: each outer step needs a descent
      // direction, not full Newton digits, and the random start is too
      // ill-conditioned for CG to close out the default residual anyway.
      inputs.tr_settings.cg_max = static_cast<int>(2 * anchors.count());
      inputs.seed = trial_seed;
      art.learned = learn(inputs);
    });
    in_stage("gram assembly", [&] {
      gram_joint = joint_gram(art.learned->pdqk, trial_pair);
      const MmdParts parts = mmd_decomposed(art.learned->pdqk, trial_pair);
      art.result.mmd_base = parts.base_part;
      art.result.mmd_learned_part = parts.learnable_part;
      art.result.solver_iterations =
          static_cast<int>(art.learned->diagnostics.iterations.size());
    });
  } else {
    in_stage("gram assembly", [&] {
      gram_joint = joint_gram(config.base, trial_pair);
      art.result.mmd_base = mmd_value(gram_joint, gamma);
      art.result.mmd_learned_part = 0.0;
      art.result.solver_iterations = 0;
    });
  }
  charge(st.kernel_gram);

  in_stage("subspace fit", [&] {
    switch (config.method) {
      case SubspaceMethod::Tca:
        art.model = tca_fit(gram_joint, gamma, config.mu_sub, config.subspace_dim);
        break;
      case SubspaceMethod::Sstca: {
        const Matrix joint_x =
            concat_columns(trial_pair.source.data.features, trial_pair.target.data.features);
        const int k_neighbors = static_cast<int>(
            std::min<Eigen::Index>(config.laplacian_neighbors, joint_x.cols() - 1));
        double bandwidth = config.laplacian_bandwidth;
        if (bandwidth <= 0.0) bandwidth = median_pairwise_distance(joint_x);
        require(bandwidth > 0.0, ErrorKind::DegenerateData,
                "median pairwise distance is zero, set the bandwidth explicitly");
        const Matrix laplacian = graph_laplacian(joint_x, k_neighbors, bandwidth);

        LabelVector joint_labels(n_train + n_test);
        joint_labels.head(n_train) = trial_pair.source.labels;
        joint_labels.tail(n_test).setConstant(kUnlabeled);
        const Matrix kyy = label_kernel(joint_labels, config.gamma_mix);
        art.model = sstca_fit(gram_joint, gamma, laplacian, kyy, config.mu_sub,
                              config.lambda_sub, config.subspace_dim);
        break;
      }
      case SubspaceMethod::Iglda: {
        LabelVector joint_labels(n_train + n_test);
        joint_labels.head(n_train) = trial_pair.source.labels;
        joint_labels.tail(n_test).setConstant(kUnlabeled);
        const Matrix intra = intra_class_matrix(joint_labels, n_train);
        art.model = iglda_fit(gram_joint, gamma, intra, config.mu_sub, config.lambda_sub,
                              config.subspace_dim);
        break;
      }
    }
  });
  charge(st.subspace);

  in_stage("classification", [&] {
    art.projections = project(art.model, gram_joint.k);
    const Matrix train_embedded = art.projections.leftCols(n_train);
    const Matrix test_embedded = art.projections.rightCols(n_test);
    const LabelVector predicted =
        knn_predict(train_embedded, trial_pair.source.labels, test_embedded, config.knn_k);
    art.result.accuracy = accuracy(predicted, pair.target.labels);
  });
  charge(st.classify);

  return art;
}

ExperimentReport run_experiment(const ExperimentConfig& config, const DomainPair& pair,
                                std::vector<TrialArtifacts>* artifacts) {
  const auto t_start = Clock::now();
  config.validate();
  validate_domain_pair(pair);
  require_labeled_source(pair.source);
  require(config.subspace_dim <= pair.source.count() + pair.target.count(),
          ErrorKind::InvalidArgument, "subspace dimension exceeds the joint sample count");

  ExperimentReport report;
  report.config = config;
  if (artifacts) artifacts->clear();
  StageTimings st;
  for (int t = 0; t < config.trials; ++t) {
    TrialArtifacts art = in_stage(("trial " + std::to_string(t)).c_str(), [&] {
      return run_trial(config, pair, config.seed + static_cast<std::uint64_t>(t), &st);
    });
    report.trials.push_back(art.result);
    if (artifacts) artifacts->push_back(std::move(art));
  }

  auto mark = Clock::now();
  double mean = 0.0;
  for (const TrialResult& r : report.trials) mean += r.accuracy;
  mean /= static_cast<double>(report.trials.size());
  double var = 0.0;
  for (const TrialResult& r : report.trials) var += (r.accuracy - mean) * (r.accuracy - mean);
  var /= static_cast<double>(report.trials.size());
  report.mean_accuracy = mean;
  report.std_accuracy = std::sqrt(var);
  st.aggregate = elapsed_seconds(mark);

  st.total = elapsed_seconds(t_start);
  const auto clamp_stage = [](double& v) { v = std::max(v, 1e-9); };
  clamp_stage(st.split_anchor);
  clamp_stage(st.kernel_gram);
  clamp_stage(st.subspace);
  clamp_stage(st.classify);
  clamp_stage(st.aggregate);
  st.other = std::max(
      st.total - (st.split_anchor + st.kernel_gram + st.subspace + st.classify + st.aggregate),
      1e-9);
  report.timings = st;

  report.check_aggregates();
  return report;
}

void ExperimentReport::check_aggregates() const {
  require(static_cast<int>(trials.size()) == config.trials, ErrorKind::ShapeMismatch,
          "trial count does not match the configuration");
  double mean = 0.0;
  for (const TrialResult& r : trials) mean += r.accuracy;
  mean /= static_cast<double>(trials.size());
  double var = 0.0;
  for (const TrialResult& r : trials) var += (r.accuracy - mean) * (r.accuracy - mean);
  var /= static_cast<double>(trials.size());
  require(std::abs(mean - mean_accuracy) <= 1e-12, ErrorKind::InvalidArgument,
          "stored mean accuracy is stale");
  require(std::abs(std::sqrt(var) - std_accuracy) <= 1e-12, ErrorKind::InvalidArgument,
          "stored accuracy deviation is stale");
}

std::string ExperimentReport::to_json() const {
  check_aggregates();
  Json j;
  j["config"] = config_to_json(config);
  Json trial_array = Json::array();
  for (const TrialResult& r : trials) {
    Json t;
    t["accuracy"] = r.accuracy;
    t["mmd_base"] = r.mmd_base;
    t["mmd_learned_part"] = r.mmd_learned_part;
    t["solver_iterations"] = r.solver_iterations;
    t["seed"] = r.seed;
    trial_array.push_back(std::move(t));
  }
  j["trials"] = std::move(trial_array);
  j["mean_accuracy"] = mean_accuracy;
  j["std_accuracy"] = std_accuracy;
  Json tm;
  tm["split_anchor"] = timings.split_anchor;
  tm["kernel_gram"] = timings.kernel_gram;
  tm["subspace"] = timings.subspace;
  tm["classify"] = timings.classify;
  tm["aggregate"] = timings.aggregate;
  tm["other"] = timings.other;
  tm["total"] = timings.total;
  j["timings"] = std::move(tm);
  return j.dump(2);
}

}  // namespace adapt
