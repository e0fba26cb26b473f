#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "adapt/learner.hpp"
#include "adapt/subspace.hpp"

namespace adapt {

// How the per-trial training set is drawn from the source domain.
// Text forms: "fraction:0.5", "per-class:8".
struct SplitPolicy {
  enum class Kind { Fraction, PerClass };
  Kind kind = Kind::Fraction;
  double fraction = 0.5;
  int per_class = 1;

  static SplitPolicy parse(const std::string& text);
  std::string to_text() const;
  void validate() const;
};

// Where the anchor columns come from. Text forms: "source", "target",
// "union", "union-subsample:K".
struct AnchorPolicy {
  enum class Kind { Source, Target, Union, UnionSubsample };
  Kind kind = Kind::Union;
  int subsample = 0;

  static AnchorPolicy parse(const std::string& text);
  std::string to_text() const;
  void validate() const;
};

struct ExperimentConfig {
  KernelSpec base = KernelSpec::polynomial(0.01, 0.0, 1);
  KernelSpec beta = KernelSpec::rbf(3.0);
  SubspaceMethod method = SubspaceMethod::Tca;
  double eta = 1.0;
  double mu_kernel = 5e4;
  double mu_sub = 10.0;
  double lambda_sub = 1.0;
  double gamma_mix = 0.5;
  Eigen::Index subspace_dim = 10;
  double tol = 1e-2;
  int trials = 10;
  std::uint64_t seed = 0;
  int knn_k = 1;
  bool kernel_learning = true;
  AnchorPolicy anchors;
  SplitPolicy split;
  // Graph construction for the semi-supervised variant; non-positive
  // bandwidth selects the median pairwise distance.
  int laplacian_neighbors = 5;
  double laplacian_bandwidth = -1.0;

  void validate() const;
};

struct TrialResult {
  double accuracy = 0.0;
  double mmd_base = 0.0;
  double mmd_learned_part = 0.0;
  int solver_iterations = 0;
  std::uint64_t seed = 0;
};

// Wall-clock seconds per pipeline stage, accumulated over trials.
struct StageTimings {
  double split_anchor = 0.0;
  double kernel_gram = 0.0;
  double subspace = 0.0;
  double classify = 0.0;
  double aggregate = 0.0;
  double other = 0.0;
  double total = 0.0;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<TrialResult> trials;
  double mean_accuracy = 0.0;
  double std_accuracy = 0.0;
  StageTimings timings;

  // Deterministic document: identical config and seed give identical bytes
  // except under "timings".
  std::string to_json() const;

  // Recomputes the trial aggregates and checks them against the stored ones.
  void check_aggregates() const;
};

// Everything a single trial produced; exposed so equivalence against a
// directly assembled baseline can be checked bit-for-bit.
struct TrialArtifacts {
  TrialResult result;
  Matrix projections;  // m x (n_train + n_test)
  SubspaceModel model;
  std::vector<Eigen::Index> train_indices;
  std::optional<LearnedKernel> learned;
};

// Deterministic source split: selected column indices, ascending.
std::vector<Eigen::Index> split_source(const LabeledDataset& source, const SplitPolicy& policy,
                                       std::uint64_t seed);

TrialArtifacts run_trial(const ExperimentConfig& config, const DomainPair& pair,
                         std::uint64_t trial_seed, StageTimings* timings = nullptr);

// `artifacts`, when given, receives one entry per trial in trial order.
ExperimentReport run_experiment(const ExperimentConfig& config, const DomainPair& pair,
                                std::vector<TrialArtifacts>* artifacts = nullptr);

}  // namespace adapt
