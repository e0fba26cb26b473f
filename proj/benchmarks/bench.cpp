#include <benchmark/benchmark.h>

#include <random>

#include "adapt/knn.hpp"
#include "adapt/learner.hpp"
#include "adapt/pipeline.hpp"
#include "adapt/subspace.hpp"
#include "adapt/synthetic.hpp"

using namespace adapt;

namespace {

Matrix random_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = normal(rng);
  return m;
}

Pdqk sample_kernel(Eigen::Index d, Eigen::Index h, std::mt19937_64& rng) {
  Pdqk kernel;
  kernel.base = KernelSpec::polynomial(0.01, 0.0, 1);
  kernel.beta = KernelSpec::rbf(3.0);
  kernel.anchors.anchors = random_matrix(d, h, rng);
  const Matrix a = random_matrix(h, h, rng);
  kernel.m = a * a.transpose() + 0.1 * Matrix::Identity(h, h);
  return kernel;
}

void bm_pdqk_gram(benchmark::State& state) {
  const Eigen::Index n = state.range(0);
  std::mt19937_64 rng(1);
  const Pdqk kernel = sample_kernel(5, 40, rng);
  const Matrix x = random_matrix(5, n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(pdqk_gram(kernel, x));
}

void bm_beta_features(benchmark::State& state) {
  const Eigen::Index n = state.range(0);
  std::mt19937_64 rng(2);
  const Matrix anchors_x = random_matrix(5, 40, rng);
  AnchorSet anchors;
  anchors.anchors = anchors_x;
  const KernelSpec beta = KernelSpec::rbf(3.0);
  const Matrix x = random_matrix(5, n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(beta_features(beta, anchors, x));
}

void bm_tca_fit(benchmark::State& state) {
  const int per_class = static_cast<int>(state.range(0));
  const DomainPair pair =
      generate_synthetic(SyntheticKind::ShiftedGaussians, per_class, 2.0, 3, 5);
  const JointGram gram = joint_gram(KernelSpec::polynomial(0.01, 0.0, 1), pair);
  const GammaVector gamma = gamma_vector(pair.source.count(), pair.target.count());
  // The degree-1 base kernel keeps the gram rank at the feature dimension.
  for (auto _ : state) benchmark::DoNotOptimize(tca_fit(gram, gamma, 10.0, 4));
}

void bm_learn(benchmark::State& state) {
  const Eigen::Index h = state.range(0);
  const DomainPair pair =
      generate_synthetic(SyntheticKind::ShiftedGaussians, 50, 2.0, 3, 5);
  std::mt19937_64 rng(4);
  LearnerInputs inputs;
  inputs.pair = pair;
  inputs.pair.target = inputs.pair.target.without_labels();
  inputs.anchors.anchors = random_matrix(5, h, rng);
  inputs.tr_settings.cg_max = static_cast<int>(2 * h);
  inputs.seed = 7;
  for (auto _ : state) benchmark::DoNotOptimize(learn(inputs));
}

void bm_knn_predict(benchmark::State& state) {
  const Eigen::Index n = state.range(0);
  std::mt19937_64 rng(5);
  const Matrix train = random_matrix(10, n, rng);
  LabelVector labels(n);
  for (Eigen::Index i = 0; i < n; ++i) labels(i) = static_cast<int>(i % 4);
  const Matrix test = random_matrix(10, n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(knn_predict(train, labels, test, 1));
}

void bm_run_trial(benchmark::State& state) {
  ExperimentConfig config;
  config.anchors = AnchorPolicy::parse("union-subsample:40");
  config.subspace_dim = 2;
  const DomainPair pair =
      generate_synthetic(SyntheticKind::ShiftedGaussians, 100, 2.0, 1, 5);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(run_trial(config, pair, seed++));
}

}  // namespace

BENCHMARK(bm_pdqk_gram)->Arg(100)->Arg(300)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_beta_features)->Arg(300)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_tca_fit)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_learn)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_knn_predict)->Arg(200)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_run_trial)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
