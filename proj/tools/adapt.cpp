// Command-line front end.
//
//   adapt run    run a repeated-trial adaptation experiment on two CSVs
//   adapt synth  generate a synthetic source/target pair as CSVs
//
// CSV format: UTF-8, comma separated, header row, one sample per row,
// feature columns first, optional trailing integer `label` column.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "adapt/csv.hpp"
#include "adapt/pipeline.hpp"
#include "adapt/synthetic.hpp"

namespace {

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw adapt::Error(adapt::ErrorKind::InvalidArgument, "cannot open '" + path + "' for writing");
  out << content;
  out.close();
  if (!out) throw adapt::Error(adapt::ErrorKind::InvalidArgument, "write to '" + path + "' failed");
}

struct RunOptions {
  std::string source_path;
  std::string target_path;
  std::string method = "tca";
  std::string kernel_base = "poly:a=0.01,b=0,d=1";
  std::string kernel_beta = "rbf:sigma=3";
  std::string anchors = "union";
  std::string split = "fraction:0.5";
  std::string out_path;
  std::string trace_path;
  std::string save_kernel_path;
  adapt::ExperimentConfig config;
  bool no_kernel_learning = false;
};

int run_command(const RunOptions& opt) {
  adapt::ExperimentConfig config = opt.config;
  config.method = adapt::parse_subspace_method(opt.method);
  config.base = adapt::KernelSpec::parse(opt.kernel_base);
  config.beta = adapt::KernelSpec::parse(opt.kernel_beta);
  config.anchors = adapt::AnchorPolicy::parse(opt.anchors);
  config.split = adapt::SplitPolicy::parse(opt.split);
  config.kernel_learning = !opt.no_kernel_learning;
  config.validate();

  if (!config.kernel_learning) {
    adapt::require(opt.trace_path.empty() && opt.save_kernel_path.empty(),
                   adapt::ErrorKind::InvalidArgument,
                   "--trace and --save-kernel need kernel learning enabled");
  }

  adapt::require(adapt::csv_has_label_column(opt.source_path), adapt::ErrorKind::UnlabeledSource,
                 "source CSV '" + opt.source_path + "' has no label column");
  adapt::DomainPair pair;
  pair.source = adapt::load_csv(opt.source_path, true);
  pair.target = adapt::load_csv(opt.target_path, adapt::csv_has_label_column(opt.target_path));
  if (pair.target.labeled_count() == 0)
    std::cerr << "note: target CSV has no labels, reported accuracy will be 0\n";

  std::vector<adapt::TrialArtifacts> artifacts;
  const adapt::ExperimentReport report = adapt::run_experiment(config, pair, &artifacts);

  write_text_file(opt.out_path, report.to_json() + "\n");

  if (!opt.trace_path.empty()) {
    std::string trace;
    for (size_t t = 0; t < artifacts.size(); ++t) {
      trace += "{\"trial\":" + std::to_string(t) +
               ",\"seed\":" + std::to_string(artifacts[t].result.seed) + "}\n";
      trace += artifacts[t].learned->diagnostics.to_json_lines();
    }
    write_text_file(opt.trace_path, trace);
  }
  if (!opt.save_kernel_path.empty())
    write_text_file(opt.save_kernel_path, artifacts.front().learned->to_json() + "\n");

  std::cout << "mean accuracy " << report.mean_accuracy << " (std " << report.std_accuracy
            << ") over " << report.trials.size() << " trials\n"
            << "report written to " << opt.out_path << "\n";
  return 0;
}

struct SynthOptions {
  std::string kind = "shifted-gaussians";
  int n_per_class = 100;
  double shift = 2.0;
  std::uint64_t seed = 0;
  int dim = 5;
  std::string out_source;
  std::string out_target;
};

int synth_command(const SynthOptions& opt) {
  const adapt::DomainPair pair = adapt::generate_synthetic(adapt::parse_synthetic_kind(opt.kind),
                                                           opt.n_per_class, opt.shift, opt.seed,
                                                           opt.dim);
  adapt::write_csv(opt.out_source, pair.source, true);
  adapt::write_csv(opt.out_target, pair.target, true);
  std::cout << "wrote " << pair.source.count() << " source and " << pair.target.count()
            << " target samples (" << pair.source.dim() << " features)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Learnable-kernel domain adaptation experiments"};
  app.require_subcommand(1);

  RunOptions run;
  CLI::App* run_cmd = app.add_subcommand("run", "Run a repeated-trial experiment");
  run_cmd->add_option("--source", run.source_path, "Source-domain CSV (labeled)")->required();
  run_cmd->add_option("--target", run.target_path, "Target-domain CSV")->required();
  run_cmd->add_option("--method", run.method, "Subspace method: tca, sstca or iglda");
  run_cmd->add_option("--kernel-base", run.kernel_base, "Base kernel, e.g. poly:a=0.01,b=0,d=1");
  run_cmd->add_option("--kernel-beta", run.kernel_beta, "Feature-map kernel, e.g. rbf:sigma=3");
  run_cmd->add_option("--eta", run.config.eta, "Weight of the learned kernel term");
  run_cmd->add_option("--mu-kernel", run.config.mu_kernel, "Kernel-learning regularizer");
  run_cmd->add_option("--mu", run.config.mu_sub, "Subspace trace regularizer");
  run_cmd->add_option("--lambda", run.config.lambda_sub, "Locality/intra-class weight");
  run_cmd->add_option("--gamma", run.config.gamma_mix, "Label-kernel mix in [0,1]");
  run_cmd->add_option("--dim", run.config.subspace_dim, "Subspace dimension");
  run_cmd->add_option("--tol", run.config.tol, "Solver objective-change tolerance");
  run_cmd->add_option("--trials", run.config.trials, "Number of repeated trials");
  run_cmd->add_option("--seed", run.config.seed, "Base seed; trial t uses seed+t");
  run_cmd->add_option("--knn-k", run.config.knn_k, "Neighbours for the kNN classifier");
  run_cmd->add_flag("--no-kernel-learning", run.no_kernel_learning,
                    "Use the base kernel unchanged");
  run_cmd->add_option("--anchors", run.anchors,
                      "Anchor policy: source, target, union or union-subsample:K");
  run_cmd->add_option("--split", run.split, "Training split: fraction:F or per-class:K");
  run_cmd->add_option("--laplacian-neighbors", run.config.laplacian_neighbors,
                      "kNN graph degree for sstca");
  run_cmd->add_option("--laplacian-bandwidth", run.config.laplacian_bandwidth,
                      "Graph heat-kernel bandwidth; <=0 selects the median distance");
  run_cmd->add_option("--out", run.out_path, "Report JSON path")->required();
  run_cmd->add_option("--trace", run.trace_path, "Solver trace output (JSON lines)");
  run_cmd->add_option("--save-kernel", run.save_kernel_path,
                      "Save the first trial's learned kernel as JSON");

  SynthOptions synth;
  CLI::App* synth_cmd = app.add_subcommand("synth", "Generate a synthetic source/target pair");
  synth_cmd->add_option("--kind", synth.kind, "shifted-gaussians or rotated-moons");
  synth_cmd->add_option("--n", synth.n_per_class, "Samples per class per domain")
      ->check(CLI::PositiveNumber);
  synth_cmd->add_option("--shift", synth.shift,
                        "Domain shift: offset (gaussians) or angle in radians (moons)");
  synth_cmd->add_option("--seed", synth.seed, "Generator seed");
  synth_cmd->add_option("--dim", synth.dim, "Feature dimension (shifted-gaussians only)")
      ->check(CLI::PositiveNumber);
  synth_cmd->add_option("--out-source", synth.out_source, "Source CSV path")->required();
  synth_cmd->add_option("--out-target", synth.out_target, "Target CSV path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) return run_command(run);
    return synth_command(synth);
  } catch (const adapt::Error& e) {
    std::cerr << "error (" << adapt::to_string(e.kind()) << "): " << e.message() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
