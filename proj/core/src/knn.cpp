#include "adapt/knn.hpp"

#include <algorithm>
#include <map>
#include <vector>

namespace adapt {

LabelVector knn_predict(const Eigen::Ref<const Matrix>& train, const LabelVector& train_labels,
                        const Eigen::Ref<const Matrix>& test, int k) {
  const Eigen::Index n_train = train.cols();
  require(n_train >= 1, ErrorKind::EmptyTrainingSet, "no training samples");
  require(train_labels.size() == n_train, ErrorKind::ShapeMismatch,
          "label count does not match training samples");
  require(train.rows() == test.rows(), ErrorKind::DimensionMismatch,
          "train and test dimensions differ");
  require(k >= 1 && k <= n_train, ErrorKind::InvalidArgument,
          "k must lie in [1, n_train]");
  for (Eigen::Index i = 0; i < n_train; ++i)
    require(train_labels(i) != kUnlabeled, ErrorKind::UnlabeledSource,
            "training sample " + std::to_string(i) + " is unlabeled");

  LabelVector out(test.cols());
  std::vector<Eigen::Index> order(static_cast<size_t>(n_train));
  std::vector<double> dist(static_cast<size_t>(n_train));

  for (Eigen::Index t = 0; t < test.cols(); ++t) {
    for (Eigen::Index i = 0; i < n_train; ++i) {
      order[static_cast<size_t>(i)] = i;
      dist[static_cast<size_t>(i)] = (train.col(i) - test.col(t)).norm();
    }
    std::partial_sort(order.begin(), order.begin() + k, order.end(),
                      [&](Eigen::Index p, Eigen::Index q) {
                        const double dp = dist[static_cast<size_t>(p)];
                        const double dq = dist[static_cast<size_t>(q)];
                        if (dp != dq) return dp < dq;
                        return p < q;
                      });

    // label -> (votes, summed distance); std::map keeps candidates ordered
    // by label so the final tie-break is the smallest label.
    std::map<int, std::pair<int, double>> votes;
    for (int j = 0; j < k; ++j) {
      const Eigen::Index idx = order[static_cast<size_t>(j)];
      auto& entry = votes[train_labels(idx)];
      entry.first += 1;
      entry.second += dist[static_cast<size_t>(idx)];
    }

    int best_label = votes.begin()->first;
    int best_count = votes.begin()->second.first;
    double best_mean = votes.begin()->second.second / best_count;
    for (auto it = std::next(votes.begin()); it != votes.end(); ++it) {
      const int count = it->second.first;
      const double mean = it->second.second / count;
      if (count > best_count || (count == best_count && mean < best_mean)) {
        best_label = it->first;
        best_count = count;
        best_mean = mean;
      }
    }
    out(t) = best_label;
  }
  return out;
}

double accuracy(const LabelVector& predicted, const LabelVector& truth) {
  require(predicted.size() == truth.size(), ErrorKind::ShapeMismatch,
          "prediction and truth lengths differ");
  require(predicted.size() >= 1, ErrorKind::ZeroCount, "empty prediction vector");
  return static_cast<double>((predicted.array() == truth.array()).count()) /
         static_cast<double>(predicted.size());
}

}  // namespace adapt
