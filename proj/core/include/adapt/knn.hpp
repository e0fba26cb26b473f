#pragma once

#include "adapt/types.hpp"

namespace adapt {

// Majority-vote k-nearest-neighbour prediction over column vectors with
// Euclidean distances. Vote ties go to the candidate label with the smaller
// mean neighbour distance, then to the smaller label value.
LabelVector knn_predict(const Eigen::Ref<const Matrix>& train, const LabelVector& train_labels,
                        const Eigen::Ref<const Matrix>& test, int k);

double accuracy(const LabelVector& predicted, const LabelVector& truth);

}  // namespace adapt
