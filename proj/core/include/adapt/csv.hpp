#pragma once

#include <string>

#include "adapt/types.hpp"

namespace adapt {

// Reads a UTF-8 comma-separated file: a required header row, one sample per
// row. With has_labels the final column must be named "label" and hold
// integers; otherwise every column is a feature and all labels are set to
// kUnlabeled. Values round-trip bit-exactly through write_csv/load_csv.
LabeledDataset load_csv(const std::string& path, bool has_labels);

void write_csv(const std::string& path, const LabeledDataset& dataset, bool include_labels);

// Peeks at the header to see whether the last column is named "label".
bool csv_has_label_column(const std::string& path);

}  // namespace adapt
