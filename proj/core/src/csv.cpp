#include "adapt/csv.hpp"

#include <charconv>
#include <fstream>
#include <vector>

namespace adapt {

namespace {

std::vector<std::string> split_line(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> cells;
  size_t pos = 0;
  while (true) {
    const size_t comma = line.find(',', pos);
    if (comma == std::string::npos) {
      cells.push_back(line.substr(pos));
      break;
    }
    cells.push_back(line.substr(pos, comma - pos));
    pos = comma + 1;
  }
  return cells;
}

double parse_cell(const std::string& cell, Eigen::Index row, size_t col) {
  double v = 0;
  const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  require(res.ec == std::errc() && res.ptr == cell.data() + cell.size(),
          ErrorKind::ParseError,
          "bad value '" + cell + "' at row " + std::to_string(row) + ", column " +
              std::to_string(col + 1));
  return v;
}

int parse_label(const std::string& cell, Eigen::Index row) {
  int v = 0;
  const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  require(res.ec == std::errc() && res.ptr == cell.data() + cell.size(),
          ErrorKind::ParseError, "bad label '" + cell + "' at row " + std::to_string(row));
  return v;
}

std::string format_value(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

LabeledDataset load_csv(const std::string& path, bool has_labels) {
  std::ifstream in(path);
  require(in.good(), ErrorKind::ParseError, "cannot open '" + path + "'");

  std::string line;
  require(static_cast<bool>(std::getline(in, line)), ErrorKind::ParseError,
          "'" + path + "' is empty, a header row is required");
  const std::vector<std::string> header = split_line(line);
  const size_t width = header.size();

  size_t feature_count = width;
  if (has_labels) {
    require(width >= 2 && header.back() == "label", ErrorKind::ParseError,
            "'" + path + "' must end with a 'label' column");
    feature_count = width - 1;
  }
  require(feature_count >= 1, ErrorKind::ParseError, "'" + path + "' has no feature columns");

  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  Eigen::Index row_index = 0;
  while (std::getline(in, line)) {
    if (line.empty() && in.eof()) break;
    ++row_index;
    const std::vector<std::string> cells = split_line(line);
    require(cells.size() == width, ErrorKind::InconsistentWidth,
            "row " + std::to_string(row_index) + " has " + std::to_string(cells.size()) +
                " cells, expected " + std::to_string(width));
    std::vector<double> features(feature_count);
    for (size_t c = 0; c < feature_count; ++c) features[c] = parse_cell(cells[c], row_index, c);
    rows.push_back(std::move(features));
    labels.push_back(has_labels ? parse_label(cells.back(), row_index) : kUnlabeled);
  }
  require(!rows.empty(), ErrorKind::ParseError, "'" + path + "' has no data rows");

  LabeledDataset out;
  out.data.features.resize(static_cast<Eigen::Index>(feature_count),
                           static_cast<Eigen::Index>(rows.size()));
  out.labels.resize(static_cast<Eigen::Index>(rows.size()));
  for (size_t j = 0; j < rows.size(); ++j) {
    for (size_t r = 0; r < feature_count; ++r)
      out.data.features(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) = rows[j][r];
    out.labels(static_cast<Eigen::Index>(j)) = labels[j];
  }
  out.validate();
  return out;
}

void write_csv(const std::string& path, const LabeledDataset& dataset, bool include_labels) {
  dataset.validate();
  std::ofstream out(path);
  require(out.good(), ErrorKind::ParseError, "cannot open '" + path + "' for writing");

  const Eigen::Index d = dataset.dim();
  for (Eigen::Index r = 0; r < d; ++r) {
    if (r) out << ',';
    out << 'f' << r;
  }
  if (include_labels) out << ",label";
  out << '\n';

  for (Eigen::Index j = 0; j < dataset.count(); ++j) {
    for (Eigen::Index r = 0; r < d; ++r) {
      if (r) out << ',';
      out << format_value(dataset.data.features(r, j));
    }
    if (include_labels) out << ',' << dataset.labels(j);
    out << '\n';
  }
  require(out.good(), ErrorKind::ParseError, "write to '" + path + "' failed");
}

bool csv_has_label_column(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorKind::ParseError, "cannot open '" + path + "'");
  std::string line;
  require(static_cast<bool>(std::getline(in, line)), ErrorKind::ParseError,
          "'" + path + "' is empty, a header row is required");
  const std::vector<std::string> header = split_line(line);
  return !header.empty() && header.back() == "label";
}

}  // namespace adapt
