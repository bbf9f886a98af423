#include "vogp/dataset.hpp"

#include <fstream>
#include <random>
#include <sstream>
#include <vector>

#include "vogp/error.hpp"
#include "vogp/objectives.hpp"

namespace vogp {

namespace {

void scale_columns(const Eigen::MatrixXd& raw, Eigen::MatrixXd& out, Eigen::VectorXd& lo, Eigen::VectorXd& range,
                   const char* kind) {
  lo = raw.colwise().minCoeff().transpose();
  range = raw.colwise().maxCoeff().transpose() - lo;
  out.resize(raw.rows(), raw.cols());
  for (Eigen::Index j = 0; j < raw.cols(); ++j) {
    if (range[j] > 0.0) {
      out.col(j) = (raw.col(j).array() - lo[j]) / range[j];
    } else {
      warn(std::string(kind) + " column " + std::to_string(j) + " is constant; scaled to zeros");
      out.col(j).setZero();
    }
  }
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    cells.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

Eigen::MatrixXd Dataset::raw_designs() const {
  return (designs.array().rowwise() * design_range.transpose().array()).rowwise() + design_min.transpose().array();
}

Eigen::MatrixXd Dataset::raw_objectives() const {
  return (objectives.array().rowwise() * objective_range.transpose().array()).rowwise() +
         objective_min.transpose().array();
}

Dataset make_dataset(const Eigen::MatrixXd& raw_designs, const Eigen::MatrixXd& raw_objectives) {
  if (raw_designs.rows() != raw_objectives.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "designs and objectives differ in length");
  }
  if (raw_designs.rows() < 2) throw Error(ErrorCode::TooFewRows, "dataset needs at least two rows");
  if (!raw_designs.allFinite() || !raw_objectives.allFinite()) {
    throw Error(ErrorCode::NonFiniteInput, "dataset has non-finite entries");
  }
  Dataset d;
  scale_columns(raw_designs, d.designs, d.design_min, d.design_range, "design");
  scale_columns(raw_objectives, d.objectives, d.objective_min, d.objective_range, "objective");
  return d;
}

Dataset load_dataset_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::MalformedHeader, "missing header in " + path);
  const std::vector<std::string> header = split_csv(line);
  std::size_t dcount = 0;
  while (dcount < header.size() && header[dcount] == "d" + std::to_string(dcount)) ++dcount;
  std::size_t ocount = 0;
  while (dcount + ocount < header.size() && header[dcount + ocount] == "o" + std::to_string(ocount)) ++ocount;
  if (dcount == 0 || ocount == 0 || dcount + ocount != header.size()) {
    throw Error(ErrorCode::MalformedHeader, "expected header d0..d{D-1},o0..o{M-1} in " + path);
  }
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::vector<std::string> cells = split_csv(line);
    if (cells.size() != header.size()) {
      throw Error(ErrorCode::NonNumericCell, "line " + std::to_string(line_no) + " has " +
                                                 std::to_string(cells.size()) + " cells, expected " +
                                                 std::to_string(header.size()));
    }
    std::vector<double> vals;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(cells[c], &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != cells[c].size()) {
        throw Error(ErrorCode::NonNumericCell, "line " + std::to_string(line_no) + ", column " +
                                                   std::to_string(c) + " ('" + header[c] + "'): '" + cells[c] + "'");
      }
      vals.push_back(v);
    }
    rows.push_back(std::move(vals));
  }
  if (rows.size() < 2) throw Error(ErrorCode::TooFewRows, path + " has fewer than two data rows");
  const auto n = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd x(n, static_cast<Eigen::Index>(dcount));
  Eigen::MatrixXd y(n, static_cast<Eigen::Index>(ocount));
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& r = rows[static_cast<std::size_t>(i)];
    for (std::size_t j = 0; j < dcount; ++j) x(i, static_cast<Eigen::Index>(j)) = r[j];
    for (std::size_t j = 0; j < ocount; ++j) y(i, static_cast<Eigen::Index>(j)) = r[dcount + j];
  }
  return make_dataset(x, y);
}

Dataset builtin_dataset(const std::string& name, std::size_t size, std::uint64_t seed) {
  const Eigen::Index d = builtin_input_dim(name);
  const Eigen::Index m = builtin_output_dim(name);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto n = static_cast<Eigen::Index>(size);
  Eigen::MatrixXd x(n, d);
  Eigen::MatrixXd y(n, m);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) x(i, j) = unit(rng);
    y.row(i) = builtin_objective(name, x.row(i).transpose()).transpose();
  }
  return make_dataset(x, y);
}

}  // namespace vogp
