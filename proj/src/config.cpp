#include "vogp/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "vogp/error.hpp"

namespace vogp {

namespace {

namespace pt = boost::property_tree;

std::vector<double> parse_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidConfig, key + ": bad number '" + item + "'");
    }
  }
  return out;
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> out;
  const auto dots = text.find("..");
  try {
    if (dots != std::string::npos) {
      const std::uint64_t a = std::stoull(text.substr(0, dots));
      const std::uint64_t b = std::stoull(text.substr(dots + 2));
      if (b < a) throw Error(ErrorCode::InvalidConfig, "seeds: empty range");
      for (std::uint64_t s = a; s <= b; ++s) out.push_back(s);
      return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoull(item));
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::InvalidConfig, "seeds: expected a list or a..b range, got '" + text + "'");
  }
  return out;
}

template <class T>
T get_number(const pt::ptree& tree, const std::string& key, T fallback) {
  const auto v = tree.get_optional<std::string>(key);
  if (!v) return fallback;
  std::istringstream in(*v);
  T out{};
  in >> out;
  if (in.fail() || !(in >> std::ws).eof()) {
    throw Error(ErrorCode::InvalidConfig, key + ": bad value '" + *v + "'");
  }
  return out;
}

std::string resolve(const std::string& base, const std::string& p) {
  if (p.empty()) return p;
  const std::filesystem::path path(p);
  if (path.is_absolute() || !std::filesystem::exists(std::filesystem::path(base) / path)) return p;
  return (std::filesystem::path(base) / path).string();
}

}  // namespace

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::vogp: return "vogp";
    case Algorithm::ne: return "ne";
    case Algorithm::vogp_continuous: return "vogp-continuous";
  }
  return "vogp";
}

void RunConfig::validate() const {
  if (!(epsilon >= 0.0)) throw Error(ErrorCode::InvalidConfig, "epsilon must be nonnegative");
  if (!(delta > 0.0 && delta < 1.0)) throw Error(ErrorCode::InvalidConfig, "delta must lie in (0, 1)");
  if (!(noise_std > 0.0)) throw Error(ErrorCode::InvalidConfig, "noise_std must be positive");
  if (!(beta_divisor > 0.0)) throw Error(ErrorCode::InvalidConfig, "beta_divisor must be positive");
  if (seeds.empty()) throw Error(ErrorCode::InvalidConfig, "at least one seed is required");
  if (max_rounds == 0) throw Error(ErrorCode::InvalidConfig, "max_rounds must be positive");
  if (!fit_kernel && (lengthscales.size() == 0 || (lengthscales.array() <= 0.0).any())) {
    throw Error(ErrorCode::InvalidConfig, "explicit kernel needs positive lengthscales");
  }
  if (!fit_kernel && !(signal_variance > 0.0 && signal_variance <= 1.0)) {
    throw Error(ErrorCode::InvalidConfig, "signal_variance must lie in (0, 1]");
  }
  if (grid_per_dim == 0 || truth_grid_per_dim == 0) throw Error(ErrorCode::InvalidConfig, "grid sizes must be positive");
  if (dataset_size < 2) throw Error(ErrorCode::InvalidConfig, "dataset_size must be at least 2");
  if (ne_budget && *ne_budget == 0) throw Error(ErrorCode::InvalidConfig, "ne_budget must be positive");
  if (!(split_factor > 0.0)) throw Error(ErrorCode::InvalidConfig, "split_factor must be positive");
  if (max_depth < 0 || initial_depth < 0 || initial_depth > max_depth) {
    throw Error(ErrorCode::InvalidConfig, "need 0 <= initial_depth <= max_depth");
  }
}

RunConfig parse_config(const std::string& text, const std::string& base_dir) {
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw Error(ErrorCode::InvalidConfig, e.what());
  }
  static const std::set<std::string> known{
      "problem", "cone", "epsilon", "delta", "noise_std", "beta_divisor", "seeds", "algorithm",
      "max_rounds", "kernel", "lengthscales", "signal_variance", "grid_per_dim", "truth_grid_per_dim",
      "reference", "dataset_size", "dataset_seed", "ne_budget", "rkhs_bound", "split_factor",
      "max_depth", "initial_depth", "empty_intersection", "parallel", "outdir"};
  for (const auto& kv : tree) {
    if (!kv.second.empty()) throw Error(ErrorCode::InvalidConfig, "sections are not supported: " + kv.first);
    if (!known.count(kv.first)) throw Error(ErrorCode::InvalidConfig, "unknown key '" + kv.first + "'");
  }

  RunConfig c;
  c.problem = tree.get<std::string>("problem", c.problem);
  c.cone = tree.get<std::string>("cone", c.cone);
  c.epsilon = get_number(tree, "epsilon", c.epsilon);
  c.delta = get_number(tree, "delta", c.delta);
  c.noise_std = get_number(tree, "noise_std", c.noise_std);
  c.beta_divisor = get_number(tree, "beta_divisor", c.beta_divisor);
  if (auto s = tree.get_optional<std::string>("seeds")) c.seeds = parse_seeds(*s);
  if (auto a = tree.get_optional<std::string>("algorithm")) {
    if (*a == "vogp") {
      c.algorithm = Algorithm::vogp;
    } else if (*a == "ne") {
      c.algorithm = Algorithm::ne;
    } else if (*a == "vogp-continuous") {
      c.algorithm = Algorithm::vogp_continuous;
    } else {
      throw Error(ErrorCode::InvalidConfig, "algorithm must be vogp, ne or vogp-continuous");
    }
  }
  c.max_rounds = get_number<std::size_t>(tree, "max_rounds", c.max_rounds);
  const std::string kernel = tree.get<std::string>("kernel", "fit");
  if (kernel != "fit" && kernel != "explicit") throw Error(ErrorCode::InvalidConfig, "kernel must be fit or explicit");
  c.fit_kernel = kernel == "fit";
  if (auto l = tree.get_optional<std::string>("lengthscales")) {
    const std::vector<double> v = parse_list("lengthscales", *l);
    c.lengthscales = Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
  }
  c.signal_variance = get_number(tree, "signal_variance", c.signal_variance);
  c.grid_per_dim = get_number<std::size_t>(tree, "grid_per_dim", c.grid_per_dim);
  c.truth_grid_per_dim = get_number<std::size_t>(tree, "truth_grid_per_dim", c.truth_grid_per_dim);
  if (auto r = tree.get_optional<std::string>("reference")) {
    const std::vector<double> v = parse_list("reference", *r);
    c.reference = Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
  }
  c.dataset_size = get_number<std::size_t>(tree, "dataset_size", c.dataset_size);
  c.dataset_seed = get_number<std::uint64_t>(tree, "dataset_seed", c.dataset_seed);
  if (auto b = tree.get_optional<std::string>("ne_budget"); b && *b != "auto") {
    c.ne_budget = get_number<std::size_t>(tree, "ne_budget", 1);
  }
  c.rkhs_bound = get_number(tree, "rkhs_bound", c.rkhs_bound);
  c.split_factor = get_number(tree, "split_factor", c.split_factor);
  c.max_depth = get_number(tree, "max_depth", c.max_depth);
  c.initial_depth = get_number(tree, "initial_depth", c.initial_depth);
  if (auto e = tree.get_optional<std::string>("empty_intersection")) {
    if (*e != "reset" && *e != "collapse") throw Error(ErrorCode::InvalidConfig, "empty_intersection must be reset or collapse");
    c.empty_intersection = *e == "reset" ? EmptyIntersection::reset : EmptyIntersection::collapse;
  }
  if (auto p = tree.get_optional<std::string>("parallel")) {
    if (*p != "true" && *p != "false") throw Error(ErrorCode::InvalidConfig, "parallel must be true or false");
    c.parallel = *p == "true";
  }
  c.outdir = tree.get<std::string>("outdir", "");
  if (c.problem.find('/') != std::string::npos || c.problem.ends_with(".csv")) c.problem = resolve(base_dir, c.problem);
  if (c.cone.find('/') != std::string::npos || c.cone.ends_with(".txt")) c.cone = resolve(base_dir, c.cone);
  c.validate();
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), std::filesystem::path(path).parent_path().string());
}

}  // namespace vogp
