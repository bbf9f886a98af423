#include "vogp/phases.hpp"

#include <algorithm>
#include <exception>

#include "vogp/error.hpp"

namespace vogp {

namespace {

// Evaluates fn(k) for k in [0, n) into a flag vector, serially or as an
// OpenMP map. The first exception thrown by any task is rethrown.
template <class Fn>
std::vector<char> map_flags(std::size_t n, Execution exec, Fn fn) {
  std::vector<char> out(n, 0);
  if (exec == Execution::serial) {
    for (std::size_t k = 0; k < n; ++k) out[k] = fn(k) ? 1 : 0;
    return out;
  }
  std::exception_ptr error;
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 4)
  for (long long k = 0; k < count; ++k) {
    try {
      out[static_cast<std::size_t>(k)] = fn(static_cast<std::size_t>(k)) ? 1 : 0;
    } catch (...) {
#pragma omp critical(vogp_map_flags)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

// Smallest value of each w_n^T y over the box.
Eigen::VectorXd box_min_image(const Hyperrectangle& r, const ConeOrder& cone) {
  const Eigen::MatrixXd& W = cone.W();
  return (W.cwiseMax(0.0) * r.lower + W.cwiseMin(0.0) * r.upper);
}

void require_finite(const Hyperrectangle& r) {
  if (r.empty_storage() || !r.is_finite()) {
    throw Error(ErrorCode::UnboundedBox, "decision rules need finite rectangles");
  }
}

}  // namespace

bool shifted_includes(const Hyperrectangle& rect_x, const Hyperrectangle& rect_x2, const ConeOrder& cone) {
  if (rect_x.contains(rect_x2)) return true;
  const Eigen::MatrixXd negW = -cone.W();
  FeasibilityProblem p{rect_x, negW, Eigen::VectorXd()};
  for (unsigned mask = 0; mask < rect_x2.vertex_count(); ++mask) {
    p.b = negW * rect_x2.vertex(mask);
    if (!feasible_box_halfspaces(p)) return false;
  }
  return true;
}

bool is_pessimistic(const std::vector<Hyperrectangle>& rects, const IndexSet& active, std::size_t i,
                    const ConeOrder& cone) {
  const Hyperrectangle& ri = rects.at(i);
  require_finite(ri);
  const Eigen::VectorXd hi = box_min_image(ri, cone);
  for (std::size_t j : active) {
    if (j == i) continue;
    const Hyperrectangle& rj = rects.at(j);
    require_finite(rj);
    if (rj == ri) continue;
    // R(j) + C inside R(i) + C needs each face level of R(j) to be no lower.
    const Eigen::VectorXd hj = box_min_image(rj, cone);
    if (((hj - hi).array() < -kConstraintSlack).any()) continue;
    if (shifted_includes(ri, rj, cone) && !shifted_includes(rj, ri, cone)) return false;
  }
  return true;
}

IndexSet pessimistic_pareto(const std::vector<Hyperrectangle>& rects, const IndexSet& active,
                            const ConeOrder& cone, Execution exec) {
  if (active.empty()) throw Error(ErrorCode::EmptyInput, "pessimistic set of an empty design set");
  const std::vector<char> keep =
      map_flags(active.size(), exec, [&](std::size_t k) { return is_pessimistic(rects, active, active[k], cone); });
  IndexSet out;
  for (std::size_t k = 0; k < active.size(); ++k) {
    if (keep[k]) out.push_back(active[k]);
  }
  return out;
}

bool discard_check(const Hyperrectangle& rect_x, const Hyperrectangle& rect_x2, const ConeOrder& cone,
                   double epsilon) {
  require_finite(rect_x);
  require_finite(rect_x2);
  const Eigen::MatrixXd& W = cone.W();
  const Eigen::VectorXd shift = epsilon * cone.u_star();
  for (unsigned a = 0; a < rect_x.vertex_count(); ++a) {
    const Eigen::VectorXd v = rect_x.vertex(a);
    for (unsigned b = 0; b < rect_x2.vertex_count(); ++b) {
      const Eigen::VectorXd s = W * (rect_x2.vertex(b) + shift - v);
      if ((s.array() < 0.0).any()) return false;
    }
  }
  return true;
}

bool epsilon_cover_check(const Hyperrectangle& rect_x, const Hyperrectangle& rect_x2, const ConeOrder& cone,
                         double epsilon) {
  require_finite(rect_x);
  require_finite(rect_x2);
  // Only y2 - y enters the constraints, so search the difference box.
  const Hyperrectangle zbox(rect_x2.lower - rect_x.upper, rect_x2.upper - rect_x.lower);
  return feasible_box_halfspaces({zbox, cone.W(), cone.W() * (epsilon * cone.u_star())});
}

IndexSet discard_phase(const std::vector<Hyperrectangle>& rects, const IndexSet& active,
                       const IndexSet& undecided, const ConeOrder& cone, double epsilon, Execution exec) {
  if (active.empty()) throw Error(ErrorCode::EmptyInput, "discarding over an empty design set");
  const std::size_t n = undecided.size();

  // Candidate beaters of each undecided design, before any pessimism test.
  std::vector<IndexSet> beaters(n);
  map_flags(n, exec, [&](std::size_t k) {
    const std::size_t x = undecided[k];
    for (std::size_t x2 : active) {
      if (x2 != x && discard_check(rects[x], rects[x2], cone, epsilon)) beaters[k].push_back(x2);
    }
    return !beaters[k].empty();
  });

  // Pessimism flags, evaluated only where a decision depends on them.
  std::vector<std::size_t> need;
  for (std::size_t k = 0; k < n; ++k) {
    if (!beaters[k].empty()) need.push_back(undecided[k]);
  }
  std::vector<char> known(rects.size(), 0);
  std::vector<char> pess(rects.size(), 0);
  auto evaluate = [&](const std::vector<std::size_t>& ids) {
    const std::vector<char> flags =
        map_flags(ids.size(), exec, [&](std::size_t k) { return is_pessimistic(rects, active, ids[k], cone); });
    for (std::size_t k = 0; k < ids.size(); ++k) {
      known[ids[k]] = 1;
      pess[ids[k]] = flags[k];
    }
  };
  evaluate(need);

  need.clear();
  for (std::size_t k = 0; k < n; ++k) {
    if (beaters[k].empty() || pess[undecided[k]]) continue;
    for (std::size_t b : beaters[k]) {
      if (!known[b]) {
        known[b] = 2;
        need.push_back(b);
      }
    }
  }
  std::sort(need.begin(), need.end());
  evaluate(need);

  IndexSet removed;
  for (std::size_t k = 0; k < n; ++k) {
    if (beaters[k].empty() || pess[undecided[k]]) continue;
    if (std::any_of(beaters[k].begin(), beaters[k].end(), [&](std::size_t b) { return pess[b] != 0; })) {
      removed.push_back(undecided[k]);
    }
  }
  return removed;
}

IndexSet identification_phase(const std::vector<Hyperrectangle>& rects, const IndexSet& competitors,
                              const IndexSet& undecided, const ConeOrder& cone, double epsilon, Execution exec) {
  const std::vector<char> blocked = map_flags(undecided.size(), exec, [&](std::size_t k) {
    const std::size_t x = undecided[k];
    for (std::size_t x2 : competitors) {
      if (x2 != x && epsilon_cover_check(rects[x], rects[x2], cone, epsilon)) return true;
    }
    return false;
  });
  IndexSet out;
  for (std::size_t k = 0; k < undecided.size(); ++k) {
    if (!blocked[k]) out.push_back(undecided[k]);
  }
  return out;
}

std::size_t select_evaluation(const std::vector<Hyperrectangle>& rects, const IndexSet& candidates) {
  if (candidates.empty()) throw Error(ErrorCode::EmptySet, "no design to evaluate");
  std::size_t best = candidates.front();
  double width = -1.0;
  for (std::size_t c : candidates) {
    const double w = rects.at(c).diagonal();
    if (w > width || (w == width && c < best)) {
      width = w;
      best = c;
    }
  }
  return best;
}

}  // namespace vogp
