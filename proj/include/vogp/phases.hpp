#pragma once

// Per-design decision rules of the four VOGP phases.

#include <cstddef>
#include <vector>

#include "vogp/cone.hpp"
#include "vogp/convex.hpp"
#include "vogp/execution.hpp"
#include "vogp/metrics.hpp"

namespace vogp {

/// R(x2) + C is a subset of R(x) + C: every vertex of rect_x2 is
/// cone-dominated by some point of rect_x.
bool shifted_includes(const Hyperrectangle& rect_x, const Hyperrectangle& rect_x2, const ConeOrder& cone);

/// Membership of design i in the pessimistic Pareto set of `active`.
bool is_pessimistic(const std::vector<Hyperrectangle>& rects, const IndexSet& active, std::size_t i,
                    const ConeOrder& cone);

/// Pessimistic Pareto set of `active`: designs whose R + C is not strictly
/// contained in another design's R + C. Throws EmptyInput.
IndexSet pessimistic_pareto(const std::vector<Hyperrectangle>& rects, const IndexSet& active,
                            const ConeOrder& cone, Execution exec = Execution::serial);

/// Every vertex v of rect_x and v2 of rect_x2 satisfy v <=_C v2 + eps u*.
bool discard_check(const Hyperrectangle& rect_x, const Hyperrectangle& rect_x2, const ConeOrder& cone,
                   double epsilon);

/// Some y in rect_x and y2 in rect_x2 satisfy y + eps u* <=_C y2.
bool epsilon_cover_check(const Hyperrectangle& rect_x, const Hyperrectangle& rect_x2, const ConeOrder& cone,
                         double epsilon);

/// Designs of `undecided` removed by the discarding phase: those outside
/// the pessimistic set of `active` that some pessimistic design beats by
/// discard_check.
IndexSet discard_phase(const std::vector<Hyperrectangle>& rects, const IndexSet& active,
                       const IndexSet& undecided, const ConeOrder& cone, double epsilon,
                       Execution exec = Execution::serial);

/// Designs of `undecided` that no other member of `competitors`
/// epsilon-covers.
IndexSet identification_phase(const std::vector<Hyperrectangle>& rects, const IndexSet& competitors,
                              const IndexSet& undecided, const ConeOrder& cone, double epsilon,
                              Execution exec = Execution::serial);

/// Index in `candidates` with the widest diagonal; lowest index on ties.
/// Throws EmptySet.
std::size_t select_evaluation(const std::vector<Hyperrectangle>& rects, const IndexSet& candidates);

}  // namespace vogp
