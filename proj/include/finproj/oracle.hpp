#ifndef FINPROJ_ORACLE_HPP
#define FINPROJ_ORACLE_HPP

#include <vector>

#include "finproj/setproc.hpp"

namespace finproj {
namespace oracle {

/// Fixed direction set for support-function comparisons: 32 rationals. Each
/// entry y stands for the epigraph direction (y, -1).
const std::vector<Rational>& default_directions();

/// Grid covering the breakpoints of the given fibers plus small integers;
/// suitable as a brute_conjugate sampling grid for any of them.
std::vector<Rational> covering_grid(const std::vector<const PLConvex*>& fibers);

/// sup over the grid of x*y - f(x), per direction. A strict increase on the
/// expanded grid flags unbounded growth (+inf). Exact whenever the grid
/// contains the breakpoints of f and y lies in dom f*.
std::vector<ExtReal> brute_conjugate(const PLConvex& f, const std::vector<Rational>& directions,
                                     const std::vector<Rational>& xgrid);
ExtReal brute_conjugate_single(const PLConvex& f, const Rational& y,
                               const std::vector<Rational>& xgrid);

/// Hull of conditional expectations of grid selections per (time, cell);
/// infinite interval ends propagate as infinite hull ends.
IntervalProcess brute_set_projection(const FilteredSpace& space, const IntervalProcess& gamma,
                                     const std::vector<Rational>& selection_grid,
                                     ProjectionMode mode = ProjectionMode::Optional,
                                     long long cap = 100000);

/// Support samples of the probability-weighted Minkowski average of the
/// epigraphs, per (time, cell, direction). Built from per-fiber grid sups
/// only; no conjugacy code is involved.
std::vector<std::vector<std::vector<ExtReal>>> brute_epi_projection(
    const FilteredSpace& space, const ConvexIntegrand& h,
    const std::vector<Rational>& directions, const std::vector<Rational>& xgrid,
    ProjectionMode mode = ProjectionMode::Optional);

/// Defining-property check: for every enumerated adapted grid-valued w in
/// Lambda_h, candidate(w) must satisfy the stopping-time identities of the
/// projection of h(w).
bool brute_projection_defn(const FilteredSpace& space, const GridIntegrand& h,
                           const GridIntegrand& candidate, ProjectionMode mode,
                           long long cap = 100000);
bool brute_projection_defn(const FilteredSpace& space, const ConvexIntegrand& h,
                           const ConvexIntegrand& candidate, ProjectionMode mode,
                           long long cap = 100000);

} // namespace oracle
} // namespace finproj

#endif
