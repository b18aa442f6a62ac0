#ifndef FINPROJ_INTEGRAND_HPP
#define FINPROJ_INTEGRAND_HPP

#include <optional>
#include <utility>
#include <vector>

#include "finproj/filtration.hpp"
#include "finproj/plconvex.hpp"

namespace finproj {

/// Integrand h_t(x, w) tabulated on a finite x-grid; values may be +-inf.
struct GridIntegrand {
    std::vector<Rational> xgrid;                           // strictly increasing
    std::vector<std::vector<std::vector<ExtReal>>> values; // [t][atom][grid index]

    int times() const { return static_cast<int>(values.size()); }
    int atoms() const { return values.empty() ? 0 : static_cast<int>(values[0].size()); }
    int grid_size() const { return static_cast<int>(xgrid.size()); }
    const ExtReal& at(int t, int a, int gi) const { return values[t][a][gi]; }
    ExtReal& at(int t, int a, int gi) { return values[t][a][gi]; }
    /// Index of x in the grid, or -1.
    int grid_index(const Rational& x) const;
    void validate(const FilteredSpace& space) const;

    friend bool operator==(const GridIntegrand& a, const GridIntegrand& b) {
        return a.xgrid == b.xgrid && a.values == b.values;
    }
};

/// Convex normal integrand: one proper PLConvex fiber per (time, atom);
/// all-+inf fibers are carried as flagged Empty, never silently dropped.
struct ConvexIntegrand {
    std::vector<std::vector<PLConvex>> fibers; // [t][atom]

    int times() const { return static_cast<int>(fibers.size()); }
    int atoms() const { return fibers.empty() ? 0 : static_cast<int>(fibers[0].size()); }
    const PLConvex& at(int t, int a) const { return fibers[t][a]; }
    PLConvex& at(int t, int a) { return fibers[t][a]; }
    void validate(const FilteredSpace& space) const;

    /// Coordinates of Empty fibers on positive-probability atoms.
    std::vector<std::pair<int, int>> empty_fibers(const FilteredSpace& space) const;
    bool has_empty_fiber(const FilteredSpace& space) const { return !empty_fibers(space).empty(); }

    friend bool operator==(const ConvexIntegrand& a, const ConvexIntegrand& b) {
        return a.fibers == b.fibers;
    }
};

/// Class-D/P witness: bounded boxes with finite minorant processes.
struct ClassWitness {
    std::vector<IntervalSet> boxes;
    std::vector<ScalarProcess> minorants; // one per box
};

struct ClassCheckResult {
    bool ok = false;
    std::optional<ClassWitness> witness;
    int bad_time = -1, bad_atom = -1; // violating coordinates on failure
};

// --- projections ---

GridIntegrand projection_grid(const FilteredSpace& space, const GridIntegrand& h,
                              ProjectionMode mode);
GridIntegrand optional_projection_grid(const FilteredSpace& space, const GridIntegrand& h);
GridIntegrand predictable_projection_grid(const FilteredSpace& space, const GridIntegrand& h);

/// Fiber-average projection. Requires class D (named precondition); cells
/// whose fiber domains miss each other produce flagged Empty fibers.
ConvexIntegrand projection_convex(const FilteredSpace& space, const ConvexIntegrand& h,
                                  ProjectionMode mode);
ConvexIntegrand optional_projection_convex(const FilteredSpace& space, const ConvexIntegrand& h);
ConvexIntegrand predictable_projection_convex(const FilteredSpace& space,
                                              const ConvexIntegrand& h);

/// Constructive evaluation path: restrict to the box ladder [-2^j, 2^j]
/// (j = 0..3), take Lipschitz envelopes with a doubling nu ladder, project
/// those, realize the sup at the stabilized rung, and intersect the ladder.
/// Agrees with projection_convex exactly on the final box.
ConvexIntegrand projection_convex_constructive(const FilteredSpace& space,
                                               const ConvexIntegrand& h, ProjectionMode mode,
                                               int ladder_size = 4);

// --- class membership ---

ClassCheckResult check_class_D(const FilteredSpace& space, const GridIntegrand& h);
ClassCheckResult check_class_D(const FilteredSpace& space, const ConvexIntegrand& h);
ClassCheckResult check_class_P(const FilteredSpace& space, const GridIntegrand& h);
ClassCheckResult check_class_P(const FilteredSpace& space, const ConvexIntegrand& h);

// --- composition and tests ---

/// (t, w) -> h_t(w_t(w), w). Grid version requires w to take grid values on
/// positive-probability atoms.
ScalarProcess evaluate_along(const FilteredSpace& space, const GridIntegrand& h,
                             const ScalarProcess& w);
ScalarProcess evaluate_along(const FilteredSpace& space, const ConvexIntegrand& h,
                             const ScalarProcess& w);

/// Finite-space reading of w in Lambda_h: h(w)+ or h(w)- carries no +inf off
/// null atoms. w must be adapted for the mode.
bool is_projectable(const FilteredSpace& space, const GridIntegrand& h, const ScalarProcess& w,
                    ProjectionMode mode);
bool is_projectable(const FilteredSpace& space, const ConvexIntegrand& h, const ScalarProcess& w,
                    ProjectionMode mode);

/// Monotone convergence data: {sup of projections, projection of sup}.
std::pair<GridIntegrand, GridIntegrand> monotone_sup_projection(
    const FilteredSpace& space, const std::vector<GridIntegrand>& hs, ProjectionMode mode);
std::pair<ConvexIntegrand, ConvexIntegrand> monotone_sup_projection(
    const FilteredSpace& space, const std::vector<ConvexIntegrand>& hs, ProjectionMode mode);

/// Largest slope magnitude over positive-probability fibers; +inf when a
/// fiber has a vertical wall. Empty fibers are vacuously Lipschitz.
ExtReal lipschitz_constant(const FilteredSpace& space, const ConvexIntegrand& h);

/// Single-time specialization of the projections (T = 0, given partition).
GridIntegrand conditional_expectation_integrand(const FilteredSpace& space,
                                                const Partition& partition,
                                                const GridIntegrand& f);
ConvexIntegrand conditional_expectation_integrand(const FilteredSpace& space,
                                                  const Partition& partition,
                                                  const ConvexIntegrand& f);

/// Both sides of the affine reparametrization identity:
/// lhs = projection of x -> h(B x + b), rhs = reparametrized projection of h.
std::pair<ConvexIntegrand, ConvexIntegrand> affine_reparam_projection(
    const FilteredSpace& space, const ConvexIntegrand& h, const ScalarProcess& B,
    const ScalarProcess& b, ProjectionMode mode);

/// Order h1 <= h2 off null atoms (all grid points / whole fibers).
bool integrand_leq(const FilteredSpace& space, const GridIntegrand& h1, const GridIntegrand& h2);
bool integrand_leq(const FilteredSpace& space, const ConvexIntegrand& h1,
                   const ConvexIntegrand& h2);

/// Fiber/value equality off null atoms.
bool integrand_indistinguishable(const FilteredSpace& space, const GridIntegrand& a,
                                 const GridIntegrand& b);
bool integrand_indistinguishable(const FilteredSpace& space, const ConvexIntegrand& a,
                                 const ConvexIntegrand& b);

bool is_integrand_adapted(const FilteredSpace& space, const GridIntegrand& h,
                          ProjectionMode mode);
bool is_integrand_adapted(const FilteredSpace& space, const ConvexIntegrand& h,
                          ProjectionMode mode);

} // namespace finproj

#endif
