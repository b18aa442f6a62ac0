#ifndef FINPROJ_SETPROC_HPP
#define FINPROJ_SETPROC_HPP

#include <utility>
#include <vector>

#include "finproj/integrand.hpp"

namespace finproj {

/// Closed-interval-valued stochastic process: one IntervalSet per (time, atom).
struct IntervalProcess {
    std::vector<std::vector<IntervalSet>> fibers; // [t][atom]

    IntervalProcess() = default;
    IntervalProcess(int times, int atoms, const IntervalSet& fill = IntervalSet::point(Rational(0)))
        : fibers(times, std::vector<IntervalSet>(atoms, fill)) {}

    int times() const { return static_cast<int>(fibers.size()); }
    int atoms() const { return fibers.empty() ? 0 : static_cast<int>(fibers[0].size()); }
    const IntervalSet& at(int t, int a) const { return fibers[t][a]; }
    IntervalSet& at(int t, int a) { return fibers[t][a]; }
    void validate(const FilteredSpace& space) const;

    friend bool operator==(const IntervalProcess& x, const IntervalProcess& y) {
        return x.fibers == y.fibers;
    }
};

/// Fiber-wise support functions delta*_Gamma; Empty fibers map to flagged
/// Empty PLConvex fibers.
ConvexIntegrand support_integrand(const IntervalProcess& gamma);

struct SelectionWitness {
    bool ok = false;
    ScalarProcess witness; // per-fiber point of minimal absolute value
    int bad_time = -1, bad_atom = -1;
};

/// True iff every fiber off null atoms is nonempty (and hence carries a
/// finite point). The mode parameter is kept for interface fidelity; both
/// integrability notions reduce to finiteness on a finite grid.
SelectionWitness has_T_integrable_selection(const FilteredSpace& space,
                                            const IntervalProcess& gamma, ProjectionMode mode);

/// Endpoint-formula projection: per (t, cell) the interval
/// [cond_exp(lo), cond_exp(hi)] under the convention.
IntervalProcess projection_set(const FilteredSpace& space, const IntervalProcess& gamma,
                               ProjectionMode mode);
IntervalProcess optional_projection_set(const FilteredSpace& space, const IntervalProcess& gamma);
IntervalProcess predictable_projection_set(const FilteredSpace& space,
                                           const IntervalProcess& gamma);

/// Same projection through the support-function route: project the support
/// integrand fiber-wise and read the interval back off the cone slopes.
IntervalProcess projection_set_support_route(const FilteredSpace& space,
                                             const IntervalProcess& gamma, ProjectionMode mode);

/// Conditional expectation of a random interval (one fiber per atom) with
/// respect to the given partition; result indexed by cell.
std::vector<IntervalSet> conditional_expectation_set(const FilteredSpace& space,
                                                     const Partition& partition,
                                                     const std::vector<IntervalSet>& fibers);

/// Characterization over bounded stopping times: candidate_tau equals the
/// conditional expectation of Gamma_tau for every enumerated bounded
/// (predictable) stopping time.
bool verify_via_bst(const FilteredSpace& space, const IntervalProcess& gamma,
                    const IntervalProcess& candidate, ProjectionMode mode,
                    long long cap = 100000);

/// Fiber inclusion off null atoms.
bool is_subset(const FilteredSpace& space, const IntervalProcess& inner,
               const IntervalProcess& outer);

/// Inclusion tested along every enumerated bounded (predictable) stopping
/// time; agrees with is_subset for adapted processes.
bool subset_via_stopping_times(const FilteredSpace& space, const IntervalProcess& inner,
                               const IntervalProcess& outer, ProjectionMode mode,
                               long long cap = 100000);

/// Whether the projection of a selection of an adapted convex-valued process
/// stays a selection; always true under the preconditions.
bool selection_membership(const FilteredSpace& space, const IntervalProcess& gamma,
                          const ScalarProcess& w, ProjectionMode mode);

bool is_interval_process_adapted(const FilteredSpace& space, const IntervalProcess& gamma,
                                 ProjectionMode mode);
bool interval_process_indistinguishable(const FilteredSpace& space, const IntervalProcess& x,
                                        const IntervalProcess& y);

} // namespace finproj

#endif
