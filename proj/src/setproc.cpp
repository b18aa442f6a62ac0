#include "finproj/setproc.hpp"

#include "finproj/errors.hpp"

namespace finproj {

void IntervalProcess::validate(const FilteredSpace& space) const {
    if (times() != space.horizon() + 1)
        throw StructuralError("interval process times do not match the space");
    for (const auto& slice : fibers)
        if (slice.size() != static_cast<size_t>(space.atom_count()))
            throw StructuralError("interval process atoms do not match the space");
}

ConvexIntegrand support_integrand(const IntervalProcess& gamma) {
    ConvexIntegrand out;
    out.fibers.assign(gamma.times(), std::vector<PLConvex>(gamma.atoms(), PLConvex::empty()));
    for (int t = 0; t < gamma.times(); ++t)
        for (int a = 0; a < gamma.atoms(); ++a)
            if (!gamma.at(t, a).is_empty()) out.fibers[t][a] = support(gamma.at(t, a));
    return out;
}

SelectionWitness has_T_integrable_selection(const FilteredSpace& space,
                                            const IntervalProcess& gamma, ProjectionMode mode) {
    (void)mode;
    gamma.validate(space);
    SelectionWitness res;
    res.witness = ScalarProcess(gamma.times(), gamma.atoms());
    res.ok = true;
    for (int t = 0; t < gamma.times(); ++t)
        for (int a = 0; a < gamma.atoms(); ++a) {
            if (gamma.at(t, a).is_empty()) {
                if (!space.is_null(a)) {
                    res.ok = false;
                    if (res.bad_time < 0) {
                        res.bad_time = t;
                        res.bad_atom = a;
                    }
                }
                continue;
            }
            res.witness.at(t, a) = ExtReal(gamma.at(t, a).min_abs_point());
        }
    return res;
}

namespace {

void require_selection(const FilteredSpace& space, const IntervalProcess& gamma,
                       const char* op) {
    SelectionWitness sel =
        has_T_integrable_selection(space, gamma, ProjectionMode::Optional);
    if (!sel.ok)
        throw PreconditionError(std::string(op) + ": no integrable selection (empty fiber at t=" +
                                std::to_string(sel.bad_time) +
                                ", atom=" + std::to_string(sel.bad_atom) + ")");
}

} // namespace

IntervalProcess projection_set(const FilteredSpace& space, const IntervalProcess& gamma,
                               ProjectionMode mode) {
    gamma.validate(space);
    require_selection(space, gamma, "projection_set");
    IntervalProcess out(gamma.times(), gamma.atoms());
    for (int t = 0; t < gamma.times(); ++t) {
        std::vector<ExtReal> lo(gamma.atoms(), ExtReal(Rational(0)));
        std::vector<ExtReal> hi(gamma.atoms(), ExtReal(Rational(0)));
        for (int a = 0; a < gamma.atoms(); ++a)
            if (!gamma.at(t, a).is_empty()) {
                lo[a] = gamma.at(t, a).lo();
                hi[a] = gamma.at(t, a).hi();
            }
        const Partition& p = mode_partition(space, t, mode);
        std::vector<ExtReal> clo = cond_exp(space, p, lo);
        std::vector<ExtReal> chi = cond_exp(space, p, hi);
        for (int a = 0; a < gamma.atoms(); ++a) out.at(t, a) = IntervalSet(clo[a], chi[a]);
    }
    return out;
}

IntervalProcess optional_projection_set(const FilteredSpace& space, const IntervalProcess& gamma) {
    return projection_set(space, gamma, ProjectionMode::Optional);
}

IntervalProcess predictable_projection_set(const FilteredSpace& space,
                                           const IntervalProcess& gamma) {
    return projection_set(space, gamma, ProjectionMode::Predictable);
}

IntervalProcess projection_set_support_route(const FilteredSpace& space,
                                             const IntervalProcess& gamma, ProjectionMode mode) {
    gamma.validate(space);
    require_selection(space, gamma, "projection_set_support_route");
    ConvexIntegrand projected = projection_convex(space, support_integrand(gamma), mode);
    IntervalProcess out(gamma.times(), gamma.atoms());
    for (int t = 0; t < gamma.times(); ++t)
        for (int a = 0; a < gamma.atoms(); ++a)
            out.at(t, a) = interval_of_support(projected.at(t, a));
    return out;
}

std::vector<IntervalSet> conditional_expectation_set(const FilteredSpace& space,
                                                     const Partition& partition,
                                                     const std::vector<IntervalSet>& fibers) {
    if (fibers.size() != static_cast<size_t>(space.atom_count()))
        throw StructuralError("conditional_expectation_set: fiber count mismatch");
    std::vector<ExtReal> lo(fibers.size(), ExtReal(Rational(0)));
    std::vector<ExtReal> hi(fibers.size(), ExtReal(Rational(0)));
    for (size_t a = 0; a < fibers.size(); ++a) {
        if (fibers[a].is_empty()) {
            if (!space.is_null(static_cast<int>(a)))
                throw PreconditionError(
                    "conditional_expectation_set: empty fiber on a positive-probability atom");
            continue;
        }
        lo[a] = fibers[a].lo();
        hi[a] = fibers[a].hi();
    }
    std::vector<ExtReal> clo = cond_exp(space, partition, lo);
    std::vector<ExtReal> chi = cond_exp(space, partition, hi);
    std::vector<IntervalSet> out;
    out.reserve(partition.cell_count());
    for (int c = 0; c < partition.cell_count(); ++c) {
        int rep = partition.cell(c).front();
        out.push_back(IntervalSet(clo[rep], chi[rep]));
    }
    return out;
}

bool is_interval_process_adapted(const FilteredSpace& space, const IntervalProcess& gamma,
                                 ProjectionMode mode) {
    if (gamma.times() != space.horizon() + 1 || gamma.atoms() != space.atom_count()) return false;
    for (int t = 0; t < gamma.times(); ++t) {
        const Partition& p = mode_partition(space, t, mode);
        for (const auto& cell : p.cells())
            for (int a : cell)
                if (!(gamma.at(t, a) == gamma.at(t, cell.front()))) return false;
    }
    return true;
}

bool interval_process_indistinguishable(const FilteredSpace& space, const IntervalProcess& x,
                                        const IntervalProcess& y) {
    if (x.times() != y.times() || x.atoms() != y.atoms()) return false;
    for (int t = 0; t < x.times(); ++t)
        for (int a = 0; a < x.atoms(); ++a)
            if (!space.is_null(a) && !(x.at(t, a) == y.at(t, a))) return false;
    return true;
}

bool verify_via_bst(const FilteredSpace& space, const IntervalProcess& gamma,
                    const IntervalProcess& candidate, ProjectionMode mode, long long cap) {
    gamma.validate(space);
    candidate.validate(space);
    if (!is_interval_process_adapted(space, candidate, mode))
        throw PreconditionError("verify_via_bst: candidate is not adapted for the mode");
    bool predictable = mode == ProjectionMode::Predictable;
    for (const auto& tau : enumerate_stopping_times(space, predictable, cap)) {
        if (!tau.is_bounded(space)) continue;
        Partition sigma = predictable ? sigma_before(space, tau) : sigma_at(space, tau);
        std::vector<IntervalSet> sampled(space.atom_count(), IntervalSet::point(Rational(0)));
        for (int a = 0; a < space.atom_count(); ++a)
            if (tau.finite_at(a)) sampled[a] = gamma.at(tau.at(a), a);
        std::vector<IntervalSet> ce = conditional_expectation_set(space, sigma, sampled);
        for (int a = 0; a < space.atom_count(); ++a) {
            if (space.is_null(a)) continue;
            if (!(candidate.at(tau.at(a), a) == ce[sigma.cell_index_of(a)])) return false;
        }
    }
    return true;
}

bool is_subset(const FilteredSpace& space, const IntervalProcess& inner,
               const IntervalProcess& outer) {
    if (inner.times() != outer.times() || inner.atoms() != outer.atoms()) return false;
    for (int t = 0; t < inner.times(); ++t)
        for (int a = 0; a < inner.atoms(); ++a)
            if (!space.is_null(a) && !outer.at(t, a).contains(inner.at(t, a))) return false;
    return true;
}

bool subset_via_stopping_times(const FilteredSpace& space, const IntervalProcess& inner,
                               const IntervalProcess& outer, ProjectionMode mode, long long cap) {
    inner.validate(space);
    outer.validate(space);
    if (!is_interval_process_adapted(space, inner, mode) ||
        !is_interval_process_adapted(space, outer, mode))
        throw PreconditionError("subset_via_stopping_times: inputs must be adapted for the mode");
    bool predictable = mode == ProjectionMode::Predictable;
    for (const auto& tau : enumerate_stopping_times(space, predictable, cap)) {
        if (!tau.is_bounded(space)) continue;
        for (int a = 0; a < space.atom_count(); ++a) {
            if (space.is_null(a)) continue;
            if (!outer.at(tau.at(a), a).contains(inner.at(tau.at(a), a))) return false;
        }
    }
    return true;
}

bool selection_membership(const FilteredSpace& space, const IntervalProcess& gamma,
                          const ScalarProcess& w, ProjectionMode mode) {
    gamma.validate(space);
    if (!is_interval_process_adapted(space, gamma, mode))
        throw PreconditionError("selection_membership: Gamma is not adapted for the mode");
    for (int t = 0; t < gamma.times(); ++t)
        for (int a = 0; a < gamma.atoms(); ++a) {
            if (space.is_null(a)) continue;
            if (!w.at(t, a).is_finite() || !gamma.at(t, a).contains(w.at(t, a).finite_value()))
                throw PreconditionError("selection_membership: w is not a finite selection");
        }
    ScalarProcess p = projection_process(space, w, mode);
    for (int t = 0; t < gamma.times(); ++t)
        for (int a = 0; a < gamma.atoms(); ++a) {
            if (space.is_null(a)) continue;
            if (!gamma.at(t, a).contains(p.at(t, a).finite_value())) return false;
        }
    return true;
}

} // namespace finproj
