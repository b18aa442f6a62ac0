#include "finproj/sections.hpp"

#include "finproj/errors.hpp"

namespace finproj {

EventSet domain_event_set(const IntervalProcess& gamma) {
    EventSet e(gamma.times(), gamma.atoms());
    for (int t = 0; t < gamma.times(); ++t)
        for (int a = 0; a < gamma.atoms(); ++a)
            if (!gamma.at(t, a).is_empty()) e.insert(t, a);
    return e;
}

namespace {

SectionResult section_impl(const FilteredSpace& space, const IntervalProcess& gamma,
                           ProjectionMode mode, const Rational& epsilon) {
    gamma.validate(space);
    if (!is_interval_process_adapted(space, gamma, mode))
        throw PreconditionError("section: Gamma is not adapted for the mode");

    EventSet dom = domain_event_set(gamma);
    SectionResult res;
    res.tau = debut(space, dom);
    res.epsilon = epsilon;

    res.w = ScalarProcess(gamma.times(), gamma.atoms());
    for (int t = 0; t < gamma.times(); ++t) {
        const Partition& p = mode_partition(space, t, mode);
        for (const auto& cell : p.cells()) {
            const IntervalSet& fiber = gamma.at(t, cell.front());
            ExtReal pick{Rational(0)};
            if (!fiber.is_empty()) pick = ExtReal(fiber.min_abs_point());
            for (int a : cell) res.w.at(t, a) = pick;
        }
    }

    res.p_tau_finite = Rational(0);
    res.p_dom = Rational(0);
    for (int a = 0; a < space.atom_count(); ++a) {
        if (res.tau.finite_at(a)) res.p_tau_finite += space.prob(a);
        for (int t = 0; t < gamma.times(); ++t)
            if (!gamma.at(t, a).is_empty()) {
                res.p_dom += space.prob(a);
                break;
            }
    }
    return res;
}

} // namespace

SectionResult optional_section(const FilteredSpace& space, const IntervalProcess& gamma,
                               const Rational& epsilon) {
    return section_impl(space, gamma, ProjectionMode::Optional, epsilon);
}

SectionResult predictable_section(const FilteredSpace& space, const IntervalProcess& gamma,
                                  const Rational& epsilon) {
    return section_impl(space, gamma, ProjectionMode::Predictable, epsilon);
}

bool verify_section(const FilteredSpace& space, const IntervalProcess& gamma,
                    const StoppingTime& tau, const ScalarProcess& w) {
    for (int a = 0; a < space.atom_count(); ++a) {
        if (space.is_null(a) || !tau.finite_at(a)) continue;
        const IntervalSet& fiber = gamma.at(tau.at(a), a);
        if (fiber.is_empty()) return false; // graph(tau) exits dom Gamma
        const ExtReal& val = w.at(tau.at(a), a);
        if (!val.is_finite() || !fiber.contains(val.finite_value())) return false;
    }
    Rational p_tau(0), p_dom(0);
    for (int a = 0; a < space.atom_count(); ++a) {
        if (tau.finite_at(a)) p_tau += space.prob(a);
        for (int t = 0; t < gamma.times(); ++t)
            if (!gamma.at(t, a).is_empty()) {
                p_dom += space.prob(a);
                break;
            }
    }
    return p_tau == p_dom;
}

} // namespace finproj
