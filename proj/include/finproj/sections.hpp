#ifndef FINPROJ_SECTIONS_HPP
#define FINPROJ_SECTIONS_HPP

#include "finproj/setproc.hpp"

namespace finproj {

/// Output of a section finder. On a finite space the debut achieves the full
/// measure, so p_tau_finite equals p_dom exactly; epsilon is recorded but
/// plays no role.
struct SectionResult {
    StoppingTime tau;
    ScalarProcess w;
    Rational p_tau_finite;
    Rational p_dom;
    Rational epsilon;
};

EventSet domain_event_set(const IntervalProcess& gamma);

/// Optional section: tau = debut of dom Gamma, w an adapted selection with
/// the minimal-absolute-value tie-break.
SectionResult optional_section(const FilteredSpace& space, const IntervalProcess& gamma,
                               const Rational& epsilon = Rational(0));

/// Predictable section: the same construction over the predictable cells.
SectionResult predictable_section(const FilteredSpace& space, const IntervalProcess& gamma,
                                  const Rational& epsilon = Rational(0));

/// Checks the three section guarantees exactly (off null atoms):
/// graph(tau) inside dom Gamma, w_tau a selection on {tau < inf}, and
/// P(tau < inf) = P(pi(dom Gamma)).
bool verify_section(const FilteredSpace& space, const IntervalProcess& gamma,
                    const StoppingTime& tau, const ScalarProcess& w);

} // namespace finproj

#endif
