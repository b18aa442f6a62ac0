#ifndef FINPROJ_EPIPROJ_HPP
#define FINPROJ_EPIPROJ_HPP

#include <optional>
#include <string>
#include <utility>

#include "finproj/integrand.hpp"

namespace finproj {

/// Fiber-wise exact Legendre-Fenchel transform. A flagged Empty fiber on a
/// positive-probability atom is improper and rejected; Empty fibers on null
/// atoms pass through unchanged.
ConvexIntegrand conjugate_integrand(const FilteredSpace& space, const ConvexIntegrand& h);

/// Witness search for the duality hypotheses: a finite measurable w with
/// h(w)+ finite off null atoms, and an adapted v with h*(v)+ finite off null
/// atoms. The v-search intersects the conjugate domains (slope ranges) over
/// each cell of the mode's partition.
struct EpiPreconditions {
    bool ok = false;
    std::optional<ScalarProcess> w_witness; // measurable, finite
    std::optional<ScalarProcess> v_witness; // adapted for the mode
    std::string obstruction;                // which hypothesis failed, and where
};

EpiPreconditions preconditions_epip(const FilteredSpace& space, const ConvexIntegrand& h,
                                    ProjectionMode mode);

/// Epi-projection through conjugate duality: conjugate, project fiber-wise,
/// conjugate back. Refuses to compute when the hypotheses fail.
ConvexIntegrand epi_projection(const FilteredSpace& space, const ConvexIntegrand& h,
                               ProjectionMode mode);
ConvexIntegrand epi_projection_optional(const FilteredSpace& space, const ConvexIntegrand& h);
ConvexIntegrand epi_projection_predictable(const FilteredSpace& space, const ConvexIntegrand& h);

/// Both sides of the recession commutation identity:
/// lhs = projection of the fiber-wise recession, rhs = fiber-wise recession
/// of the projection. Hypotheses: an adapted w with h(w)+ finite (common
/// domain point per cell) and a finite measurable v with h*(v)+ finite.
std::pair<ConvexIntegrand, ConvexIntegrand> recession_commutes(const FilteredSpace& space,
                                                               const ConvexIntegrand& h,
                                                               ProjectionMode mode);

/// gap = projection of h(w) minus the epi-projection evaluated along the
/// projection of w; nonnegative off null atoms on every valid instance.
ScalarProcess jensen_gap(const FilteredSpace& space, const ConvexIntegrand& h,
                         const ScalarProcess& w, ProjectionMode mode);

} // namespace finproj

#endif
