#include "finproj/epiproj.hpp"

#include "finproj/errors.hpp"

namespace finproj {

ConvexIntegrand conjugate_integrand(const FilteredSpace& space, const ConvexIntegrand& h) {
    h.validate(space);
    ConvexIntegrand out = h;
    for (int t = 0; t < h.times(); ++t)
        for (int a = 0; a < h.atoms(); ++a) {
            if (h.at(t, a).is_empty()) {
                if (!space.is_null(a))
                    throw PreconditionError("conjugate_integrand: empty fiber at (t=" +
                                            std::to_string(t) + ", atom=" + std::to_string(a) +
                                            ")");
                continue; // null atom: keep the flagged fiber as is
            }
            out.fibers[t][a] = conjugate(h.at(t, a));
        }
    return out;
}

namespace {

/// Domain of the conjugate of a proper fiber is its slope range.
IntervalSet conjugate_domain(const PLConvex& f) {
    return IntervalSet(f.left_slope(), f.right_slope());
}

/// Per-atom finite point of dom h (measurable witness); fails on a flagged
/// Empty fiber off null atoms.
bool measurable_domain_witness(const FilteredSpace& space, const ConvexIntegrand& h,
                               ScalarProcess& out, std::string& obstruction,
                               const std::string& label) {
    out = ScalarProcess(h.times(), h.atoms());
    for (int t = 0; t < h.times(); ++t)
        for (int a = 0; a < h.atoms(); ++a) {
            if (space.is_null(a)) continue;
            if (h.at(t, a).is_empty()) {
                obstruction = "no " + label + ": fiber identically +inf at (t=" +
                              std::to_string(t) + ", atom=" + std::to_string(a) + ")";
                return false;
            }
            out.at(t, a) = ExtReal(h.at(t, a).domain().min_abs_point());
        }
    return true;
}

/// Per-cell point of the intersected interval family (adapted witness).
bool adapted_interval_witness(const FilteredSpace& space, ProjectionMode mode,
                              const std::vector<std::vector<IntervalSet>>& sets,
                              ScalarProcess& out, std::string& obstruction,
                              const std::string& label) {
    int times = static_cast<int>(sets.size());
    out = ScalarProcess(times, space.atom_count());
    for (int t = 0; t < times; ++t) {
        const Partition& p = mode_partition(space, t, mode);
        for (const auto& cell : p.cells()) {
            ExtReal lo = ExtReal::minus_inf(), hi = ExtReal::plus_inf();
            bool any = false;
            for (int a : cell) {
                if (space.is_null(a)) continue;
                any = true;
                lo = ext_max(lo, sets[t][a].lo());
                hi = ext_min(hi, sets[t][a].hi());
            }
            if (!any) continue; // null cell, witness value 0 is fine
            if (hi < lo) {
                obstruction = "no adapted " + label +
                              ": intersected domains empty on the cell of atom " +
                              std::to_string(cell.front()) + " at t=" + std::to_string(t);
                return false;
            }
            Rational x = IntervalSet(lo, hi).min_abs_point();
            for (int a : cell) out.at(t, a) = ExtReal(x);
        }
    }
    return true;
}

} // namespace

EpiPreconditions preconditions_epip(const FilteredSpace& space, const ConvexIntegrand& h,
                                    ProjectionMode mode) {
    h.validate(space);
    EpiPreconditions res;
    ScalarProcess w, v;
    std::string obstruction;
    if (!measurable_domain_witness(space, h, w, obstruction, "w with h(w)+ finite")) {
        res.obstruction = obstruction;
        return res;
    }
    std::vector<std::vector<IntervalSet>> conj_doms(
        h.times(), std::vector<IntervalSet>(h.atoms(), IntervalSet::whole_line()));
    for (int t = 0; t < h.times(); ++t)
        for (int a = 0; a < h.atoms(); ++a)
            if (!space.is_null(a)) conj_doms[t][a] = conjugate_domain(h.at(t, a));
    if (!adapted_interval_witness(space, mode, conj_doms, v, obstruction,
                                  "v with h*(v)+ finite")) {
        res.obstruction = obstruction;
        res.w_witness = std::move(w);
        return res;
    }
    res.ok = true;
    res.w_witness = std::move(w);
    res.v_witness = std::move(v);
    return res;
}

ConvexIntegrand epi_projection(const FilteredSpace& space, const ConvexIntegrand& h,
                               ProjectionMode mode) {
    EpiPreconditions pre = preconditions_epip(space, h, mode);
    if (!pre.ok) throw PreconditionError("epi_projection: " + pre.obstruction);
    return conjugate_integrand(space,
                               projection_convex(space, conjugate_integrand(space, h), mode));
}

ConvexIntegrand epi_projection_optional(const FilteredSpace& space, const ConvexIntegrand& h) {
    return epi_projection(space, h, ProjectionMode::Optional);
}

ConvexIntegrand epi_projection_predictable(const FilteredSpace& space, const ConvexIntegrand& h) {
    return epi_projection(space, h, ProjectionMode::Predictable);
}

std::pair<ConvexIntegrand, ConvexIntegrand> recession_commutes(const FilteredSpace& space,
                                                               const ConvexIntegrand& h,
                                                               ProjectionMode mode) {
    h.validate(space);
    // Thm hypotheses with the roles swapped relative to the epi-projection:
    // adapted w with h(w)+ finite, measurable finite v with h*(v)+ finite.
    std::string obstruction;
    std::vector<std::vector<IntervalSet>> doms(
        h.times(), std::vector<IntervalSet>(h.atoms(), IntervalSet::whole_line()));
    for (int t = 0; t < h.times(); ++t)
        for (int a = 0; a < h.atoms(); ++a)
            if (!space.is_null(a)) {
                if (h.at(t, a).is_empty())
                    throw PreconditionError(
                        "recession_commutes: fiber identically +inf at (t=" + std::to_string(t) +
                        ", atom=" + std::to_string(a) + ")");
                doms[t][a] = h.at(t, a).domain();
            }
    ScalarProcess w;
    if (!adapted_interval_witness(space, mode, doms, w, obstruction, "w with h(w)+ finite"))
        throw PreconditionError("recession_commutes: " + obstruction);
    // The measurable v-witness exists for every proper fiber (its conjugate
    // domain, the slope range, is a nonempty interval), so nothing to search.

    ConvexIntegrand rec_h = h;
    for (int t = 0; t < h.times(); ++t)
        for (int a = 0; a < h.atoms(); ++a)
            rec_h.fibers[t][a] = h.at(t, a).is_empty() ? PLConvex::constant(Rational(0))
                                                       : recession(h.at(t, a));
    ConvexIntegrand lhs = projection_convex(space, rec_h, mode);

    ConvexIntegrand proj = projection_convex(space, h, mode);
    ConvexIntegrand rhs = proj;
    for (int t = 0; t < proj.times(); ++t)
        for (int a = 0; a < proj.atoms(); ++a)
            rhs.fibers[t][a] = proj.at(t, a).is_empty() ? PLConvex::constant(Rational(0))
                                                        : recession(proj.at(t, a));
    return {lhs, rhs};
}

ScalarProcess jensen_gap(const FilteredSpace& space, const ConvexIntegrand& h,
                         const ScalarProcess& w, ProjectionMode mode) {
    h.validate(space);
    for (int t = 0; t < w.times(); ++t)
        for (int a = 0; a < w.atoms(); ++a)
            if (!space.is_null(a) && !w.at(t, a).is_finite())
                throw PreconditionError("jensen_gap: w must be finite off null atoms");
    EpiPreconditions pre = preconditions_epip(space, h, mode);
    if (!pre.ok) throw PreconditionError("jensen_gap: " + pre.obstruction);

    ScalarProcess hw = evaluate_along(space, h, w);
    ScalarProcess proj_hw = projection_process(space, hw, mode);
    ScalarProcess proj_w = projection_process(space, w, mode);
    ConvexIntegrand epi = epi_projection(space, h, mode);

    ScalarProcess gap(w.times(), w.atoms());
    for (int t = 0; t < w.times(); ++t)
        for (int a = 0; a < w.atoms(); ++a) {
            if (space.is_null(a)) continue;
            ExtReal lhs = epi.at(t, a).eval(proj_w.at(t, a).finite_value());
            gap.at(t, a) = add(proj_hw.at(t, a), negate(lhs));
        }
    return gap;
}

} // namespace finproj
