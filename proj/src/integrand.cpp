#include "finproj/integrand.hpp"

#include <algorithm>

#include "finproj/errors.hpp"

namespace finproj {

int GridIntegrand::grid_index(const Rational& x) const {
    auto it = std::lower_bound(xgrid.begin(), xgrid.end(), x);
    if (it != xgrid.end() && *it == x) return static_cast<int>(it - xgrid.begin());
    return -1;
}

void GridIntegrand::validate(const FilteredSpace& space) const {
    if (xgrid.empty()) throw SchemaError("grid integrand needs a nonempty grid");
    for (size_t i = 0; i + 1 < xgrid.size(); ++i)
        if (!(xgrid[i] < xgrid[i + 1]))
            throw SchemaError("grid must be strictly increasing");
    if (times() != space.horizon() + 1)
        throw StructuralError("grid integrand times do not match the space");
    for (const auto& slice : values) {
        if (slice.size() != static_cast<size_t>(space.atom_count()))
            throw StructuralError("grid integrand atoms do not match the space");
        for (const auto& row : slice)
            if (row.size() != xgrid.size())
                throw StructuralError("grid integrand row does not match the grid");
    }
}

void ConvexIntegrand::validate(const FilteredSpace& space) const {
    if (times() != space.horizon() + 1)
        throw StructuralError("convex integrand times do not match the space");
    for (const auto& slice : fibers)
        if (slice.size() != static_cast<size_t>(space.atom_count()))
            throw StructuralError("convex integrand atoms do not match the space");
}

std::vector<std::pair<int, int>> ConvexIntegrand::empty_fibers(const FilteredSpace& space) const {
    std::vector<std::pair<int, int>> out;
    for (int t = 0; t < times(); ++t)
        for (int a = 0; a < atoms(); ++a)
            if (!space.is_null(a) && fibers[t][a].is_empty()) out.push_back({t, a});
    return out;
}

// --- projections ---

namespace {

std::vector<ExtReal> grid_slice(const GridIntegrand& h, int t, int gi) {
    std::vector<ExtReal> phi(h.atoms());
    for (int a = 0; a < h.atoms(); ++a) phi[a] = h.at(t, a, gi);
    return phi;
}

/// Per-cell fiber average with conditional weights; zero fiber on null cells.
std::vector<PLConvex> project_convex_slice(const FilteredSpace& space, const Partition& partition,
                                           const std::vector<PLConvex>& fibers) {
    std::vector<PLConvex> out(space.atom_count(), PLConvex::constant(Rational(0)));
    for (const auto& cell : partition.cells()) {
        Rational mass = space.cell_prob(cell);
        PLConvex value = PLConvex::constant(Rational(0));
        if (!mass.is_zero()) {
            std::vector<Rational> weights;
            std::vector<PLConvex> fs;
            for (int a : cell) {
                if (space.is_null(a)) continue;
                weights.push_back(space.prob(a) / mass);
                fs.push_back(fibers[a]);
            }
            value = average(weights, fs);
        }
        for (int a : cell) out[a] = value;
    }
    return out;
}

} // namespace

GridIntegrand projection_grid(const FilteredSpace& space, const GridIntegrand& h,
                              ProjectionMode mode) {
    h.validate(space);
    GridIntegrand out = h;
    for (int t = 0; t <= space.horizon(); ++t) {
        const Partition& p = mode_partition(space, t, mode);
        for (int gi = 0; gi < h.grid_size(); ++gi) {
            std::vector<ExtReal> ce = cond_exp(space, p, grid_slice(h, t, gi));
            for (int a = 0; a < h.atoms(); ++a) out.at(t, a, gi) = ce[a];
        }
    }
    return out;
}

GridIntegrand optional_projection_grid(const FilteredSpace& space, const GridIntegrand& h) {
    return projection_grid(space, h, ProjectionMode::Optional);
}

GridIntegrand predictable_projection_grid(const FilteredSpace& space, const GridIntegrand& h) {
    return projection_grid(space, h, ProjectionMode::Predictable);
}

ConvexIntegrand projection_convex(const FilteredSpace& space, const ConvexIntegrand& h,
                                  ProjectionMode mode) {
    h.validate(space);
    ClassCheckResult cls = mode == ProjectionMode::Optional ? check_class_D(space, h)
                                                            : check_class_P(space, h);
    if (!cls.ok)
        throw PreconditionError("projection_convex: class check failed at (t=" +
                                std::to_string(cls.bad_time) +
                                ", atom=" + std::to_string(cls.bad_atom) + ")");
    ConvexIntegrand out = h;
    for (int t = 0; t <= space.horizon(); ++t)
        out.fibers[t] = project_convex_slice(space, mode_partition(space, t, mode), h.fibers[t]);
    return out;
}

ConvexIntegrand optional_projection_convex(const FilteredSpace& space, const ConvexIntegrand& h) {
    return projection_convex(space, h, ProjectionMode::Optional);
}

ConvexIntegrand predictable_projection_convex(const FilteredSpace& space,
                                              const ConvexIntegrand& h) {
    return projection_convex(space, h, ProjectionMode::Predictable);
}

ConvexIntegrand projection_convex_constructive(const FilteredSpace& space,
                                               const ConvexIntegrand& h, ProjectionMode mode,
                                               int ladder_size) {
    h.validate(space);
    if (ladder_size < 1) throw SchemaError("ladder_size must be >= 1");

    auto restrict_to = [&](const ConvexIntegrand& g, const IntervalSet& box) {
        ConvexIntegrand r = g;
        for (int t = 0; t < g.times(); ++t)
            for (int a = 0; a < g.atoms(); ++a)
                r.fibers[t][a] = g.at(t, a).is_empty()
                                     ? PLConvex::empty()
                                     : positive_combination({Rational(1), Rational(1)},
                                                            {g.at(t, a), indicator(box)});
        return r;
    };

    std::vector<ConvexIntegrand> ladder; // k^j per box
    Rational radius(1);
    for (int j = 0; j < ladder_size; ++j, radius = radius * Rational(2)) {
        IntervalSet box(ExtReal(-radius), ExtReal(radius));
        // Stabilization threshold: largest interior slope magnitude of any
        // restricted fiber; the nu ladder doubles until it passes it.
        Rational nu_hat(0);
        for (int t = 0; t <= space.horizon(); ++t)
            for (int a = 0; a < space.atom_count(); ++a) {
                if (space.is_null(a) || h.at(t, a).is_empty()) continue;
                PLConvex g = positive_combination({Rational(1), Rational(1)},
                                                  {h.at(t, a), indicator(box)});
                if (g.is_empty()) continue;
                for (int i = 0; i + 1 < g.breakpoint_count(); ++i) {
                    Rational s =
                        ((g.vs()[i + 1] - g.vs()[i]) / (g.xs()[i + 1] - g.xs()[i])).abs();
                    nu_hat = rat_max(nu_hat, s);
                }
            }
        std::vector<Rational> nus{Rational(1)};
        while (nus.back() < nu_hat) nus.push_back(nus.back() * Rational(2));
        nus.push_back(nus.back() * Rational(2)); // one rung past stabilization

        ConvexIntegrand prev;
        bool have_prev = false;
        ConvexIntegrand projected;
        for (const auto& nu : nus) {
            ConvexIntegrand env = h;
            for (int t = 0; t < h.times(); ++t)
                for (int a = 0; a < h.atoms(); ++a)
                    env.fibers[t][a] = h.at(t, a).is_empty()
                                           ? PLConvex::empty()
                                           : pasch_hausdorff(h.at(t, a), nu, box);
            projected = projection_convex(space, env, mode);
            if (have_prev && !integrand_leq(space, prev, projected))
                throw StructuralError("constructive path: envelope projections not monotone");
            prev = projected;
            have_prev = true;
        }
        // sup over nu realized on the box by the stabilized rung, +inf off it
        ladder.push_back(restrict_to(projected, box));
    }
    // Ladder consistency: k^j equals k^{j+1} restricted back to the smaller box.
    radius = Rational(1);
    for (size_t j = 0; j + 1 < ladder.size(); ++j, radius = radius * Rational(2)) {
        IntervalSet box(ExtReal(-radius), ExtReal(radius));
        if (!integrand_indistinguishable(space, ladder[j], restrict_to(ladder[j + 1], box)))
            throw StructuralError("constructive path: box ladder inconsistent");
    }
    return ladder.back();
}

// --- class membership ---

namespace {

ClassCheckResult check_grid_class(const FilteredSpace& space, const GridIntegrand& h) {
    h.validate(space);
    ClassCheckResult res;
    for (int t = 0; t < h.times(); ++t)
        for (int a = 0; a < h.atoms(); ++a) {
            if (space.is_null(a)) continue;
            for (int gi = 0; gi < h.grid_size(); ++gi)
                if (h.at(t, a, gi).is_minus_inf()) {
                    res.ok = false;
                    res.bad_time = t;
                    res.bad_atom = a;
                    return res;
                }
        }
    res.ok = true;
    ClassWitness w;
    w.boxes.push_back(IntervalSet(ExtReal(h.xgrid.front()), ExtReal(h.xgrid.back())));
    ScalarProcess m(h.times(), h.atoms());
    for (int t = 0; t < h.times(); ++t)
        for (int a = 0; a < h.atoms(); ++a) {
            ExtReal lo{Rational(0)};
            for (int gi = 0; gi < h.grid_size(); ++gi) lo = ext_min(lo, h.at(t, a, gi));
            m.at(t, a) = space.is_null(a) ? ExtReal(Rational(0)) : lo;
        }
    w.minorants.push_back(std::move(m));
    res.witness = std::move(w);
    return res;
}

ClassCheckResult check_convex_class(const FilteredSpace& space, const ConvexIntegrand& h) {
    h.validate(space);
    // Proper convex fibers are bounded below on bounded boxes, so the check
    // always succeeds; it still produces the ladder witness.
    ClassCheckResult res;
    res.ok = true;
    ClassWitness w;
    Rational radius(1);
    for (int j = 0; j < 4; ++j, radius = radius * Rational(2)) {
        IntervalSet box(ExtReal(-radius), ExtReal(radius));
        ScalarProcess m(h.times(), h.atoms());
        for (int t = 0; t < h.times(); ++t)
            for (int a = 0; a < h.atoms(); ++a) {
                ExtReal lo = h.at(t, a).min_over(box);
                m.at(t, a) = lo.is_finite() ? lo : ExtReal(Rational(0));
            }
        w.boxes.push_back(box);
        w.minorants.push_back(std::move(m));
    }
    res.witness = std::move(w);
    return res;
}

} // namespace

ClassCheckResult check_class_D(const FilteredSpace& space, const GridIntegrand& h) {
    return check_grid_class(space, h);
}
ClassCheckResult check_class_D(const FilteredSpace& space, const ConvexIntegrand& h) {
    return check_convex_class(space, h);
}
// On a finite grid T- and T_p-integrability both reduce to finiteness off
// null atoms, so the class-P check coincides with the class-D one.
ClassCheckResult check_class_P(const FilteredSpace& space, const GridIntegrand& h) {
    return check_grid_class(space, h);
}
ClassCheckResult check_class_P(const FilteredSpace& space, const ConvexIntegrand& h) {
    return check_convex_class(space, h);
}

// --- composition ---

ScalarProcess evaluate_along(const FilteredSpace& space, const GridIntegrand& h,
                             const ScalarProcess& w) {
    h.validate(space);
    ScalarProcess out(h.times(), h.atoms());
    for (int t = 0; t < h.times(); ++t)
        for (int a = 0; a < h.atoms(); ++a) {
            const ExtReal& x = w.at(t, a);
            if (!x.is_finite()) {
                if (space.is_null(a)) continue;
                throw StructuralError("evaluate_along: infinite w on a positive-probability atom");
            }
            int gi = h.grid_index(x.finite_value());
            if (gi < 0) {
                if (space.is_null(a)) continue;
                throw StructuralError("evaluate_along: off-grid value " +
                                      x.finite_value().str() +
                                      " on a positive-probability atom");
            }
            out.at(t, a) = h.at(t, a, gi);
        }
    return out;
}

ScalarProcess evaluate_along(const FilteredSpace& space, const ConvexIntegrand& h,
                             const ScalarProcess& w) {
    h.validate(space);
    ScalarProcess out(h.times(), h.atoms());
    for (int t = 0; t < h.times(); ++t)
        for (int a = 0; a < h.atoms(); ++a) {
            const ExtReal& x = w.at(t, a);
            if (!x.is_finite()) {
                if (space.is_null(a)) continue;
                throw StructuralError("evaluate_along: infinite w on a positive-probability atom");
            }
            out.at(t, a) = h.at(t, a).eval(x.finite_value());
        }
    return out;
}

namespace {

template <typename H>
bool is_projectable_impl(const FilteredSpace& space, const H& h, const ScalarProcess& w,
                         ProjectionMode mode) {
    if (!is_adapted(space, w, mode))
        throw PreconditionError("is_projectable: w is not adapted for the mode");
    ScalarProcess v = evaluate_along(space, h, w);
    bool has_plus = false, has_minus = false;
    for (int t = 0; t < v.times(); ++t)
        for (int a = 0; a < v.atoms(); ++a) {
            if (space.is_null(a)) continue;
            if (v.at(t, a).is_plus_inf()) has_plus = true;
            if (v.at(t, a).is_minus_inf()) has_minus = true;
        }
    return !(has_plus && has_minus);
}

} // namespace

bool is_projectable(const FilteredSpace& space, const GridIntegrand& h, const ScalarProcess& w,
                    ProjectionMode mode) {
    return is_projectable_impl(space, h, w, mode);
}

bool is_projectable(const FilteredSpace& space, const ConvexIntegrand& h, const ScalarProcess& w,
                    ProjectionMode mode) {
    return is_projectable_impl(space, h, w, mode);
}

// --- order, equality ---

bool integrand_leq(const FilteredSpace& space, const GridIntegrand& h1, const GridIntegrand& h2) {
    if (h1.xgrid != h2.xgrid || h1.times() != h2.times()) return false;
    for (int t = 0; t < h1.times(); ++t)
        for (int a = 0; a < h1.atoms(); ++a) {
            if (space.is_null(a)) continue;
            for (int gi = 0; gi < h1.grid_size(); ++gi)
                if (!(h1.at(t, a, gi) <= h2.at(t, a, gi))) return false;
        }
    return true;
}

bool integrand_leq(const FilteredSpace& space, const ConvexIntegrand& h1,
                   const ConvexIntegrand& h2) {
    if (h1.times() != h2.times()) return false;
    for (int t = 0; t < h1.times(); ++t)
        for (int a = 0; a < h1.atoms(); ++a)
            if (!space.is_null(a) && !leq(h1.at(t, a), h2.at(t, a))) return false;
    return true;
}

bool integrand_indistinguishable(const FilteredSpace& space, const GridIntegrand& a,
                                 const GridIntegrand& b) {
    if (a.xgrid != b.xgrid || a.times() != b.times()) return false;
    for (int t = 0; t < a.times(); ++t)
        for (int at = 0; at < a.atoms(); ++at) {
            if (space.is_null(at)) continue;
            for (int gi = 0; gi < a.grid_size(); ++gi)
                if (a.at(t, at, gi) != b.at(t, at, gi)) return false;
        }
    return true;
}

bool integrand_indistinguishable(const FilteredSpace& space, const ConvexIntegrand& a,
                                 const ConvexIntegrand& b) {
    if (a.times() != b.times()) return false;
    for (int t = 0; t < a.times(); ++t)
        for (int at = 0; at < a.atoms(); ++at)
            if (!space.is_null(at) && !(a.at(t, at) == b.at(t, at))) return false;
    return true;
}

bool is_integrand_adapted(const FilteredSpace& space, const GridIntegrand& h,
                          ProjectionMode mode) {
    for (int t = 0; t < h.times(); ++t) {
        const Partition& p = mode_partition(space, t, mode);
        for (const auto& cell : p.cells())
            for (int a : cell)
                for (int gi = 0; gi < h.grid_size(); ++gi)
                    if (h.at(t, a, gi) != h.at(t, cell.front(), gi)) return false;
    }
    return true;
}

bool is_integrand_adapted(const FilteredSpace& space, const ConvexIntegrand& h,
                          ProjectionMode mode) {
    for (int t = 0; t < h.times(); ++t) {
        const Partition& p = mode_partition(space, t, mode);
        for (const auto& cell : p.cells())
            for (int a : cell)
                if (!(h.at(t, a) == h.at(t, cell.front()))) return false;
    }
    return true;
}

// --- monotone convergence ---

std::pair<GridIntegrand, GridIntegrand> monotone_sup_projection(
    const FilteredSpace& space, const std::vector<GridIntegrand>& hs, ProjectionMode mode) {
    if (hs.empty()) throw StructuralError("monotone_sup_projection: empty chain");
    for (size_t i = 0; i + 1 < hs.size(); ++i)
        if (!integrand_leq(space, hs[i], hs[i + 1]))
            throw PreconditionError("monotone_sup_projection: chain is not nondecreasing");
    ClassCheckResult base = check_class_D(space, hs.front());
    if (!base.ok)
        throw PreconditionError("monotone_sup_projection: h_1 is not bounded below off null atoms");

    GridIntegrand sup = hs.front();
    for (size_t i = 1; i < hs.size(); ++i)
        for (int t = 0; t < sup.times(); ++t)
            for (int a = 0; a < sup.atoms(); ++a)
                for (int gi = 0; gi < sup.grid_size(); ++gi)
                    sup.at(t, a, gi) = ext_max(sup.at(t, a, gi), hs[i].at(t, a, gi));

    GridIntegrand sup_of_proj = projection_grid(space, hs.front(), mode);
    for (size_t i = 1; i < hs.size(); ++i) {
        GridIntegrand p = projection_grid(space, hs[i], mode);
        for (int t = 0; t < p.times(); ++t)
            for (int a = 0; a < p.atoms(); ++a)
                for (int gi = 0; gi < p.grid_size(); ++gi)
                    sup_of_proj.at(t, a, gi) = ext_max(sup_of_proj.at(t, a, gi), p.at(t, a, gi));
    }
    return {sup_of_proj, projection_grid(space, sup, mode)};
}

std::pair<ConvexIntegrand, ConvexIntegrand> monotone_sup_projection(
    const FilteredSpace& space, const std::vector<ConvexIntegrand>& hs, ProjectionMode mode) {
    if (hs.empty()) throw StructuralError("monotone_sup_projection: empty chain");
    for (size_t i = 0; i + 1 < hs.size(); ++i)
        if (!integrand_leq(space, hs[i], hs[i + 1]))
            throw PreconditionError("monotone_sup_projection: chain is not nondecreasing");

    auto fold_max = [](const std::vector<ConvexIntegrand>& gs) {
        ConvexIntegrand acc = gs.front();
        for (size_t i = 1; i < gs.size(); ++i)
            for (int t = 0; t < acc.times(); ++t)
                for (int a = 0; a < acc.atoms(); ++a)
                    acc.fibers[t][a] = max2(acc.at(t, a), gs[i].at(t, a));
        return acc;
    };

    ConvexIntegrand sup = fold_max(hs);
    std::vector<ConvexIntegrand> projs;
    projs.reserve(hs.size());
    for (const auto& h : hs) projs.push_back(projection_convex(space, h, mode));
    return {fold_max(projs), projection_convex(space, sup, mode)};
}

// --- Lipschitz ---

ExtReal lipschitz_constant(const FilteredSpace& space, const ConvexIntegrand& h) {
    ExtReal best{Rational(0)};
    for (int t = 0; t < h.times(); ++t)
        for (int a = 0; a < h.atoms(); ++a) {
            if (space.is_null(a) || h.at(t, a).is_empty()) continue;
            best = ext_max(best, h.at(t, a).max_slope_magnitude());
        }
    return best;
}

// --- conditional expectation (single time) ---

GridIntegrand conditional_expectation_integrand(const FilteredSpace& space,
                                                const Partition& partition,
                                                const GridIntegrand& f) {
    if (f.times() != 1)
        throw StructuralError("conditional_expectation_integrand needs a single-time integrand");
    GridIntegrand out = f;
    for (int gi = 0; gi < f.grid_size(); ++gi) {
        std::vector<ExtReal> ce = cond_exp(space, partition, grid_slice(f, 0, gi));
        for (int a = 0; a < f.atoms(); ++a) out.at(0, a, gi) = ce[a];
    }
    return out;
}

ConvexIntegrand conditional_expectation_integrand(const FilteredSpace& space,
                                                  const Partition& partition,
                                                  const ConvexIntegrand& f) {
    if (f.times() != 1)
        throw StructuralError("conditional_expectation_integrand needs a single-time integrand");
    ConvexIntegrand out = f;
    out.fibers[0] = project_convex_slice(space, partition, f.fibers[0]);
    return out;
}

// --- affine reparametrization ---

std::pair<ConvexIntegrand, ConvexIntegrand> affine_reparam_projection(
    const FilteredSpace& space, const ConvexIntegrand& h, const ScalarProcess& B,
    const ScalarProcess& b, ProjectionMode mode) {
    h.validate(space);
    if (!is_adapted(space, B, mode) || !is_adapted(space, b, mode))
        throw PreconditionError("affine_reparam_projection: B and b must be adapted");
    for (int t = 0; t < h.times(); ++t)
        for (int a = 0; a < h.atoms(); ++a) {
            if (space.is_null(a)) continue;
            if (!B.at(t, a).is_finite() || B.at(t, a).finite_value().is_zero())
                throw PreconditionError(
                    "affine_reparam_projection: zero or infinite B on a positive-probability atom");
            if (!b.at(t, a).is_finite())
                throw PreconditionError(
                    "affine_reparam_projection: infinite b on a positive-probability atom");
        }

    auto reparam = [&](const ConvexIntegrand& g) {
        ConvexIntegrand r = g;
        for (int t = 0; t < g.times(); ++t)
            for (int a = 0; a < g.atoms(); ++a) {
                if (space.is_null(a)) continue;
                r.fibers[t][a] = affine_precompose(g.at(t, a), B.at(t, a).finite_value(),
                                                   b.at(t, a).finite_value());
            }
        return r;
    };

    ConvexIntegrand lhs = projection_convex(space, reparam(h), mode);
    ConvexIntegrand rhs = reparam(projection_convex(space, h, mode));
    return {lhs, rhs};
}

} // namespace finproj
