#include "finproj/oracle.hpp"

#include <algorithm>

#include "finproj/errors.hpp"

namespace finproj {
namespace oracle {

const std::vector<Rational>& default_directions() {
    static const std::vector<Rational> dirs = [] {
        std::vector<Rational> out;
        const std::pair<long long, long long> mags[] = {
            {1, 1}, {2, 1}, {1, 2}, {3, 1},  {1, 3}, {3, 2}, {2, 3}, {4, 1},
            {1, 4}, {5, 2}, {2, 5}, {5, 1},  {1, 5}, {8, 1}, {7, 3}, {9, 4}};
        for (const auto& [p, q] : mags) {
            out.push_back(Rational(p, q));
            out.push_back(Rational(-p, q));
        }
        return out;
    }();
    return dirs;
}

std::vector<Rational> covering_grid(const std::vector<const PLConvex*>& fibers) {
    std::vector<Rational> grid;
    for (long long i = -2; i <= 2; ++i) grid.push_back(Rational(i));
    for (const auto* f : fibers) {
        if (!f || f->is_empty()) continue;
        for (const auto& x : f->xs()) grid.push_back(x);
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

ExtReal brute_conjugate_single(const PLConvex& f, const Rational& y,
                               const std::vector<Rational>& xgrid) {
    if (xgrid.empty()) throw StructuralError("brute_conjugate: empty grid");
    bool any = false;
    Rational best(0);
    auto consider = [&](const Rational& x) {
        ExtReal v = f.eval(x);
        if (!v.is_finite()) return;
        Rational cand = x * y - v.finite_value();
        if (!any || best < cand) {
            best = cand;
            any = true;
        }
    };
    for (const auto& x : xgrid) consider(x);
    if (!any) return ExtReal::minus_inf(); // f is +inf on the whole grid
    Rational base = best;
    // Growth probe: one step beyond the grid span on each side. With the
    // breakpoints covered, a strict increase is equivalent to an unbounded sup.
    Rational span = xgrid.back() - xgrid.front() + Rational(1);
    consider(xgrid.front() - span);
    consider(xgrid.back() + span);
    if (base < best) return ExtReal::plus_inf();
    return ExtReal(base);
}

std::vector<ExtReal> brute_conjugate(const PLConvex& f, const std::vector<Rational>& directions,
                                     const std::vector<Rational>& xgrid) {
    std::vector<ExtReal> out;
    out.reserve(directions.size());
    for (const auto& y : directions) out.push_back(brute_conjugate_single(f, y, xgrid));
    return out;
}

IntervalProcess brute_set_projection(const FilteredSpace& space, const IntervalProcess& gamma,
                                     const std::vector<Rational>& selection_grid,
                                     ProjectionMode mode, long long cap) {
    gamma.validate(space);
    IntervalProcess out(gamma.times(), gamma.atoms());
    for (int t = 0; t < gamma.times(); ++t) {
        const Partition& p = mode_partition(space, t, mode);
        for (const auto& cell : p.cells()) {
            Rational mass = space.cell_prob(cell);
            IntervalSet value = IntervalSet::point(Rational(0));
            if (!mass.is_zero()) {
                std::vector<int> members;
                std::vector<std::vector<Rational>> choices;
                bool lo_unbounded = false, hi_unbounded = false;
                for (int a : cell) {
                    if (space.is_null(a)) continue;
                    const IntervalSet& fiber = gamma.at(t, a);
                    if (fiber.is_empty())
                        throw PreconditionError("brute_set_projection: empty fiber at t=" +
                                                std::to_string(t));
                    if (fiber.lo().is_minus_inf()) lo_unbounded = true;
                    if (fiber.hi().is_plus_inf()) hi_unbounded = true;
                    std::vector<Rational> pts;
                    if (fiber.lo().is_finite()) pts.push_back(fiber.lo().finite_value());
                    if (fiber.hi().is_finite()) pts.push_back(fiber.hi().finite_value());
                    for (const auto& g : selection_grid)
                        if (fiber.contains(g)) pts.push_back(g);
                    std::sort(pts.begin(), pts.end());
                    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
                    if (pts.empty())
                        throw PreconditionError(
                            "brute_set_projection: no finite candidate in an unbounded fiber; "
                            "extend the selection grid");
                    members.push_back(a);
                    choices.push_back(std::move(pts));
                }
                long long combos = 1;
                for (const auto& c : choices) {
                    combos *= static_cast<long long>(c.size());
                    if (combos > cap)
                        throw TooLargeError("selection enumeration exceeds cap");
                }
                Rational best_lo(0), best_hi(0);
                bool first = true;
                std::vector<size_t> idx(choices.size(), 0);
                for (long long n = 0; n < combos; ++n) {
                    Rational e(0);
                    for (size_t i = 0; i < members.size(); ++i)
                        e += (space.prob(members[i]) / mass) * choices[i][idx[i]];
                    if (first || e < best_lo) best_lo = e;
                    if (first || best_hi < e) best_hi = e;
                    first = false;
                    for (size_t i = 0; i < idx.size(); ++i) {
                        if (++idx[i] < choices[i].size()) break;
                        idx[i] = 0;
                    }
                }
                ExtReal lo = lo_unbounded ? ExtReal::minus_inf() : ExtReal(best_lo);
                ExtReal hi = hi_unbounded ? ExtReal::plus_inf() : ExtReal(best_hi);
                value = IntervalSet(lo, hi);
            }
            for (int a : cell) out.at(t, a) = value;
        }
    }
    return out;
}

std::vector<std::vector<std::vector<ExtReal>>> brute_epi_projection(
    const FilteredSpace& space, const ConvexIntegrand& h,
    const std::vector<Rational>& directions, const std::vector<Rational>& xgrid,
    ProjectionMode mode) {
    h.validate(space);
    std::vector<std::vector<std::vector<ExtReal>>> out(h.times());
    PLConvex zero = PLConvex::constant(Rational(0));
    for (int t = 0; t < h.times(); ++t) {
        const Partition& p = mode_partition(space, t, mode);
        out[t].assign(p.cell_count(), std::vector<ExtReal>(directions.size(), ExtReal(Rational(0))));
        for (int c = 0; c < p.cell_count(); ++c) {
            const auto& cell = p.cell(c);
            Rational mass = space.cell_prob(cell);
            for (size_t d = 0; d < directions.size(); ++d) {
                ExtReal acc{Rational(0)};
                if (mass.is_zero()) {
                    // Null cells carry the zero fiber by the projection convention.
                    acc = brute_conjugate_single(zero, directions[d], xgrid);
                } else {
                    for (int a : cell) {
                        if (space.is_null(a)) continue;
                        ExtReal s = brute_conjugate_single(h.at(t, a), directions[d], xgrid);
                        acc = add(acc, scale(space.prob(a) / mass, s));
                    }
                }
                out[t][c][d] = acc;
            }
        }
    }
    return out;
}

namespace {

template <typename H>
std::vector<Rational> candidate_values(const H& h);

template <>
std::vector<Rational> candidate_values(const GridIntegrand& h) {
    return h.xgrid;
}

template <>
std::vector<Rational> candidate_values(const ConvexIntegrand& h) {
    std::vector<const PLConvex*> fibers;
    for (const auto& slice : h.fibers)
        for (const auto& f : slice) fibers.push_back(&f);
    std::vector<Rational> grid = covering_grid(fibers);
    if (grid.size() > 9) {
        // Keep the enumeration tractable: breakpoints win over filler ints.
        std::vector<Rational> trimmed;
        for (const auto& x : grid)
            if (!(x < Rational(-1)) && !(Rational(1) < x)) trimmed.push_back(x);
        if (!trimmed.empty()) return trimmed;
    }
    return grid;
}

template <typename H>
bool brute_defn_impl(const FilteredSpace& space, const H& h, const H& candidate,
                     ProjectionMode mode, long long cap) {
    if (!is_integrand_adapted(space, candidate, mode)) return false;
    std::vector<Rational> values = candidate_values(h);
    if (values.empty()) throw StructuralError("brute_projection_defn: no candidate values");

    // One slot per (time, cell of the mode partition).
    std::vector<std::pair<int, int>> slots;
    for (int t = 0; t <= space.horizon(); ++t)
        for (int c = 0; c < mode_partition(space, t, mode).cell_count(); ++c)
            slots.push_back({t, c});
    long long combos = 1;
    for (size_t i = 0; i < slots.size(); ++i) {
        combos *= static_cast<long long>(values.size());
        if (combos > cap) throw TooLargeError("test-process enumeration exceeds cap");
    }

    std::vector<size_t> idx(slots.size(), 0);
    for (long long n = 0; n < combos; ++n) {
        ScalarProcess w(space.horizon() + 1, space.atom_count());
        for (size_t i = 0; i < slots.size(); ++i) {
            auto [t, c] = slots[i];
            for (int a : mode_partition(space, t, mode).cell(c))
                w.at(t, a) = ExtReal(values[idx[i]]);
        }
        if (is_projectable(space, h, w, mode)) {
            ScalarProcess hw = evaluate_along(space, h, w);
            ScalarProcess cw = evaluate_along(space, candidate, w);
            if (!verify_projection_property(space, hw, cw, mode, cap)) return false;
        }
        for (size_t i = 0; i < idx.size(); ++i) {
            if (++idx[i] < values.size()) break;
            idx[i] = 0;
        }
    }
    return true;
}

} // namespace

bool brute_projection_defn(const FilteredSpace& space, const GridIntegrand& h,
                           const GridIntegrand& candidate, ProjectionMode mode, long long cap) {
    return brute_defn_impl(space, h, candidate, mode, cap);
}

bool brute_projection_defn(const FilteredSpace& space, const ConvexIntegrand& h,
                           const ConvexIntegrand& candidate, ProjectionMode mode, long long cap) {
    return brute_defn_impl(space, h, candidate, mode, cap);
}

} // namespace oracle
} // namespace finproj
