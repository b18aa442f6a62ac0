#include "finproj/filtration.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "finproj/errors.hpp"

namespace finproj {

Partition Partition::from_cells(int atom_count, std::vector<std::vector<int>> cells) {
    std::vector<int> seen(atom_count, 0);
    for (auto& c : cells) {
        if (c.empty()) throw StructuralError("partition with an empty cell");
        std::sort(c.begin(), c.end());
        for (int a : c) {
            if (a < 0 || a >= atom_count) throw StructuralError("partition cell references unknown atom");
            if (seen[a]++) throw StructuralError("partition cells overlap");
        }
    }
    for (int a = 0; a < atom_count; ++a)
        if (!seen[a]) throw StructuralError("partition does not cover all atoms");
    std::sort(cells.begin(), cells.end(),
              [](const auto& x, const auto& y) { return x.front() < y.front(); });
    Partition p;
    p.cells_ = std::move(cells);
    p.cell_of_.assign(atom_count, -1);
    for (int c = 0; c < p.cell_count(); ++c)
        for (int a : p.cells_[c]) p.cell_of_[a] = c;
    return p;
}

bool Partition::refines(const Partition& coarser) const {
    if (atom_count() != coarser.atom_count()) return false;
    for (const auto& c : cells_) {
        int target = coarser.cell_index_of(c.front());
        for (int a : c)
            if (coarser.cell_index_of(a) != target) return false;
    }
    return true;
}

FilteredSpace FilteredSpace::create(std::vector<std::string> atoms, std::vector<Rational> prob,
                                    int horizon,
                                    std::vector<std::vector<std::vector<int>>> partition_cells) {
    FilteredSpace s;
    if (atoms.empty()) throw SchemaError("space needs at least one atom");
    if (prob.size() != atoms.size()) throw SchemaError("prob size differs from atom count");
    if (horizon < 0) throw SchemaError("negative horizon");
    if (partition_cells.size() != static_cast<size_t>(horizon) + 1)
        throw SchemaError("need exactly horizon+1 partitions");
    {
        std::set<std::string> uniq(atoms.begin(), atoms.end());
        if (uniq.size() != atoms.size()) throw SchemaError("duplicate atom ids");
    }
    Rational total(0);
    for (const auto& p : prob) {
        if (p.sign() < 0) throw SchemaError("negative probability");
        total += p;
    }
    if (total != Rational(1)) throw SchemaError("probabilities must sum to 1, got " + total.str());

    s.atoms_ = std::move(atoms);
    s.prob_ = std::move(prob);
    s.horizon_ = horizon;
    for (auto& cells : partition_cells)
        s.partitions_.push_back(Partition::from_cells(s.atom_count(), std::move(cells)));
    for (int t = 0; t + 1 <= horizon; ++t)
        if (!s.partitions_[t + 1].refines(s.partitions_[t]))
            throw SchemaError("partition at time " + std::to_string(t + 1) +
                              " does not refine the one at " + std::to_string(t));
    for (int a = 0; a < s.atom_count(); ++a)
        if (s.is_null(a)) {
            int c = s.partitions_[0].cell_index_of(a);
            if (s.partitions_[0].cell(c).size() != 1)
                throw SchemaError("null atom '" + s.atoms_[a] +
                                  "' must be a singleton cell at time 0");
        }
    return s;
}

Rational FilteredSpace::cell_prob(const std::vector<int>& cell) const {
    Rational p(0);
    for (int a : cell) p += prob_[a];
    return p;
}

bool StoppingTime::is_bounded(const FilteredSpace& space) const {
    for (int a = 0; a < space.atom_count(); ++a)
        if (!space.is_null(a) && value[a] == kInf) return false;
    return true;
}

ExtReal expectation(const FilteredSpace& space, const std::vector<ExtReal>& phi) {
    if (phi.size() != static_cast<size_t>(space.atom_count()))
        throw StructuralError("expectation: value vector size differs from atom count");
    bool has_minus = false;
    Rational acc(0);
    for (int a = 0; a < space.atom_count(); ++a) {
        if (space.is_null(a)) continue;
        const ExtReal& v = phi[a];
        if (v.is_plus_inf()) return ExtReal::plus_inf();
        if (v.is_minus_inf()) has_minus = true;
        else acc += space.prob(a) * v.finite_value();
    }
    if (has_minus) return ExtReal::minus_inf();
    return ExtReal(acc);
}

std::vector<ExtReal> cond_exp(const FilteredSpace& space, const Partition& partition,
                              const std::vector<ExtReal>& phi) {
    if (partition.atom_count() != space.atom_count())
        throw StructuralError("cond_exp: partition does not match the space");
    if (phi.size() != static_cast<size_t>(space.atom_count()))
        throw StructuralError("cond_exp: value vector size differs from atom count");
    std::vector<ExtReal> out(space.atom_count(), ExtReal(Rational(0)));
    for (const auto& cell : partition.cells()) {
        Rational mass = space.cell_prob(cell);
        ExtReal value{Rational(0)};
        if (!mass.is_zero()) {
            bool plus = false, minus = false;
            Rational acc(0);
            for (int a : cell) {
                if (space.is_null(a)) continue;
                const ExtReal& v = phi[a];
                if (v.is_plus_inf()) { plus = true; break; }
                if (v.is_minus_inf()) minus = true;
                else acc += space.prob(a) * v.finite_value();
            }
            if (plus) value = ExtReal::plus_inf();
            else if (minus) value = ExtReal::minus_inf();
            else value = ExtReal(acc / mass);
        }
        for (int a : cell) out[a] = value;
    }
    return out;
}

ScalarProcess projection_process(const FilteredSpace& space, const ScalarProcess& w,
                                 ProjectionMode mode) {
    if (w.times() != space.horizon() + 1 || w.atoms() != space.atom_count())
        throw StructuralError("process dimensions do not match the space");
    ScalarProcess out(w.times(), w.atoms());
    for (int t = 0; t <= space.horizon(); ++t)
        out.values[t] = cond_exp(space, mode_partition(space, t, mode), w.values[t]);
    return out;
}

ScalarProcess optional_projection_process(const FilteredSpace& space, const ScalarProcess& w) {
    return projection_process(space, w, ProjectionMode::Optional);
}

ScalarProcess predictable_projection_process(const FilteredSpace& space, const ScalarProcess& w) {
    return projection_process(space, w, ProjectionMode::Predictable);
}

bool is_stopping_time(const FilteredSpace& space, const StoppingTime& tau) {
    if (tau.value.size() != static_cast<size_t>(space.atom_count())) return false;
    for (int a = 0; a < space.atom_count(); ++a) {
        int v = tau.value[a];
        if (v != StoppingTime::kInf && (v < 0 || v > space.horizon())) return false;
    }
    for (int t = 0; t <= space.horizon(); ++t) {
        std::vector<bool> leq(space.atom_count());
        for (int a = 0; a < space.atom_count(); ++a) leq[a] = tau.value[a] <= t;
        if (!is_adapted_slice(space, t, leq)) return false;
    }
    return true;
}

bool is_predictable_time(const FilteredSpace& space, const StoppingTime& tau) {
    if (!is_stopping_time(space, tau)) return false;
    for (int t = 0; t <= space.horizon(); ++t) {
        const Partition& p = space.predictable_partition_at(t);
        for (const auto& cell : p.cells()) {
            bool first = tau.value[cell.front()] == t;
            for (int a : cell)
                if ((tau.value[a] == t) != first) return false;
        }
    }
    return true;
}

namespace {

void enumerate_rec(const FilteredSpace& space, bool predictable_only, long long cap, int t,
                   std::vector<int>& assignment, const std::vector<bool>& alive,
                   std::vector<StoppingTime>& out) {
    if (t > space.horizon()) {
        std::vector<int> v = assignment;
        for (int a = 0; a < space.atom_count(); ++a)
            if (alive[a]) v[a] = StoppingTime::kInf;
        if (static_cast<long long>(out.size()) >= cap)
            throw TooLargeError("stopping-time enumeration exceeds cap");
        out.push_back(StoppingTime(std::move(v)));
        return;
    }
    const Partition& p = predictable_only ? space.predictable_partition_at(t)
                                          : space.partition_at(t);
    // Alive cells at this time; each may independently stop now or continue.
    std::vector<int> live_cells;
    for (int c = 0; c < p.cell_count(); ++c)
        if (alive[p.cell(c).front()]) live_cells.push_back(c);
    size_t n = live_cells.size();
    if (n > 30) throw TooLargeError("too many cells per time for enumeration");
    for (size_t mask = 0; mask < (size_t{1} << n); ++mask) {
        std::vector<bool> next_alive = alive;
        for (size_t i = 0; i < n; ++i)
            if (mask & (size_t{1} << i))
                for (int a : p.cell(live_cells[i])) {
                    assignment[a] = t;
                    next_alive[a] = false;
                }
        enumerate_rec(space, predictable_only, cap, t + 1, assignment, next_alive, out);
        for (size_t i = 0; i < n; ++i)
            if (mask & (size_t{1} << i))
                for (int a : p.cell(live_cells[i])) assignment[a] = -1;
    }
}

} // namespace

std::vector<StoppingTime> enumerate_stopping_times(const FilteredSpace& space,
                                                   bool predictable_only, long long cap) {
    std::vector<StoppingTime> out;
    std::vector<int> assignment(space.atom_count(), -1);
    std::vector<bool> alive(space.atom_count(), true);
    enumerate_rec(space, predictable_only, cap, 0, assignment, alive, out);
    return out;
}

Partition sigma_at(const FilteredSpace& space, const StoppingTime& tau) {
    if (!is_stopping_time(space, tau))
        throw PreconditionError("sigma_at: input is not a stopping time");
    // Cell of an atom: {tau = t} refined by the partition at t; on {tau = inf}
    // the finest partition (the one at T).
    std::map<std::pair<int, int>, std::vector<int>> groups;
    for (int a = 0; a < space.atom_count(); ++a) {
        int t = tau.value[a];
        int pt = t == StoppingTime::kInf ? space.horizon() : t;
        groups[{t, space.partition_at(pt).cell_index_of(a)}].push_back(a);
    }
    std::vector<std::vector<int>> cells;
    for (auto& [k, v] : groups) cells.push_back(std::move(v));
    return Partition::from_cells(space.atom_count(), std::move(cells));
}

Partition sigma_before(const FilteredSpace& space, const StoppingTime& tau) {
    if (!is_stopping_time(space, tau))
        throw PreconditionError("sigma_before: input is not a stopping time");
    // Generated by F_0 together with the sets C n {t < tau}, C a cell at t.
    // Refine iteratively: signature of an atom under all generators.
    std::map<std::vector<int>, std::vector<int>> groups;
    for (int a = 0; a < space.atom_count(); ++a) {
        std::vector<int> sig;
        sig.push_back(space.partition_at(0).cell_index_of(a));
        for (int t = 0; t <= space.horizon(); ++t) {
            bool strictly_before = t < tau.value[a];
            sig.push_back(strictly_before ? space.partition_at(t).cell_index_of(a) : -1);
        }
        groups[std::move(sig)].push_back(a);
    }
    std::vector<std::vector<int>> cells;
    for (auto& [k, v] : groups) cells.push_back(std::move(v));
    return Partition::from_cells(space.atom_count(), std::move(cells));
}

std::vector<ExtReal> sample_at(const ScalarProcess& w, const StoppingTime& tau,
                               const ExtReal& fill) {
    std::vector<ExtReal> out(w.atoms(), fill);
    for (int a = 0; a < w.atoms(); ++a)
        if (tau.value[a] != StoppingTime::kInf) out[a] = w.at(tau.value[a], a);
    return out;
}

namespace {

/// E[1_F 1_{tau<inf} phi_tau] with the convention.
ExtReal restricted_expectation(const FilteredSpace& space, const ScalarProcess& phi,
                               const StoppingTime& tau, const std::vector<int>& cell) {
    bool has_minus = false;
    Rational acc(0);
    for (int a : cell) {
        if (space.is_null(a) || tau.value[a] == StoppingTime::kInf) continue;
        const ExtReal& v = phi.at(tau.value[a], a);
        if (v.is_plus_inf()) return ExtReal::plus_inf();
        if (v.is_minus_inf()) has_minus = true;
        else acc += space.prob(a) * v.finite_value();
    }
    return has_minus ? ExtReal::minus_inf() : ExtReal(acc);
}

} // namespace

bool verify_projection_property(const FilteredSpace& space, const ScalarProcess& w,
                                const ScalarProcess& candidate, ProjectionMode mode,
                                long long cap) {
    bool predictable = mode == ProjectionMode::Predictable;
    for (const auto& tau : enumerate_stopping_times(space, predictable, cap)) {
        Partition sigma = predictable ? sigma_before(space, tau) : sigma_at(space, tau);
        for (const auto& cell : sigma.cells()) {
            if (restricted_expectation(space, candidate, tau, cell) !=
                restricted_expectation(space, w, tau, cell))
                return false;
        }
    }
    return true;
}

bool is_evanescent(const FilteredSpace& space, const EventSet& e) {
    for (int t = 0; t < e.times(); ++t)
        for (int a = 0; a < e.atoms(); ++a)
            if (e.contains(t, a) && !space.is_null(a)) return false;
    return true;
}

bool is_adapted_slice(const FilteredSpace& space, int t, const std::vector<bool>& slice) {
    const Partition& p = space.partition_at(t);
    for (const auto& cell : p.cells()) {
        bool first = slice[cell.front()];
        for (int a : cell)
            if (slice[a] != first) return false;
    }
    return true;
}

bool is_adapted(const FilteredSpace& space, const EventSet& a) {
    if (a.times() != space.horizon() + 1 || a.atoms() != space.atom_count()) return false;
    for (int t = 0; t <= space.horizon(); ++t)
        if (!is_adapted_slice(space, t, a.member[t])) return false;
    return true;
}

bool is_adapted(const FilteredSpace& space, const ScalarProcess& w, ProjectionMode mode) {
    if (w.times() != space.horizon() + 1 || w.atoms() != space.atom_count()) return false;
    for (int t = 0; t <= space.horizon(); ++t) {
        const Partition& p = mode_partition(space, t, mode);
        for (const auto& cell : p.cells()) {
            const ExtReal& first = w.at(t, cell.front());
            for (int a : cell)
                if (w.at(t, a) != first) return false;
        }
    }
    return true;
}

StoppingTime debut(const FilteredSpace& space, const EventSet& a) {
    if (a.times() != space.horizon() + 1 || a.atoms() != space.atom_count())
        throw StructuralError("debut: event set dimensions do not match the space");
    if (!is_adapted(space, a)) throw StructuralError("debut: event set is not adapted");
    std::vector<int> v(space.atom_count(), StoppingTime::kInf);
    for (int atom = 0; atom < space.atom_count(); ++atom)
        for (int t = 0; t <= space.horizon(); ++t)
            if (a.contains(t, atom)) { v[atom] = t; break; }
    return StoppingTime(std::move(v));
}

bool indistinguishable(const FilteredSpace& space, const ScalarProcess& x,
                       const ScalarProcess& y) {
    if (x.times() != y.times() || x.atoms() != y.atoms()) return false;
    for (int t = 0; t < x.times(); ++t)
        for (int a = 0; a < x.atoms(); ++a)
            if (!space.is_null(a) && x.at(t, a) != y.at(t, a)) return false;
    return true;
}

} // namespace finproj
