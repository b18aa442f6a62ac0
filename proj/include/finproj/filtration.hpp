#ifndef FINPROJ_FILTRATION_HPP
#define FINPROJ_FILTRATION_HPP

#include <limits>
#include <string>
#include <vector>

#include "finproj/extreal.hpp"

namespace finproj {

/// A partition of the atom set {0, ..., n-1} in canonical form: each cell
/// sorted ascending, cells ordered by their first atom.
class Partition {
public:
    static Partition from_cells(int atom_count, std::vector<std::vector<int>> cells);

    int atom_count() const { return static_cast<int>(cell_of_.size()); }
    int cell_count() const { return static_cast<int>(cells_.size()); }
    const std::vector<std::vector<int>>& cells() const { return cells_; }
    const std::vector<int>& cell(int c) const { return cells_[c]; }
    int cell_index_of(int atom) const { return cell_of_[atom]; }

    /// True if every cell of *this is contained in a cell of coarser.
    bool refines(const Partition& coarser) const;

    friend bool operator==(const Partition& a, const Partition& b) {
        return a.cells_ == b.cells_;
    }

private:
    std::vector<std::vector<int>> cells_;
    std::vector<int> cell_of_;
};

/// Finite filtered probability space: atoms with exact probabilities, a time
/// grid {0, ..., T}, and one partition per time, refining as t grows. Every
/// null atom is a singleton cell at time 0 (so F_0 carries all null sets).
class FilteredSpace {
public:
    static FilteredSpace create(std::vector<std::string> atoms,
                                std::vector<Rational> prob,
                                int horizon,
                                std::vector<std::vector<std::vector<int>>> partition_cells);

    int atom_count() const { return static_cast<int>(atoms_.size()); }
    int horizon() const { return horizon_; }
    const std::vector<std::string>& atoms() const { return atoms_; }
    const std::string& atom_name(int a) const { return atoms_[a]; }
    const Rational& prob(int a) const { return prob_[a]; }
    bool is_null(int a) const { return prob_[a].is_zero(); }

    const Partition& partition_at(int t) const { return partitions_[t]; }
    /// Discrete-time F_{t-}: the partition at t-1 for t >= 1, at 0 for t = 0.
    const Partition& predictable_partition_at(int t) const {
        return partitions_[t >= 1 ? t - 1 : 0];
    }
    const std::vector<Partition>& partitions() const { return partitions_; }

    Rational cell_prob(const std::vector<int>& cell) const;

private:
    std::vector<std::string> atoms_;
    std::vector<Rational> prob_;
    int horizon_ = 0;
    std::vector<Partition> partitions_;
};

enum class ProjectionMode { Optional, Predictable };

inline const Partition& mode_partition(const FilteredSpace& space, int t, ProjectionMode mode) {
    return mode == ProjectionMode::Optional ? space.partition_at(t)
                                            : space.predictable_partition_at(t);
}

/// Extended-real process: one value per (time, atom), times 0..T.
struct ScalarProcess {
    std::vector<std::vector<ExtReal>> values; // [t][atom]

    ScalarProcess() = default;
    ScalarProcess(int times, int atoms, const ExtReal& fill = ExtReal(Rational(0)))
        : values(times, std::vector<ExtReal>(atoms, fill)) {}

    int times() const { return static_cast<int>(values.size()); }
    int atoms() const { return values.empty() ? 0 : static_cast<int>(values[0].size()); }
    const ExtReal& at(int t, int a) const { return values[t][a]; }
    ExtReal& at(int t, int a) { return values[t][a]; }

    friend bool operator==(const ScalarProcess& x, const ScalarProcess& y) {
        return x.values == y.values;
    }
};

/// Random time with values in {0, ..., T} or kInf.
struct StoppingTime {
    static constexpr int kInf = std::numeric_limits<int>::max();
    std::vector<int> value; // per atom

    StoppingTime() = default;
    explicit StoppingTime(std::vector<int> v) : value(std::move(v)) {}
    static StoppingTime constant(int atoms, int t) { return StoppingTime(std::vector<int>(atoms, t)); }

    int at(int a) const { return value[a]; }
    bool finite_at(int a) const { return value[a] != kInf; }
    /// Finite off the given null mask (bounded stopping time on a finite grid).
    bool is_bounded(const FilteredSpace& space) const;

    friend bool operator==(const StoppingTime& a, const StoppingTime& b) { return a.value == b.value; }
};

/// Subset of {0..T} x atoms.
struct EventSet {
    std::vector<std::vector<bool>> member; // [t][atom]

    EventSet() = default;
    EventSet(int times, int atoms) : member(times, std::vector<bool>(atoms, false)) {}

    int times() const { return static_cast<int>(member.size()); }
    int atoms() const { return member.empty() ? 0 : static_cast<int>(member[0].size()); }
    bool contains(int t, int a) const { return member[t][a]; }
    void insert(int t, int a) { member[t][a] = true; }
};

// --- expectation and conditional expectation, +inf-dominant convention ---

/// E[phi] over the whole space: +inf if any positive-probability atom carries
/// +inf; else -inf if any carries -inf; else the exact weighted sum.
ExtReal expectation(const FilteredSpace& space, const std::vector<ExtReal>& phi);

/// Conditional expectation per atom: constant on each cell of the partition;
/// Finite(0) on null cells.
std::vector<ExtReal> cond_exp(const FilteredSpace& space, const Partition& partition,
                              const std::vector<ExtReal>& phi);

// --- projections of scalar processes ---

ScalarProcess optional_projection_process(const FilteredSpace& space, const ScalarProcess& w);
ScalarProcess predictable_projection_process(const FilteredSpace& space, const ScalarProcess& w);
ScalarProcess projection_process(const FilteredSpace& space, const ScalarProcess& w,
                                 ProjectionMode mode);

// --- stopping times ---

bool is_stopping_time(const FilteredSpace& space, const StoppingTime& tau);
bool is_predictable_time(const FilteredSpace& space, const StoppingTime& tau);

/// Exhaustive list of all (predictable) stopping times with values in
/// {0..T, inf}. Throws TooLargeError when the count would exceed cap.
std::vector<StoppingTime> enumerate_stopping_times(const FilteredSpace& space,
                                                   bool predictable_only,
                                                   long long cap = 100000);

/// Partition realizing F_tau on the finite space.
Partition sigma_at(const FilteredSpace& space, const StoppingTime& tau);
/// Partition realizing F_{tau-} (generated by F_0 and the sets C n {t < tau}).
Partition sigma_before(const FilteredSpace& space, const StoppingTime& tau);

/// Per-atom w_{tau(w)}(w) on {tau < inf}; `fill` elsewhere.
std::vector<ExtReal> sample_at(const ScalarProcess& w, const StoppingTime& tau,
                               const ExtReal& fill = ExtReal(Rational(0)));

/// Defining property of the projection, checked against every enumerated
/// (predictable) stopping time and every cell of the sigma-algebra at it.
bool verify_projection_property(const FilteredSpace& space, const ScalarProcess& w,
                                const ScalarProcess& candidate, ProjectionMode mode,
                                long long cap = 100000);

bool is_evanescent(const FilteredSpace& space, const EventSet& e);

/// First entry time of an adapted set; throws StructuralError when the set
/// is not adapted (slice at t not a union of cells at t).
StoppingTime debut(const FilteredSpace& space, const EventSet& a);

// --- adaptedness and indistinguishability helpers ---

bool is_adapted_slice(const FilteredSpace& space, int t, const std::vector<bool>& slice);
bool is_adapted(const FilteredSpace& space, const EventSet& a);
bool is_adapted(const FilteredSpace& space, const ScalarProcess& w,
                ProjectionMode mode = ProjectionMode::Optional);

/// Equality off null atoms ("outside an evanescent set").
bool indistinguishable(const FilteredSpace& space, const ScalarProcess& a,
                       const ScalarProcess& b);

} // namespace finproj

#endif
