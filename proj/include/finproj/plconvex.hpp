#ifndef FINPROJ_PLCONVEX_HPP
#define FINPROJ_PLCONVEX_HPP

#include <string>
#include <utility>
#include <vector>

#include "finproj/extreal.hpp"

namespace finproj {

/// Closed convex subset of the line: empty, or [lo, hi] with lo in
/// {-inf} u Q, hi in Q u {+inf}, lo <= hi.
class IntervalSet {
public:
    static IntervalSet empty() { return IntervalSet(); }
    static IntervalSet whole_line() { return IntervalSet(ExtReal::minus_inf(), ExtReal::plus_inf()); }
    static IntervalSet point(const Rational& x) { return IntervalSet(ExtReal(x), ExtReal(x)); }
    IntervalSet(ExtReal lo, ExtReal hi);

    bool is_empty() const { return empty_; }
    const ExtReal& lo() const;
    const ExtReal& hi() const;
    bool is_bounded() const { return !empty_ && lo_.is_finite() && hi_.is_finite(); }
    bool contains(const Rational& x) const;
    bool contains(const IntervalSet& other) const; // other subset of *this
    /// Point of minimal absolute value (ties broken toward the smaller value).
    Rational min_abs_point() const;

    friend bool operator==(const IntervalSet& a, const IntervalSet& b) {
        if (a.empty_ != b.empty_) return false;
        return a.empty_ || (a.lo_ == b.lo_ && a.hi_ == b.hi_);
    }

    std::string str() const;

private:
    IntervalSet() : empty_(true) {}
    bool empty_ = false;
    ExtReal lo_, hi_;
};

/// Proper lower-semicontinuous convex piecewise-linear function on the line,
/// or Empty (identically +inf). Canonical form: strictly increasing
/// breakpoints with finite values, interior slopes strictly increasing, no
/// collinear breakpoints, affine functions anchored at x = 0. A left slope of
/// -inf (right slope of +inf) is a vertical wall: the domain ends at the
/// extreme breakpoint. Values of -inf are not representable; operations that
/// would create them reject the input instead.
class PLConvex {
public:
    static PLConvex empty() { return PLConvex(); }
    /// Builds from raw data, validates convexity, and canonicalizes.
    static PLConvex from_breakpoints(std::vector<std::pair<Rational, Rational>> points,
                                     ExtReal left_slope, ExtReal right_slope);
    static PLConvex affine(const Rational& slope, const Rational& value_at_zero);
    static PLConvex constant(const Rational& c) { return affine(Rational(0), c); }
    static PLConvex abs_like(const Rational& center, const Rational& weight);

    bool is_empty() const { return empty_; }
    int breakpoint_count() const { return static_cast<int>(xs_.size()); }
    const std::vector<Rational>& xs() const { return xs_; }
    const std::vector<Rational>& vs() const { return vs_; }
    const ExtReal& left_slope() const { return left_; }
    const ExtReal& right_slope() const { return right_; }

    ExtReal eval(const Rational& x) const;
    IntervalSet domain() const;
    /// Exact minimum over a closed interval; +inf when the function is +inf there.
    ExtReal min_over(const IntervalSet& box) const;
    /// Breakpoints are exactly {(0, 0)}: the function is a support-type cone.
    bool is_positively_homogeneous() const;
    /// All slopes finite (function finite on the whole line).
    bool is_finite_everywhere() const;
    /// Largest |slope|; +inf when a vertical wall is present.
    ExtReal max_slope_magnitude() const;

    friend bool operator==(const PLConvex& a, const PLConvex& b) {
        if (a.empty_ != b.empty_) return false;
        return a.empty_ || (a.xs_ == b.xs_ && a.vs_ == b.vs_ && a.left_ == b.left_ &&
                            a.right_ == b.right_);
    }

    std::string str() const;

private:
    PLConvex() : empty_(true) {}
    void canonicalize();

    bool empty_ = false;
    std::vector<Rational> xs_, vs_;
    ExtReal left_, right_;
};

/// Exact Legendre-Fenchel transform; slopes and breakpoints swap roles.
/// Involutive: conjugate(conjugate(f)) == f. Throws PreconditionError on Empty.
PLConvex conjugate(const PLConvex& f);

/// Sum_i c_i f_i for positive coefficients, +inf dominant: the domain is the
/// intersection of domains; Empty when any input is Empty or domains miss.
PLConvex positive_combination(const std::vector<Rational>& coeffs,
                              const std::vector<PLConvex>& fs);

/// Convex combination (weights positive, summing to 1) realizing fiber-wise
/// expectation. Empty inputs or disjoint domains yield the flagged Empty.
PLConvex average(const std::vector<Rational>& weights, const std::vector<PLConvex>& fs);

/// Lipschitz regularization: inf-convolution of f + indicator(box) with nu|.|.
/// Exact: restrict to the bounded box, then clamp all slopes into [-nu, nu].
/// Returns Empty (flagged) when f is +inf on the whole box.
PLConvex pasch_hausdorff(const PLConvex& f, const Rational& nu, const IntervalSet& box);

/// Recession function: the cone of asymptotic slopes through the origin.
PLConvex recession(const PLConvex& f);

/// x -> f(B x + b), B nonzero.
PLConvex affine_precompose(const PLConvex& f, const Rational& B, const Rational& b);

/// delta_S: 0 on S, +inf off S.
PLConvex indicator(const IntervalSet& s);
/// Support function delta*_S = conjugate(indicator(S)); S must be nonempty.
PLConvex support(const IntervalSet& s);
/// Inverts `support` exactly; input must be positively homogeneous.
IntervalSet interval_of_support(const PLConvex& f);

/// Exact pointwise maximum (convex, PL).
PLConvex max2(const PLConvex& f, const PLConvex& g);
/// Exact pointwise f <= g on the whole line.
bool leq(const PLConvex& f, const PLConvex& g);
inline bool equals(const PLConvex& f, const PLConvex& g) { return f == g; }

} // namespace finproj

#endif
