#include "finproj/plconvex.hpp"

#include <algorithm>

#include "finproj/errors.hpp"

namespace finproj {

// --- IntervalSet ---

IntervalSet::IntervalSet(ExtReal lo, ExtReal hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_.is_plus_inf()) throw SchemaError("interval lower end cannot be +inf");
    if (hi_.is_minus_inf()) throw SchemaError("interval upper end cannot be -inf");
    if (hi_ < lo_) throw SchemaError("interval with lo > hi");
}

const ExtReal& IntervalSet::lo() const {
    if (empty_) throw StructuralError("lo() of empty interval");
    return lo_;
}

const ExtReal& IntervalSet::hi() const {
    if (empty_) throw StructuralError("hi() of empty interval");
    return hi_;
}

bool IntervalSet::contains(const Rational& x) const {
    return !empty_ && lo_ <= ExtReal(x) && ExtReal(x) <= hi_;
}

bool IntervalSet::contains(const IntervalSet& other) const {
    if (other.empty_) return true;
    return !empty_ && lo_ <= other.lo_ && other.hi_ <= hi_;
}

Rational IntervalSet::min_abs_point() const {
    if (empty_) throw StructuralError("min_abs_point of empty interval");
    ExtReal zero{Rational(0)};
    if (lo_ <= zero && zero <= hi_) return Rational(0);
    if (zero < lo_) return lo_.finite_value();
    return hi_.finite_value();
}

std::string IntervalSet::str() const {
    if (empty_) return "empty";
    return "[" + lo_.str() + ", " + hi_.str() + "]";
}

// --- PLConvex construction ---

namespace {

Rational segment_slope(const Rational& x0, const Rational& v0, const Rational& x1,
                       const Rational& v1) {
    return (v1 - v0) / (x1 - x0);
}

} // namespace

PLConvex PLConvex::from_breakpoints(std::vector<std::pair<Rational, Rational>> points,
                                    ExtReal left_slope, ExtReal right_slope) {
    if (points.empty()) throw SchemaError("PLConvex needs at least one breakpoint");
    if (left_slope.is_plus_inf()) throw SchemaError("left slope cannot be +inf");
    if (right_slope.is_minus_inf()) throw SchemaError("right slope cannot be -inf");
    std::sort(points.begin(), points.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (size_t i = 0; i + 1 < points.size(); ++i)
        if (points[i].first == points[i + 1].first)
            throw SchemaError("duplicate breakpoint x = " + points[i].first.str());

    // Slope chain left <= s_1 <= ... <= right is the convexity requirement;
    // equalities are collinear pieces removed by canonicalization.
    std::vector<ExtReal> chain;
    chain.push_back(left_slope);
    for (size_t i = 0; i + 1 < points.size(); ++i)
        chain.push_back(ExtReal(segment_slope(points[i].first, points[i].second,
                                              points[i + 1].first, points[i + 1].second)));
    chain.push_back(right_slope);
    for (size_t i = 0; i + 1 < chain.size(); ++i)
        if (chain[i + 1] < chain[i]) throw SchemaError("slopes violate convexity");

    PLConvex f;
    f.empty_ = false;
    for (auto& p : points) {
        f.xs_.push_back(std::move(p.first));
        f.vs_.push_back(std::move(p.second));
    }
    f.left_ = std::move(left_slope);
    f.right_ = std::move(right_slope);
    f.canonicalize();
    return f;
}

void PLConvex::canonicalize() {
    if (left_ == right_) {
        // Affine function; anchor at x = 0.
        Rational s = left_.finite_value();
        Rational v0 = vs_[0] - s * xs_[0];
        xs_ = {Rational(0)};
        vs_ = {v0};
        return;
    }
    int k = static_cast<int>(xs_.size());
    std::vector<ExtReal> in(k), out(k);
    for (int i = 0; i < k; ++i) {
        in[i] = i == 0 ? left_ : ExtReal(segment_slope(xs_[i - 1], vs_[i - 1], xs_[i], vs_[i]));
        out[i] = i == k - 1 ? right_
                            : ExtReal(segment_slope(xs_[i], vs_[i], xs_[i + 1], vs_[i + 1]));
    }
    std::vector<Rational> nx, nv;
    for (int i = 0; i < k; ++i)
        if (in[i] < out[i]) {
            nx.push_back(xs_[i]);
            nv.push_back(vs_[i]);
        }
    xs_ = std::move(nx);
    vs_ = std::move(nv);
}

PLConvex PLConvex::affine(const Rational& slope, const Rational& value_at_zero) {
    return from_breakpoints({{Rational(0), value_at_zero}}, ExtReal(slope), ExtReal(slope));
}

PLConvex PLConvex::abs_like(const Rational& center, const Rational& weight) {
    if (weight.sign() <= 0) throw SchemaError("abs_like needs a positive weight");
    return from_breakpoints({{center, Rational(0)}}, ExtReal(-weight), ExtReal(weight));
}

ExtReal PLConvex::eval(const Rational& x) const {
    if (empty_) return ExtReal::plus_inf();
    if (x < xs_.front()) {
        if (left_.is_minus_inf()) return ExtReal::plus_inf();
        return ExtReal(vs_.front() + left_.finite_value() * (x - xs_.front()));
    }
    if (x > xs_.back()) {
        if (right_.is_plus_inf()) return ExtReal::plus_inf();
        return ExtReal(vs_.back() + right_.finite_value() * (x - xs_.back()));
    }
    auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    size_t i = static_cast<size_t>(it - xs_.begin());
    if (i > 0 && xs_[i - 1] == x) return ExtReal(vs_[i - 1]);
    // strictly inside segment (i-1, i)
    Rational s = segment_slope(xs_[i - 1], vs_[i - 1], xs_[i], vs_[i]);
    return ExtReal(vs_[i - 1] + s * (x - xs_[i - 1]));
}

IntervalSet PLConvex::domain() const {
    if (empty_) return IntervalSet::empty();
    ExtReal lo = left_.is_minus_inf() ? ExtReal(xs_.front()) : ExtReal::minus_inf();
    ExtReal hi = right_.is_plus_inf() ? ExtReal(xs_.back()) : ExtReal::plus_inf();
    return IntervalSet(lo, hi);
}

ExtReal PLConvex::min_over(const IntervalSet& box) const {
    if (empty_ || box.is_empty()) return ExtReal::plus_inf();
    IntervalSet dom = domain();
    ExtReal lo = ext_max(box.lo(), dom.lo());
    ExtReal hi = ext_min(box.hi(), dom.hi());
    if (hi < lo) return ExtReal::plus_inf();
    ExtReal best = ExtReal::plus_inf();
    if (lo.is_minus_inf() && left_.is_finite() && left_.finite_value().sign() > 0)
        return ExtReal::minus_inf();
    if (hi.is_plus_inf() && right_.is_finite() && right_.finite_value().sign() < 0)
        return ExtReal::minus_inf();
    if (lo.is_finite()) best = ext_min(best, eval(lo.finite_value()));
    if (hi.is_finite()) best = ext_min(best, eval(hi.finite_value()));
    for (size_t i = 0; i < xs_.size(); ++i) {
        ExtReal x{xs_[i]};
        if (lo <= x && x <= hi) best = ext_min(best, ExtReal(vs_[i]));
    }
    return best;
}

bool PLConvex::is_positively_homogeneous() const {
    return !empty_ && xs_.size() == 1 && xs_[0].is_zero() && vs_[0].is_zero();
}

bool PLConvex::is_finite_everywhere() const {
    return !empty_ && left_.is_finite() && right_.is_finite();
}

ExtReal PLConvex::max_slope_magnitude() const {
    if (empty_) return ExtReal::plus_inf();
    if (left_.is_minus_inf() || right_.is_plus_inf()) return ExtReal::plus_inf();
    return ExtReal(rat_max(left_.finite_value().abs(), right_.finite_value().abs()));
}

std::string PLConvex::str() const {
    if (empty_) return "empty";
    std::string s;
    for (size_t i = 0; i < xs_.size(); ++i)
        s += "(" + xs_[i].str() + ", " + vs_[i].str() + ") ";
    s += "left=" + left_.str() + " right=" + right_.str();
    return s;
}

// --- conjugacy ---

PLConvex conjugate(const PLConvex& f) {
    if (f.is_empty())
        throw PreconditionError("conjugate of the improper (identically +inf) function");
    const auto& xs = f.xs();
    const auto& vs = f.vs();
    int k = f.breakpoint_count();

    // Finite slopes of f become breakpoints of f*; breakpoints become slopes.
    std::vector<std::pair<Rational, Rational>> pts;
    auto push = [&](const Rational& y, const Rational& value) {
        if (!pts.empty() && pts.back().first == y) return;
        pts.push_back({y, value});
    };
    if (f.left_slope().is_finite())
        push(f.left_slope().finite_value(), xs[0] * f.left_slope().finite_value() - vs[0]);
    for (int i = 1; i < k; ++i) {
        Rational s = (vs[i] - vs[i - 1]) / (xs[i] - xs[i - 1]);
        push(s, xs[i] * s - vs[i]);
    }
    if (f.right_slope().is_finite())
        push(f.right_slope().finite_value(),
             xs[k - 1] * f.right_slope().finite_value() - vs[k - 1]);

    if (pts.empty()) {
        // Point indicator delta_{x0} + v0: conjugate is the affine x0*y - v0.
        return PLConvex::affine(xs[0], -vs[0]);
    }
    ExtReal left = f.left_slope().is_minus_inf() ? ExtReal(xs[0]) : ExtReal::minus_inf();
    ExtReal right = f.right_slope().is_plus_inf() ? ExtReal(xs[k - 1]) : ExtReal::plus_inf();
    return PLConvex::from_breakpoints(std::move(pts), left, right);
}

// --- combinations ---

PLConvex positive_combination(const std::vector<Rational>& coeffs,
                              const std::vector<PLConvex>& fs) {
    if (coeffs.size() != fs.size() || fs.empty())
        throw StructuralError("positive_combination: coefficient/function count mismatch");
    for (const auto& c : coeffs)
        if (c.sign() <= 0) throw SchemaError("positive_combination needs positive coefficients");
    for (const auto& f : fs)
        if (f.is_empty()) return PLConvex::empty();

    ExtReal lo = ExtReal::minus_inf(), hi = ExtReal::plus_inf();
    for (const auto& f : fs) {
        IntervalSet d = f.domain();
        lo = ext_max(lo, d.lo());
        hi = ext_min(hi, d.hi());
    }
    if (hi < lo) return PLConvex::empty();

    auto value_at = [&](const Rational& x) {
        Rational acc(0);
        for (size_t i = 0; i < fs.size(); ++i)
            acc += coeffs[i] * fs[i].eval(x).finite_value();
        return acc;
    };

    if (lo == hi) {
        Rational x = lo.finite_value();
        return PLConvex::from_breakpoints({{x, value_at(x)}}, ExtReal::minus_inf(),
                                          ExtReal::plus_inf());
    }

    std::vector<Rational> cand;
    if (lo.is_finite()) cand.push_back(lo.finite_value());
    if (hi.is_finite()) cand.push_back(hi.finite_value());
    for (const auto& f : fs)
        for (const auto& x : f.xs())
            if (lo <= ExtReal(x) && ExtReal(x) <= hi) cand.push_back(x);
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

    std::vector<std::pair<Rational, Rational>> pts;
    for (const auto& x : cand) pts.push_back({x, value_at(x)});

    ExtReal left = ExtReal::minus_inf(), right = ExtReal::plus_inf();
    if (lo.is_minus_inf()) {
        Rational acc(0);
        for (size_t i = 0; i < fs.size(); ++i)
            acc += coeffs[i] * fs[i].left_slope().finite_value();
        left = ExtReal(acc);
    }
    if (hi.is_plus_inf()) {
        Rational acc(0);
        for (size_t i = 0; i < fs.size(); ++i)
            acc += coeffs[i] * fs[i].right_slope().finite_value();
        right = ExtReal(acc);
    }
    return PLConvex::from_breakpoints(std::move(pts), left, right);
}

PLConvex average(const std::vector<Rational>& weights, const std::vector<PLConvex>& fs) {
    Rational total(0);
    for (const auto& w : weights) total += w;
    if (total != Rational(1)) throw SchemaError("average weights must sum to 1");
    return positive_combination(weights, fs);
}

// --- Pasch-Hausdorff envelope ---

PLConvex pasch_hausdorff(const PLConvex& f, const Rational& nu, const IntervalSet& box) {
    if (nu.sign() <= 0) throw SchemaError("pasch_hausdorff needs nu > 0");
    if (box.is_empty() || !box.is_bounded())
        throw SchemaError("pasch_hausdorff needs a nonempty bounded box");
    PLConvex g = positive_combination({Rational(1), Rational(1)}, {f, indicator(box)});
    if (g.is_empty()) return PLConvex::empty();

    ExtReal nu_pos{nu}, nu_neg{-nu};
    int k = g.breakpoint_count();
    std::vector<std::pair<Rational, Rational>> kept;
    for (int i = 0; i < k; ++i) {
        ExtReal in = i == 0 ? g.left_slope()
                            : ExtReal((g.vs()[i] - g.vs()[i - 1]) / (g.xs()[i] - g.xs()[i - 1]));
        ExtReal out = i == k - 1
                          ? g.right_slope()
                          : ExtReal((g.vs()[i + 1] - g.vs()[i]) / (g.xs()[i + 1] - g.xs()[i]));
        // Kink survives clamping into [-nu, nu] iff in < nu and out > -nu.
        if (in < nu_pos && nu_neg < out) kept.push_back({g.xs()[i], g.vs()[i]});
    }
    return PLConvex::from_breakpoints(std::move(kept), nu_neg, nu_pos);
}

// --- recession, reparametrization, intervals ---

PLConvex recession(const PLConvex& f) {
    if (f.is_empty()) throw PreconditionError("recession of the improper function");
    return PLConvex::from_breakpoints({{Rational(0), Rational(0)}}, f.left_slope(),
                                      f.right_slope());
}

PLConvex affine_precompose(const PLConvex& f, const Rational& B, const Rational& b) {
    if (B.is_zero()) throw SchemaError("affine_precompose needs B != 0");
    if (f.is_empty()) return PLConvex::empty();
    std::vector<std::pair<Rational, Rational>> pts;
    for (int i = 0; i < f.breakpoint_count(); ++i)
        pts.push_back({(f.xs()[i] - b) / B, f.vs()[i]});
    ExtReal left, right;
    if (B.sign() > 0) {
        left = scale(B, f.left_slope());
        right = scale(B, f.right_slope());
    } else {
        left = scale(B, f.right_slope());
        right = scale(B, f.left_slope());
    }
    return PLConvex::from_breakpoints(std::move(pts), left, right);
}

PLConvex indicator(const IntervalSet& s) {
    if (s.is_empty()) return PLConvex::empty();
    const ExtReal& lo = s.lo();
    const ExtReal& hi = s.hi();
    Rational zero(0);
    if (lo.is_minus_inf() && hi.is_plus_inf()) return PLConvex::constant(zero);
    if (lo.is_minus_inf())
        return PLConvex::from_breakpoints({{hi.finite_value(), zero}}, ExtReal(zero),
                                          ExtReal::plus_inf());
    if (hi.is_plus_inf())
        return PLConvex::from_breakpoints({{lo.finite_value(), zero}}, ExtReal::minus_inf(),
                                          ExtReal(zero));
    if (lo == hi)
        return PLConvex::from_breakpoints({{lo.finite_value(), zero}}, ExtReal::minus_inf(),
                                          ExtReal::plus_inf());
    return PLConvex::from_breakpoints(
        {{lo.finite_value(), zero}, {hi.finite_value(), zero}}, ExtReal::minus_inf(),
        ExtReal::plus_inf());
}

PLConvex support(const IntervalSet& s) { return conjugate(indicator(s)); }

IntervalSet interval_of_support(const PLConvex& f) {
    if (f.is_empty()) throw PreconditionError("interval_of_support of the improper function");
    if (!f.is_positively_homogeneous())
        throw PreconditionError("interval_of_support needs a positively homogeneous input");
    return IntervalSet(f.left_slope(), f.right_slope());
}

// --- max, order ---

PLConvex max2(const PLConvex& f, const PLConvex& g) {
    if (f.is_empty() || g.is_empty()) return PLConvex::empty();
    IntervalSet df = f.domain(), dg = g.domain();
    ExtReal lo = ext_max(df.lo(), dg.lo());
    ExtReal hi = ext_min(df.hi(), dg.hi());
    if (hi < lo) return PLConvex::empty();

    auto maxval = [&](const Rational& x) {
        return rat_max(f.eval(x).finite_value(), g.eval(x).finite_value());
    };
    if (lo == hi) {
        Rational x = lo.finite_value();
        return PLConvex::from_breakpoints({{x, maxval(x)}}, ExtReal::minus_inf(),
                                          ExtReal::plus_inf());
    }

    std::vector<Rational> cand;
    if (lo.is_finite()) cand.push_back(lo.finite_value());
    if (hi.is_finite()) cand.push_back(hi.finite_value());
    for (const auto& x : f.xs())
        if (lo <= ExtReal(x) && ExtReal(x) <= hi) cand.push_back(x);
    for (const auto& x : g.xs())
        if (lo <= ExtReal(x) && ExtReal(x) <= hi) cand.push_back(x);
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

    std::vector<Rational> extra;
    auto diff_at = [&](const Rational& x) {
        return f.eval(x).finite_value() - g.eval(x).finite_value();
    };
    for (size_t i = 0; i + 1 < cand.size(); ++i) {
        Rational d0 = diff_at(cand[i]), d1 = diff_at(cand[i + 1]);
        if (d0.sign() * d1.sign() < 0) {
            // f and g cross inside the segment; both are affine there.
            Rational x = cand[i] + (cand[i + 1] - cand[i]) * d0 / (d0 - d1);
            extra.push_back(x);
        }
    }
    if (lo.is_minus_inf()) {
        Rational sf = f.left_slope().finite_value(), sg = g.left_slope().finite_value();
        if (sf != sg) {
            Rational d0 = diff_at(cand.front());
            Rational x = cand.front() - d0 / (sf - sg);
            if (x < cand.front()) extra.push_back(x);
        }
    }
    if (hi.is_plus_inf()) {
        Rational sf = f.right_slope().finite_value(), sg = g.right_slope().finite_value();
        if (sf != sg) {
            Rational d0 = diff_at(cand.back());
            Rational x = cand.back() - d0 / (sf - sg);
            if (x > cand.back()) extra.push_back(x);
        }
    }
    cand.insert(cand.end(), extra.begin(), extra.end());
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

    std::vector<std::pair<Rational, Rational>> pts;
    for (const auto& x : cand) pts.push_back({x, maxval(x)});
    ExtReal left = lo.is_finite()
                       ? ExtReal::minus_inf()
                       : ext_min(f.left_slope(), g.left_slope());
    ExtReal right = hi.is_finite()
                        ? ExtReal::plus_inf()
                        : ext_max(f.right_slope(), g.right_slope());
    return PLConvex::from_breakpoints(std::move(pts), left, right);
}

bool leq(const PLConvex& f, const PLConvex& g) {
    if (g.is_empty()) return true;
    if (f.is_empty()) return false; // f = +inf somewhere g is finite
    std::vector<Rational> cand;
    for (const auto& x : f.xs()) cand.push_back(x);
    for (const auto& x : g.xs()) cand.push_back(x);
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    for (const auto& x : cand)
        if (!(f.eval(x) <= g.eval(x))) return false;
    bool right_ok = g.right_slope().is_plus_inf() || f.right_slope() <= g.right_slope();
    bool left_ok = g.left_slope().is_minus_inf() || f.left_slope() >= g.left_slope();
    return right_ok && left_ok;
}

} // namespace finproj
