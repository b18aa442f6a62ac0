#ifndef FINPROJ_EXTREAL_HPP
#define FINPROJ_EXTREAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <string>
#include <vector>

#include "finproj/errors.hpp"

namespace finproj {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

/// Exact rational number in canonical reduced form (denominator > 0,
/// gcd(|num|, den) = 1). All core numerics run on this type; no floating
/// point appears anywhere in exact computations.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long long n) : v_(n) {}  // NOLINT: implicit by design
    Rational(long long num, long long den) : Rational(BigInt(num), BigInt(den)) {}
    Rational(BigInt num, BigInt den) {
        if (den == 0) throw SchemaError("rational with zero denominator");
        if (den < 0) { num = -num; den = -den; }
        v_ = BigRat(num, den);
    }
    explicit Rational(BigRat v) : v_(std::move(v)) {}

    BigInt numerator() const { return boost::multiprecision::numerator(v_); }
    BigInt denominator() const { return boost::multiprecision::denominator(v_); }
    const BigRat& raw() const { return v_; }

    bool is_zero() const { return v_ == 0; }
    bool is_integer() const { return denominator() == 1; }
    int sign() const { return v_ == 0 ? 0 : (v_ < 0 ? -1 : 1); }
    Rational abs() const { return v_ < 0 ? Rational(BigRat(-v_)) : *this; }

    friend Rational operator+(const Rational& a, const Rational& b) { return Rational(BigRat(a.v_ + b.v_)); }
    friend Rational operator-(const Rational& a, const Rational& b) { return Rational(BigRat(a.v_ - b.v_)); }
    friend Rational operator*(const Rational& a, const Rational& b) { return Rational(BigRat(a.v_ * b.v_)); }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw SchemaError("rational division by zero");
        return Rational(BigRat(a.v_ / b.v_));
    }
    Rational operator-() const { return Rational(BigRat(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    /// Canonical form "p/q", with "/q" omitted when q = 1.
    std::string str() const;
    /// Parses "p" or "p/q"; q must be nonzero. Result is canonical.
    static Rational parse(const std::string& s);

private:
    BigRat v_;
};

inline const Rational& rat_min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& rat_max(const Rational& a, const Rational& b) { return a < b ? b : a; }

/// Extended real: a finite rational, +inf, or -inf. Sums follow the
/// +inf-dominant convention: any term equal to +inf makes the sum +inf.
class ExtReal {
public:
    enum class Kind { MinusInf = 0, Finite = 1, PlusInf = 2 };

    ExtReal() : kind_(Kind::Finite), v_() {}
    ExtReal(Rational v) : kind_(Kind::Finite), v_(std::move(v)) {}  // NOLINT
    ExtReal(long long v) : kind_(Kind::Finite), v_(v) {}            // NOLINT
    static ExtReal plus_inf() { return ExtReal(Kind::PlusInf); }
    static ExtReal minus_inf() { return ExtReal(Kind::MinusInf); }

    Kind kind() const { return kind_; }
    bool is_finite() const { return kind_ == Kind::Finite; }
    bool is_plus_inf() const { return kind_ == Kind::PlusInf; }
    bool is_minus_inf() const { return kind_ == Kind::MinusInf; }
    bool is_infinite() const { return kind_ != Kind::Finite; }

    const Rational& finite_value() const {
        if (!is_finite()) throw StructuralError("finite_value() on infinite ExtReal");
        return v_;
    }

    friend bool operator==(const ExtReal& a, const ExtReal& b) {
        return a.kind_ == b.kind_ && (a.kind_ != Kind::Finite || a.v_ == b.v_);
    }
    friend bool operator!=(const ExtReal& a, const ExtReal& b) { return !(a == b); }
    /// Total order -inf < finite < +inf.
    friend bool operator<(const ExtReal& a, const ExtReal& b) {
        if (a.kind_ != b.kind_) return static_cast<int>(a.kind_) < static_cast<int>(b.kind_);
        return a.kind_ == Kind::Finite && a.v_ < b.v_;
    }
    friend bool operator<=(const ExtReal& a, const ExtReal& b) { return a < b || a == b; }
    friend bool operator>(const ExtReal& a, const ExtReal& b) { return b < a; }
    friend bool operator>=(const ExtReal& a, const ExtReal& b) { return b <= a; }

    std::string str() const;
    /// Parses "p/q", "+inf", "-inf" (also accepts "inf" for +inf).
    static ExtReal parse(const std::string& s);

private:
    explicit ExtReal(Kind k) : kind_(k), v_() {}
    Kind kind_;
    Rational v_;
};

/// Sum with the +inf-dominant convention: +inf wins over -inf.
ExtReal add(const ExtReal& a, const ExtReal& b);
/// Scalar multiple with 0 * (+-inf) = 0; negative factors flip infinities.
ExtReal scale(const Rational& c, const ExtReal& a);
inline ExtReal negate(const ExtReal& a) { return scale(Rational(-1), a); }
ExtReal pos_part(const ExtReal& a);
ExtReal neg_part(const ExtReal& a);
/// Fold of add over a list (order-independent by the convention).
ExtReal sum(const std::vector<ExtReal>& xs);

inline ExtReal operator+(const ExtReal& a, const ExtReal& b) { return add(a, b); }
inline ExtReal operator*(const Rational& c, const ExtReal& a) { return scale(c, a); }

inline const ExtReal& ext_min(const ExtReal& a, const ExtReal& b) { return b < a ? b : a; }
inline const ExtReal& ext_max(const ExtReal& a, const ExtReal& b) { return a < b ? b : a; }

} // namespace finproj

#endif
