#include "finproj/extreal.hpp"

namespace finproj {

std::string Rational::str() const {
    std::string s = numerator().str();
    if (denominator() != 1) {
        s += "/";
        s += denominator().str();
    }
    return s;
}

Rational Rational::parse(const std::string& s) {
    if (s.empty()) throw SchemaError("empty rational literal");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(s), BigInt(1));
        BigInt num(s.substr(0, slash));
        BigInt den(s.substr(slash + 1));
        return Rational(num, den);
    } catch (const std::exception& e) {
        throw SchemaError("bad rational literal '" + s + "': " + e.what());
    }
}

std::string ExtReal::str() const {
    switch (kind_) {
        case Kind::PlusInf: return "+inf";
        case Kind::MinusInf: return "-inf";
        default: return v_.str();
    }
}

ExtReal ExtReal::parse(const std::string& s) {
    if (s == "+inf" || s == "inf") return plus_inf();
    if (s == "-inf") return minus_inf();
    return ExtReal(Rational::parse(s));
}

ExtReal add(const ExtReal& a, const ExtReal& b) {
    if (a.is_plus_inf() || b.is_plus_inf()) return ExtReal::plus_inf();
    if (a.is_minus_inf() || b.is_minus_inf()) return ExtReal::minus_inf();
    return ExtReal(a.finite_value() + b.finite_value());
}

ExtReal scale(const Rational& c, const ExtReal& a) {
    if (c.is_zero()) return ExtReal(Rational(0));
    if (a.is_finite()) return ExtReal(c * a.finite_value());
    bool plus = a.is_plus_inf() == (c.sign() > 0);
    return plus ? ExtReal::plus_inf() : ExtReal::minus_inf();
}

ExtReal pos_part(const ExtReal& a) { return ext_max(a, ExtReal(Rational(0))); }

ExtReal neg_part(const ExtReal& a) { return ext_max(negate(a), ExtReal(Rational(0))); }

ExtReal sum(const std::vector<ExtReal>& xs) {
    ExtReal acc{Rational(0)};
    for (const auto& x : xs) acc = add(acc, x);
    return acc;
}

} // namespace finproj
