#include "lcbc/rational.hpp"

#include <stdexcept>

namespace lcbc {

std::string rat_str(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

Rational rat_parse(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(s));
        BigInt num(s.substr(0, slash));
        BigInt den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    } catch (const std::runtime_error& e) {
        throw std::invalid_argument(std::string("malformed rational: ") + s);
    }
}

BigInt denominator_lcm(const std::vector<Rational>& values) {
    BigInt l = 1;
    for (const Rational& v : values) l = lcm(l, BigInt(denominator(v)));
    return l;
}

}  // namespace lcbc
