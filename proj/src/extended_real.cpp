#include "lpbm/extended_real.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace lpbm {

ExtendedReal ExtendedReal::finite(double v) {
    if (!std::isfinite(v)) throw std::invalid_argument("ExtendedReal::finite: value is not finite");
    if (v == 0.0) return zero();
    return ExtendedReal(Kind::Finite, v);
}

ExtendedReal ExtendedReal::from_double(double v) {
    if (std::isnan(v)) throw std::invalid_argument("ExtendedReal: NaN");
    if (std::isinf(v)) return v > 0 ? pos_inf() : neg_inf();
    return finite(v);
}

ExtendedReal ExtendedReal::parse(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (s == "inf" || s == "+inf" || s == "infinity" || s == "+infinity") return pos_inf();
    if (s == "-inf" || s == "-infinity") return neg_inf();
    double v = 0.0;
    const char* first = s.data();
    if (!s.empty() && s[0] == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
        throw std::invalid_argument("cannot parse extended real '" + std::string(text) + "'");
    return finite(v);
}

double ExtendedReal::value() const {
    switch (kind_) {
        case Kind::Finite: return v_;
        case Kind::Zero: return 0.0;
        case Kind::PosInf: return HUGE_VAL;
        case Kind::NegInf: return -HUGE_VAL;
    }
    return 0.0;
}

std::string ExtendedReal::to_string() const {
    switch (kind_) {
        case Kind::PosInf: return "inf";
        case Kind::NegInf: return "-inf";
        case Kind::Zero: return "0";
        case Kind::Finite: break;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v_);
    return buf;
}

}  // namespace lpbm
