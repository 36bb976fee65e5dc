#pragma once

#include <string>
#include <string_view>

namespace lpbm {

// A real number in [-inf, +inf] with the special values kept as tags.
class ExtendedReal {
public:
    enum class Kind { Finite, Zero, PosInf, NegInf };

    ExtendedReal() = default;

    static ExtendedReal finite(double v);
    static ExtendedReal zero() { return ExtendedReal(Kind::Zero, 0.0); }
    static ExtendedReal pos_inf() { return ExtendedReal(Kind::PosInf, 0.0); }
    static ExtendedReal neg_inf() { return ExtendedReal(Kind::NegInf, 0.0); }
    // Accepts "inf", "+inf", "-inf", "infinity" and any decimal literal.
    static ExtendedReal parse(std::string_view text);
    static ExtendedReal from_double(double v);

    Kind kind() const { return kind_; }
    bool is_finite_nonzero() const { return kind_ == Kind::Finite; }
    bool is_zero() const { return kind_ == Kind::Zero; }
    bool is_pos_inf() const { return kind_ == Kind::PosInf; }
    bool is_neg_inf() const { return kind_ == Kind::NegInf; }
    // IEEE value, with +-infinity for the infinite tags.
    double value() const;

    std::string to_string() const;

    friend bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
        return a.kind_ == b.kind_ && a.v_ == b.v_;
    }

private:
    ExtendedReal(Kind k, double v) : kind_(k), v_(v) {}
    Kind kind_ = Kind::Zero;
    double v_ = 0.0;
};

}  // namespace lpbm
