#pragma once

#include <compare>
#include <limits>
#include <ostream>

namespace reach {

// A real number or +inf. There is no -inf: conjugates of real-valued convex
// Hamiltonians never produce it, so admitting it would only hide bugs.
//
// The infinity flag is carried by IEEE +inf in the payload; construction
// rejects NaN and -inf, and the arithmetic below refuses 0 * inf.
class ExtReal {
public:
    constexpr ExtReal() noexcept = default;
    ExtReal(double v);  // NOLINT(google-explicit-constructor): reals embed implicitly

    static constexpr ExtReal infinity() noexcept { return ExtReal(Raw{}, std::numeric_limits<double>::infinity()); }

    constexpr bool is_inf() const noexcept { return v_ == std::numeric_limits<double>::infinity(); }
    constexpr bool is_finite() const noexcept { return !is_inf(); }

    // Finite payload; throws on +inf.
    double value() const;
    // Payload with +inf encoded as IEEE infinity. Safe to feed into min/+.
    constexpr double raw() const noexcept { return v_; }

    // lambda * x for lambda >= 0; 0 * inf and negative multiples of inf throw.
    ExtReal scaled(double lambda) const;

    friend ExtReal operator+(ExtReal a, ExtReal b) noexcept { return ExtReal(Raw{}, a.v_ + b.v_); }
    friend constexpr bool operator==(ExtReal a, ExtReal b) noexcept { return a.v_ == b.v_; }
    friend constexpr std::partial_ordering operator<=>(ExtReal a, ExtReal b) noexcept { return a.v_ <=> b.v_; }

private:
    struct Raw {};
    constexpr ExtReal(Raw, double v) noexcept : v_(v) {}

    double v_ = 0.0;
};

inline ExtReal min(ExtReal a, ExtReal b) noexcept { return b < a ? b : a; }
inline ExtReal max(ExtReal a, ExtReal b) noexcept { return a < b ? b : a; }

std::ostream& operator<<(std::ostream& os, ExtReal x);

inline constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace reach
