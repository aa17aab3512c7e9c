#pragma once

#include <string>
#include <variant>

#include "reach/grid.hpp"

namespace reach {

namespace ham {

// H(p) = |p|^alpha / alpha, alpha > 1.
struct PowerScaled {
    double alpha;
};
// H(p) = |p|^alpha, alpha > 1.
struct Power {
    double alpha;
};
// H(p) = |p| (the level-set Hamiltonian).
struct Abs {};
// H(p) = |p|^2 / 2.
struct Quadratic {};
// H(p) = a.p + b.
struct Affine {
    Point a{};
    double b = 0.0;
};
// Convex data sampled on a 1D or 2D grid.
struct Sampled {
    GridFn f;
};

}  // namespace ham

// Tagged description of a convex Hamiltonian. Factories validate: alpha > 1
// for the power families, discrete convexity and finiteness for Sampled.
class Hamiltonian {
public:
    using Variant = std::variant<ham::PowerScaled, ham::Power, ham::Abs, ham::Quadratic, ham::Affine, ham::Sampled>;

    static Hamiltonian power_scaled(double alpha);
    static Hamiltonian power(double alpha);
    static Hamiltonian abs();
    static Hamiltonian quadratic();
    static Hamiltonian affine(Point a, double b);
    static Hamiltonian sampled(GridFn f);

    const Variant& kind() const noexcept { return v_; }
    template <typename K>
    bool is() const noexcept {
        return std::holds_alternative<K>(v_);
    }
    template <typename K>
    const K& as() const {
        return std::get<K>(v_);
    }

    // Radial kinds are defined in every dimension; Affine and Sampled carry
    // their own (Affine with a[1] != 0 and Sampled 2D need a 2D grid).
    bool compatible_with(int dim) const noexcept;

    // H(p). Sampled data is interpolated (linear / bilinear) and throws
    // outside its grid.
    double operator()(const Point& p) const;

    // -inf H = H*(0), +inf when H is unbounded below.
    double hstar_at_zero() const;
    // max_{|p| <= c} H(p). For Sampled: max over samples inside the ball.
    double max_on_ball(double c) const;

    std::string name() const;

private:
    explicit Hamiltonian(Variant v) : v_(std::move(v)) {}
    Variant v_;
};

}  // namespace reach
