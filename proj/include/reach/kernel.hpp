#pragma once

#include <vector>

#include "reach/grid.hpp"
#include "reach/hamiltonian.hpp"

namespace reach {

// The Hopf-Lax kernel k(d) = T H*(d/T) tabulated on grid offsets
// d = (di h0, dj h1) inside a pruning window.
//
// Discretization rules:
//  - closed-form kernels (power families, quadratic) are evaluated exactly;
//  - compactly supported kernels are widened by half a cell: Abs is finite
//    (= 0) for |d| <= T + h/2, Affine is finite (= -T b) for |d - T a| <= h/2,
//    with h the smallest grid spacing;
//  - Sampled Hamiltonians are conjugated (conjugate_fast) on a dual grid whose
//    nodes are exactly the window offsets divided by T.
// Offsets with |d| > radius are +inf in the table (pruning); Abs and Affine
// use their support instead of the radius. The same Kernel
// must drive a backward/forward pair for S+ S- to be an exact closure.
class Kernel {
public:
    Kernel(const Hamiltonian& H, double T, const Grid& grid, double radius);

    const Hamiltonian& hamiltonian() const noexcept { return H_; }
    const Grid& grid() const noexcept { return grid_; }
    double T() const noexcept { return T_; }
    // Pruning radius requested by the caller (+inf = no pruning).
    double radius() const noexcept { return radius_; }
    // Window half-widths in cells.
    long reach(int axis) const noexcept { return axis == 0 ? r0_ : r1_; }

    // Pruned table lookup; +inf outside the window.
    double operator()(long di, long dj = 0) const noexcept {
        if (di < -r0_ || di > r0_ || dj < -r1_ || dj > r1_) return kInf;
        return table_[static_cast<std::size_t>((di + r0_) * (2 * r1_ + 1) + (dj + r1_))];
    }

    // Kernel value at an arbitrary grid offset, ignoring the pruning window.
    // Agrees with operator() wherever the latter is finite.
    double unpruned(long di, long dj = 0) const;

    bool quadratic() const noexcept { return H_.is<ham::Quadratic>(); }

private:
    double evaluate(long di, long dj) const;

    Hamiltonian H_;
    Grid grid_;
    double T_;
    double radius_;
    long r0_ = 0, r1_ = 0;
    std::vector<double> table_;
    // Sampled only: conjugate on the full offset range, indexed like table_
    // but with half-widths (n0-1, n1-1).
    std::vector<double> sampled_dual_;
};

// Lipschitz bound fed to search_radius: the axis-wise estimate in 1D, times
// sqrt(2) in 2D (axis differences can under-report the Euclidean constant).
double radius_lipschitz(const GridFn& f);

}  // namespace reach
