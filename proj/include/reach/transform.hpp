#pragma once

#include "reach/grid.hpp"
#include "reach/hamiltonian.hpp"

namespace reach {

// Samples of a convex conjugate, indexed by the dual variable q.
//
// primal_radius is the truncation radius of the primal data: the sup in the
// conjugate only ran over samples with |p| inside the primal box, so beyond
// the slopes that box can produce the values grow linearly instead of
// following the true conjugate.
class DualFn {
public:
    DualFn(GridFn samples, double primal_radius) : samples_(std::move(samples)), primal_radius_(primal_radius) {}

    const GridFn& samples() const noexcept { return samples_; }
    const Grid& grid() const noexcept { return samples_.grid(); }
    double primal_radius() const noexcept { return primal_radius_; }

    // Linear (1D) or bilinear (2D) interpolation; +inf outside the dual grid
    // or where any corner sample is +inf.
    ExtReal interpolate(const Point& q) const;

private:
    GridFn samples_;
    double primal_radius_;
};

// H*(q) = sup_p { p.q - H(p) } in closed form. Sampled Hamiltonians throw
// ("use conjugate_fast").
ExtReal hstar_closed_form(const Hamiltonian& H, const Point& q);

// Direct O(n * m) evaluation of max_p { p.q - f(p) } over the finite samples.
DualFn conjugate_bruteforce(const GridFn& f, const Grid& dual);

// Same values as conjugate_bruteforce. 1D: lower hull of the samples walked
// against the sorted dual axis, linear time. 2D: conjugate along axis 1 for
// every row, then along axis 0 for every dual column.
DualFn conjugate_fast(const GridFn& f, const Grid& dual);

// Dual grid helper: [-(lip+1), lip+1] per axis with the primal counts.
Grid default_dual_grid(const Grid& primal, double lip);

// Radius R such that every Hopf-Lax optimizer y* of u0(y) + T H*((x-y)/T)
// satisfies |x - y*| <= R when u0 is lip-Lipschitz. Uses the coercivity
// bound H*(q) >= C|q| - max_{|p|<=C} H(p) with C = lip + 1:
//     R = T * (H*(0) + max_{|p|<=C} H(p)).
// May be +inf (e.g. Affine with a != 0, whose H*(0) is +inf).
double search_radius(const Hamiltonian& H, double lip, double T);

}  // namespace reach
