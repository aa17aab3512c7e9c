#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "reach/reachability.hpp"

namespace reach {

// Bounded density v on a 1D grid (finite samples only).
class DensityFn {
public:
    explicit DensityFn(GridFn v);

    const GridFn& fn() const noexcept { return v_; }
    const Grid& grid() const noexcept { return v_.grid(); }
    double bound() const noexcept { return bound_; }  // max |v|
    double operator[](std::size_t k) const noexcept { return v_[k]; }
    std::size_t size() const noexcept { return v_.size(); }

private:
    GridFn v_;
    double bound_ = 0.0;
};

// Sample used as the origin of the primitive: x = 0, or the nearest sample.
std::size_t primitive_anchor(const Grid& g);

// u(x) = int_0^x v, cumulative trapezoid anchored at primitive_anchor. An
// increment touching an exactly-zero sample counts as 0, so zero runs of v
// give exactly flat runs of u. The result caches lip = max |v|.
GridFn primitive(const DensityFn& v);

struct EvolvedDensity {
    DensityFn v;
    std::vector<std::uint8_t> tainted;
};

// Entropy solution at time T: derivative of the Hopf-Lax evolution of the
// primitive. Central differences inside, one-sided next to tainted samples
// and at the ends.
EvolvedDensity scl_forward(const DensityFn& v0, const Hamiltonian& H, double T, const SolverOptions& opts = {});

// Default residual tolerance for check_scl: a quarter cell of primitive rise,
// 0.25 h max|v|. Reachable piecewise-constant data has residual exactly 0.
double default_scl_tolerance(const DensityFn& v);

// v_T is reachable iff its primitive is (check_fixpoint on the primitive).
// opts.tol defaults to default_scl_tolerance.
ReachabilityReport check_scl(const DensityFn& vT, const Hamiltonian& H, double T, FixpointOptions opts = {});

struct SclAbsOptions {
    // |v| <= zero_tol counts as zero; default 1e-9 max|v|.
    std::optional<double> zero_tol;
    // Drop sign runs of at most two cells (smeared shocks) from A- and A+.
    bool exclude_shock_cells = false;
};

struct SignViolation {
    std::size_t negative = 0;  // last A- sample left of the A+ run
    std::size_t positive = 0;  // first sample of the A+ run
    double gap = 0.0;          // x_positive - x_negative
};

struct SclAbsReport {
    bool pass = true;
    double zero_tol = 0.0;
    long required_cells = 0;  // 2 r with r = round(T / h)
    std::vector<SignViolation> violations;
};

// Flux H(p) = |p|: every A+ sample must sit at least 2T to the right of every
// A- sample on its left. Isolated nonzero samples (zeros on both sides) are
// null sets and belong to neither.
SclAbsReport check_scl_abs(const DensityFn& vT, double T, const SclAbsOptions& opts = {});

}  // namespace reach
