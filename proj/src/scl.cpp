#include "reach/scl.hpp"

#include <algorithm>
#include <cmath>

#include "reach/error.hpp"

namespace reach {

DensityFn::DensityFn(GridFn v) : v_(std::move(v)) {
    if (v_.grid().dim() != 1) throw Error("density: 1D grid required");
    if (!v_.all_finite()) throw Error("density: values must be finite");
    bound_ = v_.max_abs_finite();
}

std::size_t primitive_anchor(const Grid& g) { return g.nearest({0.0, 0.0}); }

GridFn primitive(const DensityFn& v) {
    const Grid& g = v.grid();
    const std::size_t n = g.size(), a = primitive_anchor(g);
    const double h = g.spacing(0);
    auto step = [&](std::size_t k) {  // integral over [x_k, x_{k+1}]
        if (v[k] == 0.0 || v[k + 1] == 0.0) return 0.0;
        return 0.5 * h * (v[k] + v[k + 1]);
    };
    std::vector<double> u(n, 0.0);
    for (std::size_t k = a; k + 1 < n; ++k) u[k + 1] = u[k] + step(k);
    for (std::size_t k = a; k > 0; --k) u[k - 1] = u[k] - step(k - 1);
    return GridFn(g, std::move(u), v.bound());
}

EvolvedDensity scl_forward(const DensityFn& v0, const Hamiltonian& H, double T, const SolverOptions& opts) {
    if (!H.compatible_with(1)) throw Error("scl_forward: flux must be one-dimensional");
    EvolvedFn e = forward(primitive(v0), H, T, opts);
    const Grid& g = v0.grid();
    const std::size_t n = g.size();
    const double h = g.spacing(0);
    const auto& u = e.fn;
    std::vector<double> v(n);
    for (std::size_t k = 0; k < n; ++k) {
        const bool has_left = k > 0, has_right = k + 1 < n;
        const bool left = has_left && !e.tainted[k - 1];
        const bool right = has_right && !e.tainted[k + 1];
        if (has_left && has_right && left == right) {
            v[k] = (u[k + 1] - u[k - 1]) / (2.0 * h);
        } else if (has_right && (right || !has_left)) {
            v[k] = (u[k + 1] - u[k]) / h;
        } else {
            v[k] = (u[k] - u[k - 1]) / h;
        }
    }
    return {DensityFn(GridFn(g, std::move(v))), std::move(e.tainted)};
}

double default_scl_tolerance(const DensityFn& v) {
    const double scale = v.bound() > 0.0 ? v.bound() : 1.0;
    return 0.25 * v.grid().spacing(0) * scale;
}

ReachabilityReport check_scl(const DensityFn& vT, const Hamiltonian& H, double T, FixpointOptions opts) {
    if (!H.compatible_with(1)) throw Error("check_scl: flux must be one-dimensional");
    if (!opts.tol) opts.tol = default_scl_tolerance(vT);
    return check_fixpoint(primitive(vT), H, T, opts);
}

SclAbsReport check_scl_abs(const DensityFn& vT, double T, const SclAbsOptions& opts) {
    if (!(T > 0.0)) throw Error("check_scl_abs: T must be > 0");
    SclAbsReport rep;
    rep.zero_tol = opts.zero_tol ? *opts.zero_tol : 1e-9 * vT.bound();
    if (!(rep.zero_tol >= 0.0)) throw Error("check_scl_abs: zero_tol must be >= 0");
    const Grid& g = vT.grid();
    const double h = g.spacing(0);
    // Same discrete radius as the Abs kernel: |d| <= T + h/2.
    const long r = static_cast<long>(std::floor((T + 0.5 * h * (1.0 + 1e-9)) / h + 1e-9));
    rep.required_cells = 2 * r;

    const std::size_t n = vT.size();
    std::vector<int> sign(n, 0);
    for (std::size_t k = 0; k < n; ++k) {
        if (vT[k] > rep.zero_tol) sign[k] = 1;
        if (vT[k] < -rep.zero_tol) sign[k] = -1;
    }
    // A nonzero sample between zeros carries no mass in the zero-clamped
    // primitive: it is a null set, not a member of A- or A+.
    std::vector<int> raw = sign;
    for (std::size_t k = 0; k < n; ++k) {
        const bool left = k > 0 && raw[k - 1] != 0, right = k + 1 < n && raw[k + 1] != 0;
        if (!left && !right) sign[k] = 0;
    }
    if (opts.exclude_shock_cells) {
        std::size_t a = 0;
        while (a < n) {
            std::size_t b = a;
            while (b + 1 < n && sign[b + 1] == sign[a]) ++b;
            if (sign[a] != 0 && b - a + 1 <= 2) std::fill(sign.begin() + static_cast<long>(a), sign.begin() + static_cast<long>(b) + 1, 0);
            a = b + 1;
        }
    }

    long last_negative = -1;
    for (std::size_t k = 0; k < n; ++k) {
        if (sign[k] < 0) last_negative = static_cast<long>(k);
        const bool run_start = sign[k] > 0 && (k == 0 || sign[k - 1] <= 0);
        if (run_start && last_negative >= 0 && static_cast<long>(k) - last_negative < rep.required_cells) {
            const auto neg = static_cast<std::size_t>(last_negative);
            rep.violations.push_back({neg, k, g.axis(0).point(k) - g.axis(0).point(neg)});
        }
    }
    rep.pass = rep.violations.empty();
    return rep;
}

}  // namespace reach
