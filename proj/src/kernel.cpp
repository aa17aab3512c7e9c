#include "reach/kernel.hpp"

#include <algorithm>
#include <cmath>

#include "reach/error.hpp"
#include "reach/transform.hpp"

namespace reach {

namespace {

constexpr double kSnap = 1e-9;  // relative slack when comparing offsets to radii

long cells_within(double radius, double h, std::size_t n) {
    const long full = static_cast<long>(n) - 1;
    if (!std::isfinite(radius)) return full;
    return std::min(full, static_cast<long>(std::floor(radius / h + kSnap)));
}

}  // namespace

double radius_lipschitz(const GridFn& f) {
    const double lip = f.lip() ? *f.lip() : lipschitz_estimate(f);
    return f.grid().dim() == 2 ? lip * std::sqrt(2.0) : lip;
}

Kernel::Kernel(const Hamiltonian& H, double T, const Grid& grid, double radius)
    : H_(H), grid_(grid), T_(T), radius_(radius) {
    if (!(T > 0.0)) throw Error("kernel: T must be > 0");
    if (!(radius >= 0.0)) throw Error("kernel: radius must be >= 0");
    if (!H.compatible_with(grid.dim())) throw Error("kernel: Hamiltonian " + H.name() + " does not match a " + std::to_string(grid.dim()) + "D grid");

    const double h = grid.min_spacing();
    double support = kInf;
    if (H.is<ham::Abs>()) support = T + 0.5 * h;
    if (H.is<ham::Affine>()) support = T * norm(H.as<ham::Affine>().a) + 0.5 * h;
    // Compact kernels need no pruning: the window is their (inflated)
    // support even when the coercivity radius is smaller.
    const double window = std::isfinite(support) ? support : radius;

    r0_ = cells_within(window, grid.spacing(0), grid.count(0));
    r1_ = grid.dim() == 2 ? cells_within(window, grid.spacing(1), grid.count(1)) : 0;

    if (H.is<ham::Sampled>()) {
        // Dual nodes q = d / T for every offset d the grid can produce.
        const long n0 = static_cast<long>(grid.count(0)) - 1;
        const long n1 = grid.dim() == 2 ? static_cast<long>(grid.count(1)) - 1 : 0;
        const double q0 = static_cast<double>(n0) * grid.spacing(0) / T;
        Grid dual = grid.dim() == 1
                        ? Grid::line(-q0, q0, static_cast<std::size_t>(2 * n0 + 1))
                        : Grid::plane(Axis{-q0, q0, static_cast<std::size_t>(2 * n0 + 1)},
                                      Axis{-static_cast<double>(n1) * grid.spacing(1) / T,
                                           static_cast<double>(n1) * grid.spacing(1) / T,
                                           static_cast<std::size_t>(2 * n1 + 1)});
        DualFn conj = conjugate_fast(H.as<ham::Sampled>().f, dual);
        sampled_dual_.assign(conj.samples().values().begin(), conj.samples().values().end());
    }

    const long w1 = 2 * r1_ + 1;
    table_.assign(static_cast<std::size_t>((2 * r0_ + 1) * w1), kInf);
    const double cut = std::isfinite(radius) && !std::isfinite(support) ? radius * (1.0 + kSnap) + kSnap * h : kInf;
    for (long di = -r0_; di <= r0_; ++di) {
        for (long dj = -r1_; dj <= r1_; ++dj) {
            const double dist = std::hypot(di * grid.spacing(0), grid.dim() == 2 ? dj * grid.spacing(1) : 0.0);
            if (dist > cut) continue;
            table_[static_cast<std::size_t>((di + r0_) * w1 + (dj + r1_))] = evaluate(di, dj);
        }
    }
}

double Kernel::unpruned(long di, long dj) const {
    if (grid_.dim() == 1 && dj != 0) throw Error("kernel: 2D offset on a 1D grid");
    return evaluate(di, dj);
}

double Kernel::evaluate(long di, long dj) const {
    const Point d{di * grid_.spacing(0), grid_.dim() == 2 ? dj * grid_.spacing(1) : 0.0};
    const double h = grid_.min_spacing();
    if (H_.is<ham::Abs>()) return norm(d) <= T_ + 0.5 * h * (1.0 + kSnap) ? 0.0 : kInf;
    if (H_.is<ham::Affine>()) {
        const auto& a = H_.as<ham::Affine>();
        const Point e{d[0] - T_ * a.a[0], d[1] - T_ * a.a[1]};
        return norm(e) <= 0.5 * h * (1.0 + kSnap) ? -T_ * a.b : kInf;
    }
    if (H_.is<ham::Sampled>()) {
        const long n0 = static_cast<long>(grid_.count(0)) - 1;
        const long n1 = grid_.dim() == 2 ? static_cast<long>(grid_.count(1)) - 1 : 0;
        if (di < -n0 || di > n0 || dj < -n1 || dj > n1) return kInf;
        return T_ * sampled_dual_[static_cast<std::size_t>((di + n0) * (2 * n1 + 1) + (dj + n1))];
    }
    return T_ * hstar_closed_form(H_, {d[0] / T_, d[1] / T_}).raw();
}

}  // namespace reach
