#include "reach/construct.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "reach/error.hpp"
#include "reach/transform.hpp"

namespace reach {

GridFn cone_target(const Hamiltonian& H, double T, const std::vector<Anchor>& anchors, const Grid& grid) {
    if (H.is<ham::Abs>() || H.is<ham::Affine>()) throw Error("cone_target: conjugate not locally Lipschitz");
    if (H.is<ham::Sampled>()) throw Error("cone_target: sampled Hamiltonians have no closed-form conjugate");
    if (!(T > 0.0)) throw Error("cone_target: T must be > 0");
    if (anchors.empty()) throw Error("cone_target: at least one anchor required");
    for (const Anchor& a : anchors)
        if (!std::isfinite(a.c)) throw Error("cone_target: anchor values must be finite");
    return GridFn::sample(grid, [&](const Point& x) {
        double v = 0.0;
        for (const Anchor& a : anchors) {
            const Point q{(x[0] - a.x[0]) / T, grid.dim() == 2 ? (x[1] - a.x[1]) / T : 0.0};
            v = std::min(v, T * hstar_closed_form(H, q).raw() + a.c);
        }
        return v;
    });
}

GridFn min_envelope(const std::vector<GridFn>& targets) {
    if (targets.empty()) throw Error("min_envelope: no targets");
    const Grid& g = targets.front().grid();
    std::vector<double> v(targets.front().values().begin(), targets.front().values().end());
    std::optional<double> lip = targets.front().lip();
    for (std::size_t t = 1; t < targets.size(); ++t) {
        if (!(targets[t].grid() == g)) throw Error("min_envelope: grid mismatch");
        for (std::size_t k = 0; k < v.size(); ++k) v[k] = std::min(v[k], targets[t][k]);
        lip = lip && targets[t].lip() ? std::optional<double>(std::max(*lip, *targets[t].lip())) : std::nullopt;
    }
    for (double x : v)
        if (!std::isfinite(x)) throw Error("min_envelope: targets must be finite");
    return GridFn(g, std::move(v), lip);
}

GridFn scale_target(const GridFn& uT, double lambda) {
    if (!(lambda >= 0.0)) throw Error("scale_target: lambda must be >= 0");
    if (!uT.all_finite()) throw Error("scale_target: target must be finite");
    std::vector<double> v(uT.values().begin(), uT.values().end());
    for (double& x : v) x *= lambda;
    std::optional<double> lip;
    if (uT.lip()) lip = lambda * *uT.lip();
    return GridFn(uT.grid(), std::move(v), lip);
}

GridFn random_lipschitz(const Grid& grid, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    if (grid.dim() == 1) {
        const Axis& ax = grid.axis(0);
        const int knots = 4 + static_cast<int>(rng() % 9);
        std::vector<double> at(static_cast<std::size_t>(knots) + 1), slope(static_cast<std::size_t>(knots) + 1);
        std::uniform_real_distribution<double> pos(ax.min, ax.max);
        for (double& a : at) a = pos(rng);
        std::sort(at.begin(), at.end());
        at.front() = ax.min;
        for (double& s : slope) s = unit(rng);
        const double base = unit(rng);
        return GridFn::sample(grid, [&](const Point& x) {
            double v = base;
            for (std::size_t k = 0; k < at.size(); ++k) {
                const double end = k + 1 < at.size() ? at[k + 1] : ax.max;
                const double lo = at[k], hi = std::clamp(x[0], lo, end);
                if (x[0] > lo) v += slope[k] * (hi - lo);
            }
            return v;
        });
    }
    struct Plane {
        double a0, a1, b;
    };
    const int groups = 2 + static_cast<int>(rng() % 3);
    std::vector<std::vector<Plane>> planes(static_cast<std::size_t>(groups));
    const double span = std::max(grid.axis(0).max - grid.axis(0).min, grid.axis(1).max - grid.axis(1).min);
    for (auto& grp : planes) {
        grp.resize(2 + rng() % 3);
        for (Plane& p : grp) {
            double a0 = unit(rng), a1 = unit(rng);
            const double len = std::hypot(a0, a1);
            if (len > 1.0) {
                a0 /= len;
                a1 /= len;
            }
            p = {a0, a1, 0.25 * span * unit(rng)};
        }
    }
    return GridFn::sample(grid, [&](const Point& x) {
        double v = -kInf;
        for (const auto& grp : planes) {
            double m = kInf;
            for (const Plane& p : grp) m = std::min(m, p.a0 * x[0] + p.a1 * x[1] + p.b);
            v = std::max(v, m);
        }
        return v;
    });
}

RandomTarget random_reachable(const Hamiltonian& H, double T, const Grid& grid, std::uint64_t seed,
                              const SolverOptions& opts) {
    GridFn u0 = random_lipschitz(grid, seed);
    EvolvedFn e = forward(u0, H, T, opts);
    return {std::move(u0), std::move(e.fn), std::move(e.tainted)};
}

}  // namespace reach
