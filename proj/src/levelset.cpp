#include "reach/levelset.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "reach/error.hpp"
#include "reach/hopflax.hpp"
#include "reach/parallel.hpp"

namespace reach {

namespace {

constexpr double kSnap = 1e-9;  // same slack as the Hopf-Lax kernel tables

// Squared Euclidean distance from every sample to the nearest set sample
// (+inf when the set is empty), via the exact parabola envelope.
class DistanceField {
public:
    explicit DistanceField(const Grid& g) : kernel_(Hamiltonian::quadratic(), 0.5, g, kInf) {}

    std::vector<double> squared(const std::vector<std::uint8_t>& set) const {
        std::vector<double> f(set.size());
        for (std::size_t k = 0; k < set.size(); ++k) f[k] = set[k] ? 0.0 : kInf;
        EvolvedFn e = sweep(kernel_, Sweep::forward, GridFn(kernel_.grid(), std::move(f)));
        auto v = e.fn.values();
        return {v.begin(), v.end()};
    }

private:
    Kernel kernel_;
};

double ball_radius(const Grid& g, double r) { return r + 0.5 * g.min_spacing() * (1.0 + kSnap); }

SublevelMask open_with(const DistanceField& df, const SublevelMask& mask, double r) {
    const Grid& g = mask.grid;
    const double rho = ball_radius(g, r);
    const double rho2 = rho * rho;
    std::vector<std::uint8_t> outside(mask.bits.size());
    for (std::size_t k = 0; k < outside.size(); ++k) outside[k] = mask.bits[k] ? 0 : 1;
    const std::vector<double> d_out = df.squared(outside);
    std::vector<std::uint8_t> eroded(mask.bits.size());
    for (std::size_t k = 0; k < eroded.size(); ++k) eroded[k] = d_out[k] > rho2 ? 1 : 0;
    const std::vector<double> d_in = df.squared(eroded);
    SublevelMask out{g, std::vector<std::uint8_t>(mask.bits.size()), mask.level};
    for (std::size_t k = 0; k < out.bits.size(); ++k) out.bits[k] = d_in[k] <= rho2 ? 1 : 0;
    return out;
}

void check_radius(const Grid& g, double r) {
    if (!(r >= g.min_spacing())) throw Error("ball_opening: radius under grid resolution");
}

// Local-minimum sample values: 1D plateau minima, 2D samples <= all 8 neighbours.
std::vector<double> local_minimum_values(const GridFn& u) {
    const Grid& g = u.grid();
    std::vector<double> out;
    if (g.dim() == 1) {
        const std::size_t n = g.size();
        std::size_t a = 0;
        while (a < n) {
            std::size_t b = a;
            while (b + 1 < n && u[b + 1] == u[a]) ++b;
            const bool left = a == 0 || u[a - 1] > u[a];
            const bool right = b + 1 == n || u[b + 1] > u[a];
            if (left && right) out.push_back(u[a]);
            a = b + 1;
        }
        return out;
    }
    for (std::size_t k = 0; k < g.size(); ++k) {
        bool is_min = true;
        for (long di = -1; di <= 1 && is_min; ++di)
            for (long dj = -1; dj <= 1; ++dj) {
                if (!di && !dj) continue;
                if (auto s = g.shifted(k, di, dj); s && u[*s] < u[k]) {
                    is_min = false;
                    break;
                }
            }
        if (is_min) out.push_back(u[k]);
    }
    return out;
}

}  // namespace

std::size_t SublevelMask::count() const noexcept {
    return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), std::uint8_t{1}));
}

SublevelMask sublevel_mask(const GridFn& uT, double level) {
    SublevelMask m{uT.grid(), std::vector<std::uint8_t>(uT.size()), level};
    for (std::size_t k = 0; k < uT.size(); ++k) m.bits[k] = uT[k] <= level ? 1 : 0;
    return m;
}

SublevelMask ball_opening(const SublevelMask& mask, double r) {
    check_radius(mask.grid, r);
    if (mask.bits.size() != mask.grid.size()) throw Error("ball_opening: mask size does not match its grid");
    DistanceField df(mask.grid);
    return open_with(df, mask, r);
}

std::vector<double> select_levels(const GridFn& uT, const InteriorBallOptions& opts) {
    std::set<double> levels;
    switch (opts.mode) {
        case LevelMode::explicit_list:
            levels.insert(opts.levels.begin(), opts.levels.end());
            break;
        case LevelMode::all:
            levels.insert(uT.values().begin(), uT.values().end());
            break;
        case LevelMode::auto_levels: {
            const auto [lo, hi] = std::minmax_element(uT.values().begin(), uT.values().end());
            const std::size_t q = std::max<std::size_t>(opts.quantized, 2);
            for (std::size_t k = 0; k < q; ++k)
                levels.insert(*lo + (*hi - *lo) * static_cast<double>(k) / static_cast<double>(q - 1));
            for (double v : local_minimum_values(uT)) levels.insert(v);
            break;
        }
    }
    return {levels.begin(), levels.end()};
}

InteriorBallReport check_interior_ball(const GridFn& uT, double T, const InteriorBallOptions& opts) {
    const Grid& g = uT.grid();
    if (!uT.all_finite()) throw Error("check_interior_ball: u_T contains +inf samples");
    if (!(T > g.min_spacing())) throw Error("check_interior_ball: T must exceed the grid spacing");
    check_radius(g, T);

    InteriorBallReport rep;
    rep.T = T;
    rep.band_px = opts.band_px >= 0 ? opts.band_px : (g.dim() == 2 ? 1 : 0);
    rep.taint_distance = ball_radius(g, T);
    rep.levels = select_levels(uT, opts);
    rep.failing.assign(g.size(), 0);

    DistanceField df(g);
    std::vector<std::vector<LevelFailure>> per_level(rep.levels.size());
    std::vector<std::size_t> tainted(rep.levels.size(), 0), forgiven(rep.levels.size(), 0);
    const double band = static_cast<double>(rep.band_px) * g.max_spacing() * (1.0 + kSnap);
    std::vector<std::vector<std::size_t>> failing(rep.levels.size());

    parallel_for(rep.levels.size(), [&](std::size_t b, std::size_t e) {
        for (std::size_t l = b; l < e; ++l) {
            const SublevelMask m = sublevel_mask(uT, rep.levels[l]);
            const SublevelMask o = open_with(df, m, T);
            std::vector<double> near_open;
            if (rep.band_px > 0) near_open = df.squared(o.bits);
            for (std::size_t k = 0; k < g.size(); ++k) {
                if (!m.bits[k] || o.bits[k]) continue;
                if (g.boundary_distance(k) < rep.taint_distance) {
                    ++tainted[l];
                    continue;
                }
                if (rep.band_px > 0 && near_open[k] <= band * band * 2.0) {
                    ++forgiven[l];
                    continue;
                }
                failing[l].push_back(k);
            }
        }
    });

    for (std::size_t l = 0; l < rep.levels.size(); ++l) {
        rep.tainted_failures += tainted[l];
        rep.forgiven += forgiven[l];
        rep.failure_count += failing[l].size();
        for (std::size_t k : failing[l]) {
            rep.failing[k] = 1;
            if (rep.failures.size() < opts.max_failures) rep.failures.push_back({rep.levels[l], k, g.point(k)});
        }
    }
    rep.pass = rep.failure_count == 0;
    return rep;
}

LocalMinimaReport check_local_minima_1d(const GridFn& uT, double T, double tol) {
    const Grid& g = uT.grid();
    if (g.dim() != 1) throw Error("check_local_minima_1d: 1D input required");
    if (!uT.all_finite()) throw Error("check_local_minima_1d: u_T contains +inf samples");
    if (!(T > g.min_spacing())) throw Error("check_local_minima_1d: T must exceed the grid spacing");

    LocalMinimaReport rep;
    rep.T = T;
    rep.tol = tol;
    const double h = g.spacing(0);
    rep.window_cells = static_cast<long>(std::floor(ball_radius(g, T) / h + kSnap));
    const long r = rep.window_cells;
    const long n = static_cast<long>(g.size());
    const double taint_distance = ball_radius(g, T);

    // Samples above the threshold, as a prefix count, to test windows in O(1).
    auto window_ok = [&](long x, double threshold, std::vector<long>& above) {
        above.assign(static_cast<std::size_t>(n + 1), 0);
        for (long k = 0; k < n; ++k)
            above[static_cast<std::size_t>(k + 1)] = above[static_cast<std::size_t>(k)] + (uT[static_cast<std::size_t>(k)] > threshold ? 1 : 0);
        for (long c = x - r; c <= x + r; ++c) {
            const long lo = std::max(0L, c - r), hi = std::min(n - 1, c + r);
            if (above[static_cast<std::size_t>(hi + 1)] - above[static_cast<std::size_t>(lo)] == 0) return true;
        }
        return false;
    };

    std::vector<long> above;
    long a = 0;
    while (a < n) {
        long b = a;
        while (b + 1 < n && uT[static_cast<std::size_t>(b + 1)] == uT[static_cast<std::size_t>(a)]) ++b;
        const double v = uT[static_cast<std::size_t>(a)];
        const bool left = a == 0 || uT[static_cast<std::size_t>(a - 1)] > v;
        const bool right = b + 1 == n || uT[static_cast<std::size_t>(b + 1)] > v;
        if (left && right) {
            LocalMinimum m;
            m.first = static_cast<std::size_t>(a);
            m.last = static_cast<std::size_t>(b);
            m.value = v;
            m.tainted = g.boundary_distance(m.first) < taint_distance && g.boundary_distance(m.last) < taint_distance;
            m.ok = window_ok(a, v + tol, above) || window_ok(b, v + tol, above);
            if (!m.ok && !m.tainted) rep.pass = false;
            rep.minima.push_back(m);
        }
        a = b + 1;
    }
    return rep;
}

}  // namespace reach
