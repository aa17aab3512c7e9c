#include "reach/reachability.hpp"

#include <algorithm>
#include <cmath>

#include "reach/error.hpp"
#include "reach/parallel.hpp"

namespace reach {

namespace {

struct Closure {
    Kernel kernel;
    EvolvedFn back;
    EvolvedFn fwd;
    double tol;
    double lip;
};

Closure close(const GridFn& uT, const Hamiltonian& H, double T, const FixpointOptions& opts) {
    if (!(T > 0.0)) throw Error("check_fixpoint: T must be > 0");
    if (!uT.all_finite()) throw Error("check_fixpoint: u_T contains +inf samples");
    if (!H.compatible_with(uT.grid().dim())) throw Error("check_fixpoint: Hamiltonian does not match grid dimension");
    const double lip = uT.lip() ? *uT.lip() : lipschitz_estimate(uT);
    const double tol = opts.tol ? *opts.tol : default_tolerance(uT);
    if (!(tol > 0.0)) throw Error("check_fixpoint: tol must be > 0");
    Kernel k = make_kernel(H, T, uT.grid(), radius_lipschitz(uT), opts.solver);
    EvolvedFn back = sweep(k, Sweep::backward, uT, {}, opts.solver);
    EvolvedFn fwd = sweep(k, Sweep::forward, back.fn, back.tainted, opts.solver);
    return {std::move(k), std::move(back), std::move(fwd), tol, lip};
}

// Unpruned kernel on every offset the grid can produce, indexed by
// (di + n0 - 1) * (2 n1 - 1) + (dj + n1 - 1).
std::vector<double> full_kernel(const Kernel& k) {
    const Grid& g = k.grid();
    const long m0 = static_cast<long>(g.count(0)) - 1, m1 = static_cast<long>(g.count(1)) - 1;
    std::vector<double> t(static_cast<std::size_t>((2 * m0 + 1) * (2 * m1 + 1)));
    parallel_for(t.size(), [&](std::size_t b, std::size_t e) {
        for (std::size_t s = b; s < e; ++s) {
            const long di = static_cast<long>(s) / (2 * m1 + 1) - m0;
            const long dj = static_cast<long>(s) % (2 * m1 + 1) - m1;
            t[s] = k.unpruned(di, dj);
        }
    });
    return t;
}

TouchingWitness witness_at(const Closure& cl, const std::vector<double>& full, const GridFn& uT, std::size_t x) {
    const Grid& g = uT.grid();
    const std::size_t x0 = cl.fwd.arg[x];
    TouchingWitness w;
    w.x = g.point(x);
    w.index = x;
    w.x0 = g.point(x0);
    w.x0_index = x0;
    w.c = cl.back.fn[x0];
    w.contact = cl.fwd.fn[x] - uT[x];
    const long m1 = static_cast<long>(g.count(1)) - 1, m0 = static_cast<long>(g.count(0)) - 1;
    const auto [ai, aj] = g.unflat(x0);
    double gap = 0.0;
    for (std::size_t z = 0; z < g.size(); ++z) {
        const auto [zi, zj] = g.unflat(z);
        const long di = static_cast<long>(zi) - static_cast<long>(ai);
        const long dj = static_cast<long>(zj) - static_cast<long>(aj);
        const double phi = full[static_cast<std::size_t>((di + m0) * (2 * m1 + 1) + (dj + m1))] + w.c;
        gap = std::max(gap, uT[z] - phi);
    }
    w.gap = gap;
    return w;
}

}  // namespace

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::reachable:
            return "reachable";
        case Verdict::not_reachable:
            return "not_reachable";
        case Verdict::inconclusive_boundary:
            return "inconclusive_boundary";
    }
    return "?";
}

double default_tolerance(const GridFn& uT) {
    const double lip = uT.lip() ? *uT.lip() : lipschitz_estimate(uT);
    return 4.0 * uT.grid().max_spacing() * (lip + 1.0);
}

ReachabilityReport check_fixpoint(const GridFn& uT, const Hamiltonian& H, double T, const FixpointOptions& opts) {
    Closure cl = close(uT, H, T, opts);
    ReachabilityReport r;
    const Grid& g = uT.grid();
    r.residual.resize(g.size());
    r.tainted = cl.fwd.tainted;
    r.tol = cl.tol;
    r.taint_cap = opts.taint_cap;
    r.lip = cl.lip;
    r.radius = cl.kernel.radius();
    r.tainted_fraction = cl.fwd.tainted_fraction();
    r.max_residual = 0.0;
    bool any = false;
    for (std::size_t x = 0; x < g.size(); ++x) {
        r.residual[x] = cl.fwd.fn[x] - uT[x];
        if (r.tainted[x]) continue;
        if (!any || r.residual[x] > r.max_residual) {
            r.max_residual = r.residual[x];
            r.worst_index = x;
            any = true;
        }
    }
    r.worst_point = g.point(r.worst_index);
    if (r.max_residual > r.tol) {
        r.verdict = Verdict::not_reachable;
    } else if (!any || r.tainted_fraction > opts.taint_cap) {
        r.verdict = Verdict::inconclusive_boundary;
    } else {
        r.verdict = Verdict::reachable;
    }
    return r;
}

std::optional<TouchingWitness> touching_witness(const GridFn& uT, const Hamiltonian& H, double T, const Point& x,
                                                const FixpointOptions& opts) {
    Closure cl = close(uT, H, T, opts);
    const std::size_t k = uT.grid().nearest(x);
    if (cl.fwd.tainted[k]) throw Error("touching_witness: boundary-tainted point");
    const std::vector<double> full = full_kernel(cl.kernel);
    TouchingWitness w = witness_at(cl, full, uT, k);
    if (w.contact <= cl.tol && w.gap <= cl.tol) return w;
    return std::nullopt;
}

bool WitnessScan::complete() const {
    for (std::size_t k = 0; k < witnesses.size(); ++k)
        if (!tainted[k] && !witnesses[k]) return false;
    return true;
}

WitnessScan touching_witnesses(const GridFn& uT, const Hamiltonian& H, double T, const FixpointOptions& opts) {
    Closure cl = close(uT, H, T, opts);
    const std::vector<double> full = full_kernel(cl.kernel);
    WitnessScan scan;
    scan.tol = cl.tol;
    scan.tainted = cl.fwd.tainted;
    scan.witnesses.resize(uT.size());
    parallel_for(uT.size(), [&](std::size_t b, std::size_t e) {
        for (std::size_t x = b; x < e; ++x) {
            if (scan.tainted[x]) continue;
            TouchingWitness w = witness_at(cl, full, uT, x);
            if (w.contact <= cl.tol && w.gap <= cl.tol) scan.witnesses[x] = w;
        }
    });
    return scan;
}

SemiconcavityReport check_semiconcavity_power(const GridFn& uT, double alpha, double T, PowerConvention convention,
                                              const SemiconcavityOptions& opts) {
    if (!(alpha > 1.0)) throw Error("check_semiconcavity_power: alpha must be > 1");
    if (!(T > 0.0)) throw Error("check_semiconcavity_power: T must be > 0");
    if (!uT.all_finite()) throw Error("check_semiconcavity_power: u_T contains +inf samples");
    const Grid& g = uT.grid();
    if (!opts.tainted.empty() && opts.tainted.size() != g.size())
        throw Error("check_semiconcavity_power: taint mask size mismatch");

    SemiconcavityReport rep;
    rep.lip = uT.lip() ? *uT.lip() : lipschitz_estimate(uT);
    // |p|^alpha = alpha * (|p|^alpha / alpha): the unscaled flow at time T is
    // the scaled flow at time alpha T.
    const double Te = convention == PowerConvention::scaled ? T : alpha * T;
    rep.T_effective = Te;
    const double h = g.max_spacing();
    rep.delta_min = opts.delta_factor * h * std::max(rep.lip, 1.0);
    const double root_h = std::sqrt(h);

    double fixed_bound = 0.0;
    if (alpha < 2.0) {
        rep.branch = "alpha<2";
        fixed_bound = std::pow(rep.lip, 2.0 - alpha) / ((alpha - 1.0) * Te);
    } else if (alpha == 2.0) {
        rep.branch = "alpha=2";
        fixed_bound = 1.0 / Te;
    } else {
        rep.branch = "alpha>2";
    }

    auto tainted = [&](std::size_t k) { return !opts.tainted.empty() && opts.tainted[k]; };
    auto gradient = [&](std::size_t k) {
        double s = 0.0;
        for (int a = 0; a < g.dim(); ++a) {
            const long di = a == 0 ? 1 : 0, dj = a == 1 ? 1 : 0;
            const double d = (uT[*g.shifted(k, di, dj)] - uT[*g.shifted(k, -di, -dj)]) / (2.0 * g.spacing(a));
            s += d * d;
        }
        return std::sqrt(s);
    };
    std::span<const Direction> dirs = g.dim() == 1 ? std::span<const Direction>(kDirections1D)
                                                   : std::span<const Direction>(kDirections2D);

    for (std::size_t k = 0; k < g.size(); ++k) {
        if (g.on_boundary(k)) continue;
        double bound = fixed_bound;
        if (alpha > 2.0) {
            const double delta = gradient(k);
            if (!(delta > rep.delta_min)) continue;
            bound = 1.0 / ((alpha - 1.0) * Te * std::pow(delta, alpha - 2.0));
        }
        bool strict_max = true;
        for (long di = -1; di <= 1; ++di)
            for (long dj = (g.dim() == 2 ? -1 : 0); dj <= (g.dim() == 2 ? 1 : 0); ++dj)
                if ((di || dj) && !(uT[*g.shifted(k, di, dj)] < uT[k])) strict_max = false;
        if (strict_max) {
            ++rep.local_maxima;
            bound = 0.0;
        }
        const double slack = opts.margin * root_h * (1.0 + bound);
        for (const Direction& d : dirs) {
            const std::size_t a = *g.shifted(k, d.di, d.dj), b = *g.shifted(k, -d.di, -d.dj);
            if (tainted(k) || tainted(a) || tainted(b)) continue;
            ++rep.checked;
            const double d2 = second_difference(uT, k, d);
            if (d2 > bound + slack) rep.violations.push_back({k, g.point(k), d, d2, bound});
        }
    }
    rep.pass = rep.violations.empty();
    return rep;
}

}  // namespace reach
