#include "reach/hopflax.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "reach/error.hpp"
#include "reach/parallel.hpp"
#include "reach/transform.hpp"

namespace reach {

namespace {

void require_input(const GridFn& u, const Hamiltonian& H, double T, const char* who) {
    if (!(T > 0.0)) throw Error(std::string(who) + ": T must be > 0");
    if (!u.all_finite()) throw Error(std::string(who) + ": input contains +inf samples");
    if (!H.compatible_with(u.grid().dim())) throw Error(std::string(who) + ": Hamiltonian does not match grid dimension");
}

struct Best {
    double value;
    std::size_t arg;
    double dist2;
};

// Lower envelope of parabolas c (p - q)^2 + f(q) over integer q, evaluated
// at every integer p (Felzenszwalb-Huttenlocher). f = +inf entries are
// skipped; an all-inf line yields +inf with arg = p.
class Envelope {
public:
    explicit Envelope(std::size_t n) : v_(n), z_(n + 1) {}

    void run(const double* f, std::size_t stride, std::size_t n, double c, double* out, std::size_t out_stride,
             std::size_t* arg, std::size_t arg_stride) {
        long k = -1;
        auto val = [&](std::size_t q) { return f[q * stride]; };
        for (std::size_t q = 0; q < n; ++q) {
            const double fq = val(q);
            if (!std::isfinite(fq)) continue;
            const double dq = static_cast<double>(q);
            double s = -kInf;
            while (k >= 0) {
                const double dv = static_cast<double>(v_[static_cast<std::size_t>(k)]);
                s = ((fq + c * dq * dq) - (val(v_[static_cast<std::size_t>(k)]) + c * dv * dv)) / (2.0 * c * (dq - dv));
                if (s <= z_[static_cast<std::size_t>(k)]) {
                    --k;
                } else {
                    break;
                }
            }
            ++k;
            v_[static_cast<std::size_t>(k)] = q;
            z_[static_cast<std::size_t>(k)] = k == 0 ? -kInf : s;
            z_[static_cast<std::size_t>(k) + 1] = kInf;
        }
        if (k < 0) {
            for (std::size_t p = 0; p < n; ++p) {
                out[p * out_stride] = kInf;
                arg[p * arg_stride] = p;
            }
            return;
        }
        std::size_t j = 0;
        for (std::size_t p = 0; p < n; ++p) {
            const double dp = static_cast<double>(p);
            while (z_[j + 1] < dp) ++j;
            const double d = dp - static_cast<double>(v_[j]);
            out[p * out_stride] = c * d * d + val(v_[j]);
            arg[p * arg_stride] = v_[j];
        }
    }

private:
    std::vector<std::size_t> v_;
    std::vector<double> z_;
};

// Quadratic kernel without pruning: separable envelope passes, axis 1 then
// axis 0. Backward runs the forward envelope on -u and negates.
void quadratic_sweep(const Kernel& kernel, Sweep dir, const GridFn& input, std::vector<double>& out,
                     std::vector<std::size_t>& arg) {
    const Grid& g = input.grid();
    const double sign = dir == Sweep::forward ? 1.0 : -1.0;
    std::vector<double> f(input.values().begin(), input.values().end());
    if (dir == Sweep::backward) {
        for (double& v : f) v = -v;
    }
    const double T = kernel.T();
    const std::size_t n0 = g.count(0), n1 = g.count(1);
    const double c0 = g.spacing(0) * g.spacing(0) / (2.0 * T);
    if (g.dim() == 1) {
        Envelope env(n0);
        env.run(f.data(), 1, n0, c0, out.data(), 1, arg.data(), 1);
    } else {
        const double c1 = g.spacing(1) * g.spacing(1) / (2.0 * T);
        std::vector<double> rows(n0 * n1);
        std::vector<std::size_t> argj(n0 * n1), argi(n0 * n1);
        Envelope env1(n1);
        for (std::size_t i = 0; i < n0; ++i) env1.run(f.data() + i * n1, 1, n1, c1, rows.data() + i * n1, 1, argj.data() + i * n1, 1);
        Envelope env0(n0);
        for (std::size_t j = 0; j < n1; ++j) env0.run(rows.data() + j, n1, n0, c0, out.data() + j, n1, argi.data() + j, n1);
        for (std::size_t k = 0; k < n0 * n1; ++k) {
            const std::size_t i = argi[k];
            const std::size_t j = argj[i * n1 + k % n1];
            arg[k] = g.flat(i, j);
        }
    }
    if (dir == Sweep::backward) {
        for (double& v : out) v = sign * v;
    }
}

Best optimize_at(const Kernel& kernel, Sweep dir, std::span<const double> u, std::size_t x) {
    const Grid& g = kernel.grid();
    const bool fwd = dir == Sweep::forward;
    const auto [i, j] = g.unflat(x);
    const long r0 = kernel.reach(0), r1 = kernel.reach(1);
    const long n0 = static_cast<long>(g.count(0)), n1 = static_cast<long>(g.count(1));
    const double h0 = g.spacing(0), h1 = g.dim() == 2 ? g.spacing(1) : 0.0;
    Best best{fwd ? kInf : -kInf, x, std::numeric_limits<double>::infinity()};
    const long ii = static_cast<long>(i), jj = static_cast<long>(j);
    for (long yi = std::max(0L, ii - r0); yi <= std::min(n0 - 1, ii + r0); ++yi) {
        for (long yj = std::max(0L, jj - r1); yj <= std::min(n1 - 1, jj + r1); ++yj) {
            const long di = fwd ? ii - yi : yi - ii;
            const long dj = fwd ? jj - yj : yj - jj;
            const double k = kernel(di, dj);
            if (k == kInf) continue;
            const std::size_t y = static_cast<std::size_t>(yi) * static_cast<std::size_t>(n1) + static_cast<std::size_t>(yj);
            const double uy = u[y];
            if (uy == kInf) continue;
            const double v = fwd ? uy + k : uy - k;
            const double dist2 = (di * h0) * (di * h0) + (dj * h1) * (dj * h1);
            const bool better = fwd ? v < best.value : v > best.value;
            if (better || (v == best.value && dist2 < best.dist2)) best = {v, y, dist2};
        }
    }
    return best;
}

}  // namespace

double EvolvedFn::tainted_fraction() const noexcept {
    if (tainted.empty()) return 0.0;
    const auto n = std::count(tainted.begin(), tainted.end(), std::uint8_t{1});
    return static_cast<double>(n) / static_cast<double>(tainted.size());
}

Kernel make_kernel(const Hamiltonian& H, double T, const Grid& grid, double lip, const SolverOptions& opts) {
    const double radius = opts.prune ? search_radius(H, lip, T) : kInf;
    return Kernel(H, T, grid, radius);
}

EvolvedFn sweep(const Kernel& kernel, Sweep dir, const GridFn& input, std::span<const std::uint8_t> input_taint,
                const SolverOptions& opts) {
    const Grid& g = input.grid();
    if (!(g == kernel.grid())) throw Error("sweep: kernel and input grids differ");
    if (!input_taint.empty() && input_taint.size() != g.size()) throw Error("sweep: taint mask size mismatch");
    if (dir == Sweep::backward && !input.all_finite()) throw Error("sweep: backward input contains +inf samples");

    std::vector<double> out(g.size());
    std::vector<std::size_t> arg(g.size());
    if (kernel.quadratic() && opts.fast_quadratic) {
        quadratic_sweep(kernel, dir, input, out, arg);
    } else {
        auto u = input.values();
        parallel_for(g.size(), [&](std::size_t b, std::size_t e) {
            for (std::size_t x = b; x < e; ++x) {
                Best best = optimize_at(kernel, dir, u, x);
                // An empty backward candidate set is reported as +inf and tainted.
                out[x] = std::isfinite(best.value) ? best.value : kInf;
                arg[x] = best.arg;
            }
        });
    }

    std::vector<std::uint8_t> tainted(g.size(), 0);
    for (std::size_t x = 0; x < g.size(); ++x) {
        const std::size_t a = arg[x];
        bool t = g.on_boundary(a) || !std::isfinite(out[x]);
        if (!input_taint.empty() && input_taint[a]) t = true;
        tainted[x] = t ? 1 : 0;
    }
    return EvolvedFn{GridFn(g, std::move(out)), std::move(tainted), std::move(arg), kernel.T(), kernel.hamiltonian(),
                     kernel.radius()};
}

EvolvedFn forward(const GridFn& u0, const Hamiltonian& H, double T, const SolverOptions& opts) {
    require_input(u0, H, T, "forward");
    Kernel k = make_kernel(H, T, u0.grid(), radius_lipschitz(u0), opts);
    return sweep(k, Sweep::forward, u0, {}, opts);
}

EvolvedFn backward(const GridFn& uT, const Hamiltonian& H, double T, const SolverOptions& opts) {
    require_input(uT, H, T, "backward");
    Kernel k = make_kernel(H, T, uT.grid(), radius_lipschitz(uT), opts);
    return sweep(k, Sweep::backward, uT, {}, opts);
}

ArgminWitness argmin_at(const Kernel& kernel, const GridFn& u0, std::size_t x) {
    if (!(u0.grid() == kernel.grid())) throw Error("argmin_at: kernel and input grids differ");
    if (x >= u0.size()) throw Error("argmin_at: index out of range");
    Best b = optimize_at(kernel, Sweep::forward, u0.values(), x);
    return {u0.grid().point(b.arg), b.arg, b.value};
}

ArgminWitness argmin_witness(const GridFn& u0, const Hamiltonian& H, double T, const Point& x, const SolverOptions& opts) {
    require_input(u0, H, T, "argmin_witness");
    Kernel k = make_kernel(H, T, u0.grid(), radius_lipschitz(u0), opts);
    return argmin_at(k, u0, u0.grid().nearest(x));
}

}  // namespace reach
