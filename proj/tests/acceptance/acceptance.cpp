// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "reach/construct.hpp"
#include "reach/hopflax.hpp"
#include "reach/levelset.hpp"
#include "reach/reachability.hpp"
#include "reach/scl.hpp"
#include "reach/transform.hpp"

using namespace reach;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

// Collects failures; the first few messages end up in the report line.
class Tally {
public:
    void require(bool ok, const std::string& what) {
        ++checks_;
        if (ok) return;
        ++failed_;
        if (failed_ <= 3) msgs_ << (failed_ > 1 ? "; " : "") << what;
    }
    Outcome done(const std::string& summary) const {
        std::ostringstream s;
        s << summary << ", " << checks_ - failed_ << "/" << checks_ << " checks";
        if (failed_) s << " [" << msgs_.str() << "]";
        return {failed_ == 0, s.str()};
    }

private:
    std::size_t checks_ = 0, failed_ = 0;
    std::ostringstream msgs_;
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

bool discretely_convex(const GridFn& f, double tol) {
    const Grid& g = f.grid();
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (g.on_boundary(k) || !std::isfinite(f[k])) continue;
        for (const Direction& d : g.dim() == 1 ? std::span<const Direction>(kDirections1D) : std::span<const Direction>(kDirections2D)) {
            const auto a = g.shifted(k, d.di, d.dj), b = g.shifted(k, -d.di, -d.dj);
            if (!a || !b || !std::isfinite(f[*a]) || !std::isfinite(f[*b])) continue;
            if (f[*a] + f[*b] - 2 * f[k] < -tol) return false;
        }
    }
    return true;
}

bool untainted_ok(const ReachabilityReport& r) { return r.verdict == Verdict::reachable; }

const Hamiltonian& pick(const std::vector<Hamiltonian>& hs, std::size_t k) { return hs[k % hs.size()]; }

// ---- 1

Outcome conjugate_oracle() {
    Tally t;
    std::mt19937_64 rng(1001);
    auto compare = [&](const GridFn& f, const std::string& label) {
        const Grid dual = default_dual_grid(f.grid(), lipschitz_estimate(f));
        const DualFn fast = conjugate_fast(f, dual), slow = conjugate_bruteforce(f, dual);
        double scale = std::max(1.0, f.max_abs_finite());
        for (double v : slow.samples().values())
            if (std::isfinite(v)) scale = std::max(scale, std::abs(v));
        double worst = 0.0;
        bool inf_match = true;
        for (std::size_t k = 0; k < dual.size(); ++k) {
            const double a = fast.samples()[k], b = slow.samples()[k];
            if (std::isinf(a) || std::isinf(b)) {
                inf_match = inf_match && a == b;
                continue;
            }
            worst = std::max(worst, std::abs(a - b));
        }
        t.require(inf_match && worst <= 1e-9 * scale, label + " diff " + fmt(worst));
    };
    const Grid line = Grid::line(-2.0, 2.0, 1024);
    for (int s = 0; s < 25; ++s) {
        const bool convex = s % 2 == 0;
        compare(GridFn(line, convex ? oracle::convex_samples(rng, line, 8, 3.0) : oracle::piecewise_linear(rng, line, 12, 2.0)),
                std::string(convex ? "convex" : "nonconvex") + " 1D #" + std::to_string(s));
    }
    const Grid plane = Grid::plane({-1.0, 1.0, 64}, {-1.0, 1.0, 64});
    for (int s = 0; s < 5; ++s) {
        std::vector<double> v = s % 2 ? oracle::piecewise_linear(rng, plane, 9, 1.0) : oracle::convex_samples(rng, plane, 6, 2.0);
        if (s % 2) {  // make the 2D sample genuinely two-dimensional
            std::uniform_real_distribution<double> U(-0.3, 0.3);
            for (double& x : v) x += U(rng);
        }
        compare(GridFn(plane, v), "2D #" + std::to_string(s));
    }
    return t.done("25 1D (n=1024) + 5 2D (64^2) samples");
}

// ---- 2

Outcome biconjugation() {
    Tally t;
    std::mt19937_64 rng(2002);
    const Grid g = Grid::line(-1.0, 1.0, 401);
    const double h = g.spacing(0);
    double worst_convex = 0.0;
    for (int s = 0; s < 20; ++s) {
        const bool convex = s < 10;
        const GridFn f(g, convex ? oracle::convex_samples(rng, g, 7, 2.0) : oracle::piecewise_linear(rng, g, 9, 1.0));
        const double lip = lipschitz_estimate(f);
        const Grid dual = Grid::line(-(lip + 1), lip + 1, 4001);
        const GridFn fss = conjugate_fast(conjugate_fast(f, dual).samples(), g).samples();
        const double scale = std::max(1.0, f.max_abs_finite());
        if (convex) {
            const double d = oracle::max_abs_diff(fss.values(), f.values());
            worst_convex = std::max(worst_convex, d / (h * lip));
            t.require(d <= 3 * h * lip, "convex #" + std::to_string(s) + " |f**-f| = " + fmt(d));
        } else {
            bool below = true;
            for (std::size_t k = 0; k < g.size(); ++k) below = below && fss[k] <= f[k] + 1e-9 * scale;
            t.require(below, "nonconvex #" + std::to_string(s) + " f** above f");
            t.require(discretely_convex(fss, 1e-9 * scale), "nonconvex #" + std::to_string(s) + " f** not convex");
        }
    }
    return t.done("10 convex (max |f**-f| = " + fmt(worst_convex) + " h lip) + 10 nonconvex");
}

// ---- 3

Outcome vee_fixture() {
    Tally t;
    const Grid g = Grid::line(-4.0, 4.0, 2049);
    const double h = g.spacing(0);
    const GridFn vee = GridFn::sample(g, [](Point p) { return std::abs(p[0]); });
    const ReachabilityReport r = check_fixpoint(vee, Hamiltonian::abs(), 1.0);
    t.require(r.verdict == Verdict::not_reachable, "vee verdict " + to_string(r.verdict));
    t.require(std::abs(r.max_residual - 1.0) <= 2 * h, "vee max_residual " + fmt(r.max_residual));
    t.require(std::abs(r.worst_point[0]) <= 2 * h, "vee worst point " + fmt(r.worst_point[0]));
    const ReachabilityReport ramp = check_fixpoint(GridFn::sample(g, [](Point p) { return p[0]; }), Hamiltonian::abs(), 1.0);
    t.require(ramp.verdict == Verdict::reachable, "ramp verdict " + to_string(ramp.verdict));
    return t.done("vee max_residual " + fmt(r.max_residual) + " at x=" + fmt(r.worst_point[0]) + ", ramp " + to_string(ramp.verdict));
}

// ---- 4

Outcome round_trip() {
    Tally t;
    const Grid g = Grid::line(-4.0, 4.0, 2049);
    const std::vector<std::pair<std::string, Hamiltonian>> hs{{"abs", Hamiltonian::abs()},
                                                              {"quadratic", Hamiltonian::quadratic()},
                                                              {"power_scaled 1.5", Hamiltonian::power_scaled(1.5)},
                                                              {"power_scaled 3", Hamiltonian::power_scaled(3.0)}};
    std::size_t targets = 0;
    double worst = 0.0;
    for (const auto& [name, H] : hs) {
        for (double T : {0.5, 1.0}) {
            for (std::uint64_t seed = 0; seed < 20; ++seed) {
                const GridFn u = random_reachable(H, T, g, 4000 + seed).uT;
                ++targets;
                for (double Tc : {T, T / 2}) {
                    const ReachabilityReport r = check_fixpoint(u, H, Tc);
                    worst = std::max(worst, r.max_residual / r.tol);
                    t.require(untainted_ok(r), name + " T=" + fmt(T) + " checked at " + fmt(Tc) + " seed " + std::to_string(seed) + ": " +
                                                   to_string(r.verdict));
                }
            }
        }
    }
    return t.done(std::to_string(targets) + " targets at T and T/2, worst residual/tol " + fmt(worst));
}

// ---- 5

struct Target {
    std::string kind;
    GridFn u;
};

std::vector<Target> target_suite(const Grid& g, std::mt19937_64& rng) {
    const std::vector<Hamiltonian> gen{Hamiltonian::abs(), Hamiltonian::quadratic(), Hamiltonian::power_scaled(1.5)};
    std::uniform_real_distribution<double> X(-1.5, 1.5), U(0.1, 1.0);
    std::vector<Target> out;
    for (std::size_t k = 0; k < 10; ++k) out.push_back({"reachable", random_reachable(pick(gen, k), 1.0, g, rng()).uT});
    for (std::size_t k = 0; k < 10; ++k) {
        // A V-shaped pit (depth 0.5, half-width 0.3) is far narrower than the
        // width-2 window every local minimum needs.
        const GridFn base = random_reachable(pick(gen, k), 1.0, g, rng()).uT;
        const double c = X(rng);
        out.push_back({"perturbed", GridFn::sample(g, [&](Point p) {
                           return base[g.nearest(p)] - 0.5 * std::max(0.0, 1.0 - std::abs(p[0] - c) / 0.3);
                       })});
    }
    for (int k = 0; k < 5; ++k) {
        std::vector<double> v = oracle::convex_samples(rng, g, 5, 1.0);
        for (double& x : v) x = -x;
        out.push_back({"concave", GridFn(g, v)});
    }
    for (int k = 0; k < 5; ++k) {
        std::vector<double> v(g.size());
        const double a = U(rng), b = U(rng);
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double x = g.point(i)[0];
            v[i] = a * x + b * std::max(0.0, x - 0.5) + 0.2 * std::tanh(x);
        }
        out.push_back({"monotone", GridFn(g, v)});
    }
    return out;
}

// Planar targets from unions of shapes: distance to the union, floored so
// at -delta. Passing ones keep every sublevel set a union of T-balls.
std::vector<Target> mask_suite(const Grid& g, double T) {
    auto disk = [](Point c, double r) { return [=](Point p) { return std::hypot(p[0] - c[0], p[1] - c[1]) - r; }; };
    auto square = [](Point c, double a) { return [=](Point p) { return std::max(std::abs(p[0] - c[0]), std::abs(p[1] - c[1])) - a; }; };
    using Shape = std::function<double(Point)>;
    auto target = [&](std::vector<Shape> shapes, double floor) {
        return GridFn::sample(g, [&](Point p) {
            double d = kInf;
            for (const Shape& s : shapes) d = std::min(d, s(p));
            return std::max(d, -floor);
        });
    };
    std::vector<Target> out;
    out.push_back({"disk", target({disk({0.0, 0.0}, 1.6)}, 0.5)});
    out.push_back({"two disks", target({disk({-0.8, 0.2}, 1.4), disk({0.9, -0.3}, 1.3)}, 0.25)});
    out.push_back({"three disks", target({disk({-1.0, -0.8}, 1.2), disk({1.0, -0.8}, 1.2), disk({0.0, 1.0}, 1.3)}, 0.15)});
    out.push_back({"half-plane", GridFn::sample(g, [](Point p) { return 0.6 * p[0] - 0.8 * p[1]; })});
    out.push_back({"stadium", GridFn::sample(g, [&](Point p) {
                       const double x = std::clamp(p[0], -1.0, 1.0);
                       return std::max(std::hypot(p[0] - x, p[1]) - 1.3, -(1.3 - T - 0.15));
                   })});
    // Failing ones: some sublevel set is narrower than 2T, by a margin that
    // puts the residual near 1, well clear of the default tolerance.
    out.push_back({"small square", target({square({0.0, 0.0}, 0.6)}, 0.6)});
    out.push_back({"small disk", target({disk({0.2, 0.1}, 0.5)}, 0.5)});
    out.push_back({"unfloored disk", target({disk({0.0, 0.0}, 1.6)}, 10.0)});
    out.push_back({"disk and square", target({disk({-1.2, 0.0}, 1.2), square({1.3, 0.4}, 0.9)}, 0.9)});
    out.push_back({"thin slab", GridFn::sample(g, [&](Point p) { return std::max(std::abs(p[1]) - 0.5, -0.5); })});
    return out;
}

Outcome characterizations() {
    Tally t;
    std::mt19937_64 rng(5005);

    // (a) fixpoint vs. per-point touching witnesses.
    const Grid g = Grid::line(-4.0, 4.0, 1025);
    const std::vector<Target> suite = target_suite(g, rng);
    const std::vector<Hamiltonian> hs{Hamiltonian::abs(), Hamiltonian::quadratic(), Hamiltonian::power_scaled(1.5)};
    std::size_t a_cmp = 0, a_skip = 0, a_reach = 0;
    for (std::size_t k = 0; k < suite.size(); ++k) {
        for (const Hamiltonian& H : hs) {
            const ReachabilityReport r = check_fixpoint(suite[k].u, H, 1.0);
            if (r.verdict == Verdict::inconclusive_boundary) {
                ++a_skip;
                continue;
            }
            const bool witnesses = touching_witnesses(suite[k].u, H, 1.0).complete();
            ++a_cmp;
            a_reach += r.verdict == Verdict::reachable;
            t.require(witnesses == (r.verdict == Verdict::reachable), "(a) " + suite[k].kind + " #" + std::to_string(k) + " under " + H.name());
        }
    }

    // (b) |p| in 1D: the discrete predicates agree exactly (no tolerance).
    FixpointOptions exact;
    exact.tol = 1e-12;
    InteriorBallOptions all;
    all.mode = LevelMode::all;
    std::size_t b_cmp = 0, b_skip = 0, b_reach = 0;
    for (std::size_t k = 0; k < suite.size(); ++k) {
        const GridFn& u = suite[k].u;
        const ReachabilityReport r = check_fixpoint(u, Hamiltonian::abs(), 1.0, exact);
        const InteriorBallReport ib = check_interior_ball(u, 1.0, all);
        const LocalMinimaReport lm = check_local_minima_1d(u, 1.0);
        const bool edge_min = std::any_of(lm.minima.begin(), lm.minima.end(), [](const LocalMinimum& m) { return m.tainted && !m.ok; });
        const bool fx = r.verdict == Verdict::reachable;
        const bool agree = fx == ib.pass && fx == lm.pass;
        // The three predicates draw their edge zones differently; a mismatch
        // is only excused when edge evidence exists on some side.
        if (r.verdict == Verdict::inconclusive_boundary || (!agree && (ib.tainted_failures > 0 || edge_min))) {
            ++b_skip;
            continue;
        }
        ++b_cmp;
        b_reach += fx;
        t.require(agree, "(b) " + suite[k].kind + " #" + std::to_string(k));
    }

    // (c) |p| in 2D on mask-derived targets, default tolerance and one-pixel band.
    const Grid p = Grid::plane({-4.0, 4.0, 128}, {-4.0, 4.0, 128});
    std::size_t c_cmp = 0, c_reach = 0;
    for (const Target& tg : mask_suite(p, 1.0)) {
        const ReachabilityReport r = check_fixpoint(tg.u, Hamiltonian::abs(), 1.0);
        const InteriorBallReport ib = check_interior_ball(tg.u, 1.0);
        ++c_cmp;
        const bool fx = r.verdict == Verdict::reachable;
        c_reach += fx;
        t.require(r.verdict != Verdict::inconclusive_boundary, "(c) " + tg.kind + " inconclusive");
        t.require(fx == ib.pass, "(c) " + tg.kind + " fixpoint " + to_string(r.verdict) + " vs interior ball " + (ib.pass ? "pass" : "fail"));
    }

    // Each part needs at least 30 (resp. 10) comparisons with both outcomes represented.
    t.require(a_cmp >= 30 && a_reach > 0 && a_reach < a_cmp, "(a) coverage");
    t.require(b_cmp >= 20 && b_reach > 0 && b_reach < b_cmp, "(b) coverage " + std::to_string(b_cmp));
    t.require(c_cmp == 10 && c_reach > 0 && c_reach < c_cmp, "(c) coverage");
    std::ostringstream s;
    s << "(a) " << a_cmp << " compared, " << a_skip << " inconclusive skipped; (b) " << b_cmp << " compared, " << b_skip
      << " skipped (edge-explained mismatch); (c) " << c_cmp << " compared (" << c_reach << " reachable)";
    return t.done(s.str());
}

// ---- 6

Outcome semiconcavity() {
    Tally t;
    const Hamiltonian H = Hamiltonian::power_scaled(1.5);
    std::size_t checked = 0;
    for (std::size_t n : {513u, 1025u, 2049u}) {
        const Grid g = Grid::line(-4.0, 4.0, n);
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const RandomTarget r = random_reachable(H, 1.0, g, 6000 + seed);
            SemiconcavityOptions opts;
            opts.tainted = r.tainted;
            const SemiconcavityReport rep = check_semiconcavity_power(r.uT, 1.5, 1.0, PowerConvention::scaled, opts);
            checked += rep.checked;
            t.require(rep.pass && rep.violations.empty(), "n=" + std::to_string(n) + " seed " + std::to_string(seed) + ": " +
                                                              std::to_string(rep.violations.size()) + " violations");
        }
    }
    return t.done("10 targets at n = 513, 1025, 2049, " + std::to_string(checked) + " second differences checked");
}

// ---- 7

Outcome structural() {
    Tally t;
    const Grid g = Grid::line(-4.0, 4.0, 1025);
    const std::vector<Hamiltonian> hs{Hamiltonian::quadratic(), Hamiltonian::power_scaled(1.5), Hamiltonian::power_scaled(3.0), Hamiltonian::abs()};
    for (std::uint64_t k = 0; k < 10; ++k) {
        const Hamiltonian& H = pick(hs, k);
        const GridFn a = random_reachable(H, 1.0, g, 7000 + k).uT, b = random_reachable(H, 1.0, g, 7100 + k).uT;
        const ReachabilityReport r = check_fixpoint(min_envelope({a, b}), H, 1.0);
        t.require(untainted_ok(r), "min pair " + std::to_string(k) + " under " + H.name() + ": " + to_string(r.verdict));
    }
    for (double alpha : {1.5, 2.0, 3.0}) {
        const Hamiltonian H = Hamiltonian::power_scaled(alpha);
        for (std::uint64_t k = 0; k < 3; ++k) {
            const GridFn u = random_reachable(H, 1.0, g, 7200 + k).uT;
            for (double lambda : {0.25, 0.5}) {
                const ReachabilityReport r = check_fixpoint(scale_target(u, lambda), H, 1.0);
                t.require(untainted_ok(r), "alpha " + fmt(alpha) + " lambda " + fmt(lambda) + ": " + to_string(r.verdict));
            }
        }
    }
    for (std::uint64_t k = 0; k < 3; ++k) {
        const GridFn u = random_reachable(Hamiltonian::abs(), 1.0, g, 7300 + k).uT;
        for (double lambda : {2.0, 5.0}) {
            const ReachabilityReport r = check_fixpoint(scale_target(u, lambda), Hamiltonian::abs(), 1.0);
            t.require(untainted_ok(r), "abs lambda " + fmt(lambda) + ": " + to_string(r.verdict));
        }
    }
    return t.done("10 min pairs, 18 power-like scalings, 6 abs scalings");
}

// ---- 8

Outcome scl() {
    Tally t;
    const Grid g = Grid::line(-3.0, 3.0, 601);
    const double h = g.spacing(0);

    // (a) Riemann shock: speed (H(1) - H(0)) / (1 - 0) = 1/2.
    const EvolvedDensity shock =
        scl_forward(DensityFn(GridFn::sample(g, [](Point p) { return p[0] < 0 ? 1.0 : 0.0; })), Hamiltonian::quadratic(), 1.0);
    double position = kInf;
    for (std::size_t k = 1; k < g.size(); ++k) {
        if (shock.tainted[k] || shock.tainted[k - 1]) continue;
        if (shock.v[k - 1] >= 0.5 && shock.v[k] < 0.5) {
            position = 0.5 * (g.point(k - 1)[0] + g.point(k)[0]);
            break;
        }
    }
    t.require(std::abs(position - 0.5) <= 2 * h, "shock at " + fmt(position));

    // (b) Rarefaction fan x / T.
    const EvolvedDensity fan =
        scl_forward(DensityFn(GridFn::sample(g, [](Point p) { return p[0] < 0 ? 0.0 : 1.0; })), Hamiltonian::quadratic(), 1.0);
    double fan_err = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
        const double x = g.point(k)[0];
        if (fan.tainted[k] || std::abs(x) <= 3 * h || std::abs(x - 1.0) <= 3 * h) continue;
        fan_err = std::max(fan_err, std::abs(fan.v[k] - std::clamp(x, 0.0, 1.0)));
    }
    t.require(fan_err <= 3 * h, "rarefaction error " + fmt(fan_err));

    // (c) Sign condition vs. fixpoint of the primitive. Densities vanish
    // within 2T + 2h of the edges so no certifying window is clipped.
    const Grid d = Grid::line(-6.0, 6.0, 481);  // h = 0.025, T = 1 is 40 cells
    std::mt19937_64 rng(8008);
    std::uniform_int_distribution<long> len(1, 90);
    std::uniform_int_distribution<int> sgn(-1, 1);
    std::uniform_real_distribution<double> mag(0.5, 1.0);
    auto gap_density = [&](long gap) {
        std::vector<double> v(d.size(), 0.0);
        for (std::size_t k = 150; k <= 200; ++k) v[k] = -mag(rng);
        for (std::size_t k = 200 + static_cast<std::size_t>(gap); k <= 250 + static_cast<std::size_t>(gap); ++k) v[k] = mag(rng);
        return v;
    };
    std::size_t agree = 0, passes = 0;
    bool exact_gap = false, near_miss = false;
    for (int s = 0; s < 20; ++s) {
        std::vector<double> v;
        if (s == 0) {
            v = gap_density(80);  // gap exactly 2T
        } else if (s == 1) {
            v = gap_density(76);  // 2T - 4h
        } else {
            v.assign(82, 0.0);
            while (v.size() < d.size() - 82) {
                const double value = sgn(rng) * mag(rng);
                for (long k = len(rng); k > 0 && v.size() < d.size() - 82; --k) v.push_back(value);
            }
            v.resize(d.size(), 0.0);
        }
        const DensityFn dens{GridFn(d, v)};
        const ReachabilityReport r = check_scl(dens, Hamiltonian::abs(), 1.0);
        const bool sign_ok = check_scl_abs(dens, 1.0).pass;
        const bool ok = sign_ok == (r.verdict == Verdict::reachable) && r.verdict != Verdict::inconclusive_boundary;
        agree += ok;
        passes += sign_ok;
        if (s == 0) exact_gap = sign_ok && r.verdict == Verdict::reachable;
        if (s == 1) near_miss = !sign_ok && r.verdict == Verdict::not_reachable;
        t.require(ok, "density " + std::to_string(s) + " sign " + (sign_ok ? "pass" : "fail") + " vs fixpoint " + to_string(r.verdict));
    }
    t.require(exact_gap, "exact gap 2T not accepted");
    t.require(near_miss, "near miss 2T-4h not rejected");
    t.require(passes > 1 && passes < 19, "densities do not cover both verdicts");
    return t.done("shock at " + fmt(position) + " (h=" + fmt(h) + "), fan error " + fmt(fan_err / h) + "h, sign iff " + std::to_string(agree) + "/20");
}

// ---- 9

Outcome solver_properties() {
    Tally t;
    const std::vector<Hamiltonian> hs{Hamiltonian::abs(), Hamiltonian::quadratic(), Hamiltonian::power_scaled(1.5), Hamiltonian::power_scaled(3.0)};
    double worst_lower = 0.0, worst_semigroup = 0.0;
    for (std::uint64_t k = 0; k < 20; ++k) {
        const Hamiltonian& H = pick(hs, k);
        const Grid g = k % 5 == 4 ? Grid::plane({-3.0, 3.0, 61}, {-3.0, 3.0, 61}) : Grid::line(-4.0, 4.0, 1025);
        const double h = g.max_spacing();
        const GridFn u = random_lipschitz(g, 9000 + k);
        const double lip = lipschitz_estimate(u);

        const ReachabilityReport r = check_fixpoint(u, H, 1.0);
        double lower = 0.0;
        for (std::size_t x = 0; x < g.size(); ++x)
            if (!r.tainted[x]) lower = std::max(lower, -r.residual[x]);
        worst_lower = std::max(worst_lower, lower / r.tol);
        t.require(lower <= r.tol, "lower bound #" + std::to_string(k) + " " + H.name() + " overshoot " + fmt(lower));

        const EvolvedFn whole = forward(u, H, 1.0);
        const EvolvedFn half = forward(u, H, 0.4);
        const EvolvedFn both = sweep(make_kernel(H, 0.6, g, radius_lipschitz(half.fn)), Sweep::forward, half.fn, half.tainted);
        const double tol = 4 * h * (lip + 1);
        double gap = 0.0;
        for (std::size_t x = 0; x < g.size(); ++x)
            if (!whole.tainted[x] && !both.tainted[x]) gap = std::max(gap, std::abs(whole.fn[x] - both.fn[x]));
        worst_semigroup = std::max(worst_semigroup, gap / tol);
        t.require(gap <= tol, "semigroup #" + std::to_string(k) + " " + H.name() + " gap " + fmt(gap));
    }
    return t.done("20 inputs (16 1D, 4 2D), worst lower-bound overshoot/tol " + fmt(worst_lower) + ", semigroup gap/tol " + fmt(worst_semigroup));
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double budget_s;  // <= 0: no runtime bound
        Outcome (*run)();
    };
    const Criterion criteria[] = {
        {1, "conjugate oracle equivalence", 2.0, conjugate_oracle},
        {2, "biconjugation", 0.0, biconjugation},
        {3, "vee and ramp fixtures", 1.0, vee_fixture},
        {4, "round-trip of reachable targets", 30.0, round_trip},
        {5, "characterization equivalences", 120.0, characterizations},
        {6, "semiconcavity necessary condition", 0.0, semiconcavity},
        {7, "structural properties", 0.0, structural},
        {8, "conservation laws", 30.0, scl},
        {9, "lower bound and semigroup", 0.0, solver_properties},
    };
    bool all = true;
    for (const Criterion& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.budget_s > 0 && secs > c.budget_s) {
            o.pass = false;
            o.detail += " [over the " + fmt(c.budget_s) + " s budget]";
        }
        all = all && o.pass;
        std::printf("%s %d %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    return all ? 0 : 1;
}
