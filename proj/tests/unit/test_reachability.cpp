#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "reach/construct.hpp"
#include "reach/error.hpp"
#include "reach/reachability.hpp"

using namespace reach;

namespace {

GridFn vee(const Grid& g) {
    return GridFn::sample(g, [](Point p) { return std::abs(p[0]); });
}

// Random 1D target of one of three kinds: forward image, forward image with a
// narrow dip carved in (usually not reachable), raw piecewise-linear data.
GridFn mixed_target(std::mt19937_64& rng, const Grid& g, const Hamiltonian& H, double T, int kind) {
    if (kind == 2) return GridFn(g, oracle::piecewise_linear(rng, g, 7, 1.0));
    RandomTarget r = random_reachable(H, T, g, rng());
    if (kind == 0) return r.uT;
    std::vector<double> v(r.uT.values().begin(), r.uT.values().end());
    std::uniform_int_distribution<std::size_t> at(g.size() / 3, 2 * g.size() / 3);
    const std::size_t c = at(rng);
    const double h = g.spacing(0);
    for (std::size_t k = 0; k < v.size(); ++k) v[k] -= std::max(0.0, 0.3 - std::abs(static_cast<double>(k) - static_cast<double>(c)) * h * 3);
    return GridFn(g, v);
}

}  // namespace

TEST_SUITE("reachability") {

TEST_CASE("vee is not reachable under |p|") {
    const Grid g = Grid::line(-4.0, 4.0, 801);
    const double h = g.spacing(0);
    const ReachabilityReport r = check_fixpoint(vee(g), Hamiltonian::abs(), 1.0);
    CHECK(r.verdict == Verdict::not_reachable);
    // S+ S- |x| = max(|x| - 1, 0) + 1, so the residual at 0 is 1.
    CHECK(std::abs(r.residual[400] - 1.0) <= 2 * h);
    CHECK(std::abs(r.max_residual - 1.0) <= 2 * h);
    CHECK(r.worst_point[0] == doctest::Approx(0.0).epsilon(2 * h));
    CHECK(r.tol == doctest::Approx(4 * h * 2));
}

TEST_CASE("ramp is reachable under |p|") {
    const Grid g = Grid::line(-4.0, 4.0, 801);
    const ReachabilityReport r = check_fixpoint(GridFn::sample(g, [](Point p) { return p[0]; }), Hamiltonian::abs(), 1.0);
    CHECK(r.verdict == Verdict::reachable);
    CHECK(r.max_residual <= r.tol);
}

TEST_CASE("concave targets are reachable") {
    const Grid g = Grid::line(-4.0, 4.0, 801);
    const GridFn cap = GridFn::sample(g, [](Point p) { return -p[0] * p[0] / 4; });
    for (const Hamiltonian& H : {Hamiltonian::quadratic(), Hamiltonian::abs(), Hamiltonian::power_scaled(1.5), Hamiltonian::power_scaled(3.0)}) {
        for (double T : {0.5, 1.0}) {
            const ReachabilityReport r = check_fixpoint(cap, H, T);
            CHECK_MESSAGE(r.verdict == Verdict::reachable, H.name(), " T=", T, " residual ", r.max_residual);
        }
    }
}

TEST_CASE("inconclusive when the boundary dominates") {
    const Grid g = Grid::line(0.0, 1.0, 101);
    const ReachabilityReport r = check_fixpoint(GridFn::sample(g, [](Point p) { return p[0]; }), Hamiltonian::abs(), 2.0);
    CHECK(r.tainted_fraction > 0.5);
    CHECK(r.verdict == Verdict::inconclusive_boundary);
    FixpointOptions opts;
    opts.taint_cap = 1.0;
    CHECK(check_fixpoint(GridFn::sample(g, [](Point p) { return p[0]; }), Hamiltonian::abs(), 2.0, opts).verdict != Verdict::not_reachable);
}

TEST_CASE("check_fixpoint errors") {
    const Grid g = Grid::line(0.0, 1.0, 11);
    CHECK_THROWS_AS(check_fixpoint(vee(g), Hamiltonian::abs(), 0.0), Error);
    CHECK_THROWS_AS(check_fixpoint(GridFn(g, std::vector<double>(11, kInf)), Hamiltonian::abs(), 1.0), Error);
    FixpointOptions opts;
    opts.tol = 0.0;
    CHECK_THROWS_AS(check_fixpoint(vee(g), Hamiltonian::abs(), 1.0, opts), Error);
}

TEST_CASE("touching_witness examples") {
    const Grid g = Grid::line(-4.0, 4.0, 401);
    const auto zero = touching_witness(GridFn::sample(g, [](Point) { return 0.0; }), Hamiltonian::abs(), 1.0, {0.0, 0.0});
    REQUIRE(zero.has_value());
    CHECK(zero->x0[0] == 0.0);
    CHECK(zero->c == 0.0);
    CHECK(zero->gap == 0.0);

    const GridFn ramp = GridFn::sample(g, [](Point p) { return p[0]; });
    const auto w = touching_witness(ramp, Hamiltonian::abs(), 1.0, {0.0, 0.0});
    REQUIRE(w.has_value());
    // phi(z) = c on the ball around x0, touching the ramp at 0.
    CHECK(w->contact == doctest::Approx(0.0));
    CHECK(w->gap == 0.0);
    CHECK(std::abs(w->x0[0]) <= 1.0 + g.spacing(0));
    CHECK(w->c == doctest::Approx(w->x0[0] + 1.0));
    CHECK(oracle::touching_exists(ramp, [&](Point d) { return std::abs(d[0]) <= 1.0 + 0.5 * g.spacing(0) ? 0.0 : oracle::inf; }, 200, 1e-12));

    CHECK_FALSE(touching_witness(vee(g), Hamiltonian::abs(), 1.0, {0.0, 0.0}).has_value());
    CHECK_FALSE(oracle::touching_exists(vee(g), [&](Point d) { return std::abs(d[0]) <= 1.0 + 0.5 * g.spacing(0) ? 0.0 : oracle::inf; }, 200, 0.1));

    CHECK_THROWS_WITH_AS(touching_witness(ramp, Hamiltonian::abs(), 1.0, {-3.9, 0.0}), doctest::Contains("boundary-tainted point"), Error);
}

TEST_CASE("fixpoint verdict equals witness existence, against a brute-force touching oracle") {
    std::mt19937_64 rng(1234);
    const Grid g = Grid::line(-3.0, 3.0, 121);
    const double h = g.spacing(0);
    struct Case {
        Hamiltonian H;
        std::function<double(Point)> k;
    };
    const double T = 0.75;
    const std::vector<Case> cases{
        {Hamiltonian::abs(), [&](Point d) { return std::abs(d[0]) <= T + 0.5 * h * (1 + 1e-9) ? 0.0 : oracle::inf; }},
        {Hamiltonian::quadratic(), [&](Point d) { return d[0] * d[0] / (2 * T); }},
        {Hamiltonian::power_scaled(3.0), [&](Point d) { return T * oracle::radial_conjugate([](double p) { return p * p * p / 3; }, std::abs(d[0]) / T); }},
    };
    int reachable = 0, not_reachable = 0;
    for (const Case& c : cases) {
        for (int t = 0; t < 9; ++t) {
            const GridFn u = mixed_target(rng, g, c.H, T, t % 3);
            const ReachabilityReport r = check_fixpoint(u, c.H, T);
            const WitnessScan scan = touching_witnesses(u, c.H, T);
            if (r.verdict == Verdict::inconclusive_boundary) continue;
            CHECK((r.verdict == Verdict::reachable) == scan.complete());
            (r.verdict == Verdict::reachable ? reachable : not_reachable)++;
            // Pointwise agreement with the oracle on a subsample of untainted points.
            for (std::size_t x = 10; x < g.size(); x += 11) {
                if (scan.tainted[x]) continue;
                CHECK(scan.witnesses[x].has_value() == oracle::touching_exists(u, c.k, x, scan.tol));
            }
        }
    }
    CHECK(reachable > 0);
    CHECK(not_reachable > 0);
}

TEST_CASE("forward images are reachable and stay reachable for smaller T") {
    const Grid g = Grid::line(-4.0, 4.0, 401);
    for (const Hamiltonian& H : {Hamiltonian::abs(), Hamiltonian::quadratic(), Hamiltonian::power_scaled(1.5), Hamiltonian::power(3.0)}) {
        for (std::uint64_t seed = 1; seed <= 4; ++seed) {
            const RandomTarget t = random_reachable(H, 1.0, g, seed);
            const ReachabilityReport r = check_fixpoint(t.uT, H, 1.0);
            CHECK_MESSAGE(r.verdict == Verdict::reachable, H.name(), " seed ", seed, " residual ", r.max_residual);
            CHECK(check_fixpoint(t.uT, H, 0.5).verdict == Verdict::reachable);
        }
    }
}

TEST_CASE("min of reachable targets is reachable; power targets are star-shaped") {
    const Grid g = Grid::line(-4.0, 4.0, 401);
    for (const Hamiltonian& H : {Hamiltonian::power_scaled(1.5), Hamiltonian::power_scaled(3.0), Hamiltonian::power(2.0)}) {
        for (std::uint64_t seed = 10; seed < 13; ++seed) {
            const GridFn a = random_reachable(H, 1.0, g, seed).uT, b = random_reachable(H, 1.0, g, seed + 100).uT;
            CHECK(check_fixpoint(min_envelope({a, b}), H, 1.0).verdict == Verdict::reachable);
            for (double lambda : {0.25, 0.5, 0.75}) CHECK(check_fixpoint(scale_target(a, lambda), H, 1.0).verdict == Verdict::reachable);
        }
    }
    for (std::uint64_t seed = 20; seed < 23; ++seed) {
        const GridFn a = random_reachable(Hamiltonian::abs(), 1.0, g, seed).uT;
        for (double lambda : {0.25, 2.0, 5.0}) CHECK(check_fixpoint(scale_target(a, lambda), Hamiltonian::abs(), 1.0).verdict == Verdict::reachable);
    }
}

TEST_CASE("2D fixpoint: cones are reachable, a sharp well is not") {
    const Grid g = Grid::plane({-2.0, 2.0, 41}, {-2.0, 2.0, 41});
    const GridFn cones = cone_target(Hamiltonian::quadratic(), 0.5, {{{0.0, 0.0}, -1.0}, {{0.8, 0.4}, -0.7}}, g);
    CHECK(check_fixpoint(cones, Hamiltonian::quadratic(), 0.5).verdict == Verdict::reachable);
    // Residual at the tip is T for |p|; the grid must resolve it: tol = 4h(lip+1) = 0.4.
    const Grid fine = Grid::plane({-2.0, 2.0, 81}, {-2.0, 2.0, 81});
    const GridFn well = GridFn::sample(fine, [](Point p) { return std::hypot(p[0], p[1]); });
    CHECK(check_fixpoint(well, Hamiltonian::abs(), 1.0).verdict == Verdict::not_reachable);
    CHECK(check_fixpoint(well, Hamiltonian::quadratic(), 1.0).verdict == Verdict::not_reachable);
}

TEST_CASE("semiconcavity passes on evolved targets (1 < alpha < 2)") {
    const Grid g = Grid::line(-4.0, 4.0, 801);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const RandomTarget t = random_reachable(Hamiltonian::power_scaled(1.5), 1.0, g, seed);
        SemiconcavityOptions opts;
        opts.tainted = t.tainted;
        const SemiconcavityReport r = check_semiconcavity_power(t.uT, 1.5, 1.0, PowerConvention::scaled, opts);
        CHECK(r.branch == "alpha<2");
        CHECK(r.checked > 0);
        CHECK_MESSAGE(r.pass, "seed ", seed, " violations ", r.violations.size());
    }
}

TEST_CASE("semiconcavity passes on evolved targets (alpha > 2, unscaled convention)") {
    const Grid g = Grid::line(-4.0, 4.0, 801);
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const RandomTarget t = random_reachable(Hamiltonian::power(3.0), 1.0, g, seed);
        SemiconcavityOptions opts;
        opts.tainted = t.tainted;
        const SemiconcavityReport r = check_semiconcavity_power(t.uT, 3.0, 1.0, PowerConvention::unscaled, opts);
        CHECK(r.branch == "alpha>2");
        CHECK(r.T_effective == 3.0);
        CHECK(r.pass);
    }
}

TEST_CASE("semiconcavity examples and errors") {
    const Grid g = Grid::line(-2.0, 2.0, 401);
    const SemiconcavityReport v = check_semiconcavity_power(vee(g), 1.5, 1.0, PowerConvention::scaled);
    CHECK_FALSE(v.pass);
    REQUIRE(v.violations.size() == 1);
    CHECK(v.violations[0].x[0] == doctest::Approx(0.0));

    const GridFn affine = GridFn::sample(g, [](Point p) { return 0.7 * p[0] - 1.0; });
    for (double alpha : {1.5, 2.0, 3.0}) CHECK(check_semiconcavity_power(affine, alpha, 1.0, PowerConvention::scaled).pass);

    // alpha = 2: D^2 u <= 1/T.
    const GridFn mild = GridFn::sample(g, [](Point p) { return 0.4 * p[0] * p[0]; });
    const GridFn steep = GridFn::sample(g, [](Point p) { return 1.0 * p[0] * p[0]; });
    CHECK(check_semiconcavity_power(mild, 2.0, 1.0, PowerConvention::scaled).pass);
    CHECK_FALSE(check_semiconcavity_power(steep, 2.0, 1.0, PowerConvention::scaled).pass);

    // A strict local maximum must have D^2 <= 0 up to slack.
    const GridFn peak = GridFn::sample(g, [](Point p) { return -std::abs(p[0]); });
    const SemiconcavityReport pk = check_semiconcavity_power(peak, 1.5, 1.0, PowerConvention::scaled);
    CHECK(pk.local_maxima == 1);
    CHECK(pk.pass);

    CHECK_THROWS_AS(check_semiconcavity_power(affine, 1.0, 1.0, PowerConvention::scaled), Error);
    CHECK_THROWS_AS(check_semiconcavity_power(affine, 1.5, 0.0, PowerConvention::scaled), Error);
}

TEST_CASE("2D semiconcavity uses diagonals") {
    const Grid g = Grid::plane({-1.0, 1.0, 41}, {-1.0, 1.0, 41});
    const GridFn ridge = GridFn::sample(g, [](Point p) { return std::abs(p[0] - p[1]); });
    const SemiconcavityReport r = check_semiconcavity_power(ridge, 2.0, 1.0, PowerConvention::scaled);
    CHECK_FALSE(r.pass);
    const GridFn cap = GridFn::sample(g, [](Point p) { return -(p[0] * p[0] + p[1] * p[1]); });
    CHECK(check_semiconcavity_power(cap, 2.0, 1.0, PowerConvention::scaled).pass);
}

}  // TEST_SUITE
