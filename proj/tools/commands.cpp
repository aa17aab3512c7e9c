#include "commands.hpp"

#include <cmath>
#include <cstring>
#include <functional>
#include <iostream>
#include <sstream>

#include "reach/construct.hpp"
#include "reach/error.hpp"
#include "reach/hopflax.hpp"
#include "reach/io.hpp"
#include "reach/levelset.hpp"
#include "reach/reachability.hpp"
#include "reach/scl.hpp"
#include "reach/transform.hpp"

namespace reach::cli {

using io::json;

namespace {

json point_json(const Grid& g, const Point& p) {
    if (g.dim() == 1) return p[0];
    return json::array({p[0], p[1]});
}

json number_or_inf(double v) { return std::isfinite(v) ? json(v) : json("inf"); }

json mask_json(const std::vector<std::uint8_t>& m) {
    json a = json::array();
    for (auto b : m) a.push_back(b ? 1 : 0);
    return a;
}

int verdict_exit(Verdict v) {
    switch (v) {
        case Verdict::reachable:
            return kOk;
        case Verdict::not_reachable:
            return kFail;
        case Verdict::inconclusive_boundary:
            return kInconclusive;
    }
    return kUsage;
}

// Writes the report (atomically) and prints either the JSON or the summary.
int finish(json report, int code, const Output& o, const std::string& summary) {
    report["exit_code"] = code;
    const std::string text = report.dump(2) + "\n";
    if (!o.report.empty()) io::write_file_atomic(o.report, text);
    if (o.json) {
        std::cout << text;
    } else {
        std::cout << summary << "\n";
    }
    return code;
}

SolverOptions solver(bool no_prune) {
    SolverOptions s;
    s.prune = !no_prune;
    return s;
}

json fixpoint_json(const ReachabilityReport& r, const Grid& g) {
    return {{"verdict", to_string(r.verdict)},
            {"max_residual", r.max_residual},
            {"worst_index", r.worst_index},
            {"worst_point", point_json(g, r.worst_point)},
            {"tainted_fraction", r.tainted_fraction},
            {"tol", r.tol},
            {"taint_cap", r.taint_cap},
            {"lip", r.lip},
            {"radius", number_or_inf(r.radius)}};
}

std::string fixpoint_summary(const ReachabilityReport& r, const Grid& g) {
    std::ostringstream s;
    s << to_string(r.verdict) << " max_residual=" << io::format_number(r.max_residual) << " at x=";
    s << io::format_number(r.worst_point[0]);
    if (g.dim() == 2) s << "," << io::format_number(r.worst_point[1]);
    s << " tol=" << io::format_number(r.tol) << " tainted_fraction=" << io::format_number(r.tainted_fraction);
    return s.str();
}

void write_plot(const Output& o, const Grid& g, std::span<const double> values, const std::string& column) {
    if (!o.plot.empty()) io::write_file_atomic(o.plot, io::plot_csv(g, values, column));
}

json evolved_json(const GridFn& fn, const std::vector<std::uint8_t>& tainted) {
    json j = io::to_json(fn);
    j["tainted"] = mask_json(tainted);
    return j;
}

std::vector<Anchor> anchors_from_json(const json& j) {
    if (!j.is_array()) throw Error("anchors must be an array of {\"x\":..., \"c\":...}");
    std::vector<Anchor> out;
    for (const json& a : j) {
        if (!a.is_object() || !a.contains("x") || !a.contains("c")) throw Error("anchor needs \"x\" and \"c\"");
        Anchor an;
        const json& x = a["x"];
        if (x.is_number()) {
            an.x = {x.get<double>(), 0.0};
        } else if (x.is_array() && !x.empty() && x.size() <= 2 && x[0].is_number()) {
            an.x = {x[0].get<double>(), x.size() == 2 ? x[1].get<double>() : 0.0};
        } else {
            throw Error("anchor x must be a number or [x] / [x, y]");
        }
        if (!a["c"].is_number()) throw Error("anchor c must be a number");
        an.c = a["c"].get<double>();
        out.push_back(an);
    }
    return out;
}

}  // namespace

int run_transform(const TransformArgs& a, const Output& o) {
    GridFn f = io::read_gridfn(a.in);
    const double lip = lipschitz_estimate(f);
    const Grid dual = a.dual.empty() ? default_dual_grid(f.grid(), lip) : io::grid_from_json(io::read_json(a.dual));
    if (a.method != "fast" && a.method != "bruteforce") throw Error("--method must be fast or bruteforce");
    const DualFn d = a.method == "fast" ? conjugate_fast(f, dual) : conjugate_bruteforce(f, dual);
    json out = io::to_json(d.samples());
    out["primal_radius"] = number_or_inf(d.primal_radius());
    if (!a.out.empty()) io::write_file_atomic(a.out, out.dump() + "\n");
    write_plot(o, dual, d.samples().values(), "conjugate");
    json rep{{"command", "transform"},
             {"config", {{"in", a.in}, {"method", a.method}, {"dual", io::to_json(dual)}, {"lip", lip}}},
             {"primal_radius", number_or_inf(d.primal_radius())}};
    return finish(rep, kOk, o, "conjugate on " + std::to_string(dual.size()) + " dual samples");
}

int run_solve(const SolveArgs& a, const Output& o) {
    if (a.dir != "forward" && a.dir != "backward") throw Error("--dir must be forward or backward");
    const Hamiltonian H = io::hamiltonian_from_json(io::read_json(a.h));
    const GridFn u = io::read_gridfn(a.in);
    const SolverOptions s = solver(a.no_prune);
    const EvolvedFn e = a.dir == "forward" ? forward(u, H, a.t, s) : backward(u, H, a.t, s);
    if (!a.out.empty()) io::write_file_atomic(a.out, evolved_json(e.fn, e.tainted).dump() + "\n");
    write_plot(o, e.fn.grid(), e.fn.values(), "value");
    json rep{{"command", "solve"},
             {"config",
              {{"dir", a.dir}, {"hamiltonian", io::to_json(H)}, {"T", a.t}, {"in", a.in}, {"prune", s.prune}, {"radius", number_or_inf(e.radius)}}},
             {"tainted_fraction", e.tainted_fraction()}};
    return finish(rep, kOk, o, a.dir + " T=" + io::format_number(a.t) + " tainted_fraction=" + io::format_number(e.tainted_fraction()));
}

int run_check_hj(const CheckHjArgs& a, const Output& o) {
    const Hamiltonian H = io::hamiltonian_from_json(io::read_json(a.h));
    const GridFn u = io::read_gridfn(a.in);
    FixpointOptions fo;
    fo.tol = a.tol;
    fo.taint_cap = a.taint_cap;
    fo.solver = solver(a.no_prune);
    const ReachabilityReport r = check_fixpoint(u, H, a.t, fo);
    const Grid& g = u.grid();
    json rep = fixpoint_json(r, g);
    rep["command"] = "check hj";
    rep["config"] = {{"hamiltonian", io::to_json(H)}, {"T", a.t}, {"in", a.in}, {"tol", r.tol},          {"taint_cap", r.taint_cap},
                     {"prune", fo.solver.prune},      {"radius", number_or_inf(r.radius)}, {"lip", r.lip}};
    if (a.witnesses) {
        const WitnessScan scan = touching_witnesses(u, H, a.t, fo);
        json found = json::array(), missing = json::array();
        for (std::size_t k = 0; k < scan.witnesses.size(); ++k) {
            if (scan.tainted[k]) continue;
            if (const auto& w = scan.witnesses[k]) {
                found.push_back({{"x", point_json(g, w->x)}, {"x0", point_json(g, w->x0)}, {"c", w->c}, {"contact", w->contact}, {"gap", w->gap}});
            } else {
                missing.push_back(point_json(g, g.point(k)));
            }
        }
        rep["witnesses"] = std::move(found);
        rep["witness_missing"] = std::move(missing);
        rep["witnesses_complete"] = scan.complete();
    }
    write_plot(o, g, r.residual, "residual");
    return finish(rep, verdict_exit(r.verdict), o, fixpoint_summary(r, g));
}

int run_check_levelset(const CheckLevelsetArgs& a, const Output& o) {
    const GridFn u = io::read_gridfn(a.in);
    const Grid& g = u.grid();
    InteriorBallOptions ib;
    if (!a.levels.empty()) {
        ib.mode = LevelMode::explicit_list;
        ib.levels = a.levels;
    } else if (a.all) {
        ib.mode = LevelMode::all;
    }
    ib.band_px = a.band;
    const InteriorBallReport r = check_interior_ball(u, a.t, ib);

    json failures = json::array();
    for (const LevelFailure& f : r.failures) failures.push_back({{"level", f.level}, {"x", point_json(g, f.x)}});
    const char* mode = ib.mode == LevelMode::explicit_list ? "explicit" : (ib.mode == LevelMode::all ? "all" : "auto");
    json rep{{"command", "check levelset"},
             {"config",
              {{"T", a.t}, {"in", a.in}, {"mode", mode}, {"levels", r.levels}, {"band_px", r.band_px}, {"taint_distance", r.taint_distance},
               {"quantized", ib.quantized}}},
             {"verdict", r.pass ? "pass" : "fail"},
             {"failure_count", r.failure_count},
             {"tainted_failures", r.tainted_failures},
             {"forgiven", r.forgiven},
             {"failures", std::move(failures)}};

    if (g.dim() == 1) {
        const LocalMinimaReport lm = check_local_minima_1d(u, a.t);
        json minima = json::array();
        for (const LocalMinimum& m : lm.minima)
            minima.push_back({{"first", g.point(m.first)[0]}, {"last", g.point(m.last)[0]}, {"value", m.value}, {"ok", m.ok}, {"tainted", m.tainted}});
        rep["local_minima"] = {{"pass", lm.pass}, {"window_cells", lm.window_cells}, {"minima", std::move(minima)}};
    }
    if (!a.pgm.empty()) {
        if (g.dim() != 2) throw Error("--pgm needs a 2D input");
        io::write_file_atomic(a.pgm + "-failing.pgm", io::pgm(g, r.failing));
        for (std::size_t l = 0; l < r.levels.size() && ib.mode == LevelMode::explicit_list; ++l) {
            const SublevelMask m = sublevel_mask(u, r.levels[l]);
            io::write_file_atomic(a.pgm + "-level" + std::to_string(l) + ".pgm", io::pgm(g, m.bits));
            io::write_file_atomic(a.pgm + "-open" + std::to_string(l) + ".pgm", io::pgm(g, ball_opening(m, a.t).bits));
        }
    }
    if (!o.plot.empty()) {
        std::vector<double> bits(r.failing.begin(), r.failing.end());
        write_plot(o, g, bits, "failing");
    }
    const std::string summary = std::string(r.pass ? "pass" : "fail") + " levels=" + std::to_string(r.levels.size()) +
                                " failures=" + std::to_string(r.failure_count) + " tainted=" + std::to_string(r.tainted_failures);
    return finish(rep, r.pass ? kOk : kFail, o, summary);
}

int run_check_scl(const SclArgs& a, const Output& o) {
    const Hamiltonian H = io::hamiltonian_from_json(io::read_json(a.flux));
    const DensityFn v(io::read_gridfn(a.in));
    FixpointOptions fo;
    fo.tol = a.tol;
    fo.taint_cap = a.taint_cap;
    fo.solver = solver(a.no_prune);
    const ReachabilityReport r = check_scl(v, H, a.t, fo);
    json rep = fixpoint_json(r, v.grid());
    rep["command"] = "check scl";
    rep["config"] = {{"flux", io::to_json(H)}, {"T", a.t}, {"in", a.in}, {"tol", r.tol}, {"taint_cap", r.taint_cap}, {"prune", fo.solver.prune}};
    if (H.is<ham::Abs>()) {
        SclAbsOptions so;
        so.zero_tol = a.zero_tol;
        const SclAbsReport s = check_scl_abs(v, a.t, so);
        json viol = json::array();
        for (const SignViolation& x : s.violations)
            viol.push_back({{"negative", v.grid().point(x.negative)[0]}, {"positive", v.grid().point(x.positive)[0]}, {"gap", x.gap}});
        rep["sign_condition"] = {{"pass", s.pass}, {"zero_tol", s.zero_tol}, {"required_cells", s.required_cells}, {"violations", std::move(viol)}};
        rep["config"]["zero_tol"] = s.zero_tol;
    }
    write_plot(o, v.grid(), r.residual, "residual");
    return finish(rep, verdict_exit(r.verdict), o, fixpoint_summary(r, v.grid()));
}

int run_scl_solve(const SclArgs& a, const Output& o) {
    const Hamiltonian H = io::hamiltonian_from_json(io::read_json(a.flux));
    const DensityFn v(io::read_gridfn(a.in));
    const EvolvedDensity e = scl_forward(v, H, a.t, solver(a.no_prune));
    if (!a.out.empty()) io::write_file_atomic(a.out, evolved_json(e.v.fn(), e.tainted).dump() + "\n");
    write_plot(o, v.grid(), e.v.fn().values(), "density");
    std::size_t tainted = 0;
    for (auto b : e.tainted) tainted += b;
    json rep{{"command", "scl solve"}, {"config", {{"flux", io::to_json(H)}, {"T", a.t}, {"in", a.in}, {"prune", !a.no_prune}}}, {"tainted", tainted}};
    return finish(rep, kOk, o, "scl solve T=" + io::format_number(a.t) + " tainted=" + std::to_string(tainted));
}

int run_construct_cones(const ConesArgs& a, const Output& o) {
    const Hamiltonian H = io::hamiltonian_from_json(io::read_json(a.h));
    const Grid g = io::grid_from_json(io::read_json(a.grid));
    const std::vector<Anchor> anchors = anchors_from_json(io::read_json(a.anchors));
    const GridFn u = cone_target(H, a.t, anchors, g);
    if (!a.out.empty()) io::write_gridfn(a.out, u);
    write_plot(o, g, u.values(), "value");
    json an = json::array();
    for (const Anchor& x : anchors) an.push_back({{"x", point_json(g, x.x)}, {"c", x.c}});
    json rep{{"command", "construct cones"}, {"config", {{"hamiltonian", io::to_json(H)}, {"T", a.t}, {"grid", io::to_json(g)}, {"anchors", an}}}};
    return finish(rep, kOk, o, "cone target with " + std::to_string(anchors.size()) + " anchors");
}

int run_construct_random(const RandomArgs& a, const Output& o) {
    const Hamiltonian H = io::hamiltonian_from_json(io::read_json(a.h));
    const Grid g = io::grid_from_json(io::read_json(a.grid));
    const RandomTarget r = random_reachable(H, a.t, g, a.seed);
    if (!a.out.empty()) io::write_file_atomic(a.out, evolved_json(r.uT, r.tainted).dump() + "\n");
    if (!a.u0.empty()) io::write_gridfn(a.u0, r.u0);
    write_plot(o, g, r.uT.values(), "value");
    json rep{{"command", "construct random"}, {"config", {{"hamiltonian", io::to_json(H)}, {"T", a.t}, {"grid", io::to_json(g)}, {"seed", a.seed}}}};
    return finish(rep, kOk, o, "random reachable target, seed " + std::to_string(a.seed));
}

int run_roundtrip(const RoundtripArgs& a, const Output& o) {
    const GridFn f = io::read_gridfn(a.in);
    io::write_gridfn(a.out, f);
    const GridFn back = io::read_gridfn(a.out);
    bool exact = back.size() == f.size();
    for (std::size_t k = 0; exact && k < f.size(); ++k) exact = std::memcmp(&back.values()[k], &f.values()[k], sizeof(double)) == 0;
    json rep{{"command", "roundtrip"}, {"config", {{"in", a.in}, {"out", a.out}}}, {"bit_exact", exact}};
    return finish(rep, exact ? kOk : kFail, o, exact ? "roundtrip bit-exact" : "roundtrip mismatch");
}

int run_selftest(const Output& o) {
    const Grid g = Grid::line(-4.0, 4.0, 161);
    const Grid p = Grid::plane({-1.0, 1.0, 21}, {-1.0, 1.0, 21});
    auto fn = [&](std::function<double(double)> f) { return GridFn::sample(g, [&](Point x) { return f(x[0]); }); };
    const GridFn zero = fn([](double) { return 0.0; });
    const GridFn ramp = fn([](double x) { return x; });
    const GridFn vee = fn([](double x) { return std::abs(x); });

    const std::vector<std::pair<const char*, std::function<bool()>>> table{
        {"zero target is reachable (quadratic)", [&] { return check_fixpoint(zero, Hamiltonian::quadratic(), 1.0).verdict == Verdict::reachable; }},
        {"ramp is reachable (abs)", [&] { return check_fixpoint(ramp, Hamiltonian::abs(), 1.0).verdict == Verdict::reachable; }},
        {"vee is not reachable (abs)", [&] { return check_fixpoint(vee, Hamiltonian::abs(), 1.0).verdict == Verdict::not_reachable; }},
        {"forward of a constant is the constant",
         [&] {
             const EvolvedFn e = forward(fn([](double) { return 2.5; }), Hamiltonian::power_scaled(1.5), 1.0);
             for (std::size_t k = 0; k < g.size(); ++k)
                 if (std::abs(e.fn[k] - 2.5) > 1e-12) return false;
             return true;
         }},
        {"empty sublevel set", [&] { return sublevel_mask(zero, -1.0).count() == 0; }},
        {"opening of the full domain",
         [&] {
             const SublevelMask m{p, std::vector<std::uint8_t>(p.size(), 1), 0.0};
             return ball_opening(m, 0.3).count() == p.size();
         }},
        {"min(f, f) = f",
         [&] {
             const GridFn m = min_envelope({vee, vee});
             return std::equal(m.values().begin(), m.values().end(), vee.values().begin());
         }},
        {"scale by one is the identity",
         [&] {
             const GridFn s = scale_target(vee, 1.0);
             return std::equal(s.values().begin(), s.values().end(), vee.values().begin());
         }},
        {"nonnegative cone anchors give zero",
         [&] {
             const GridFn c = cone_target(Hamiltonian::quadratic(), 1.0, {{{0.0, 0.0}, 1.0}}, g);
             return std::all_of(c.values().begin(), c.values().end(), [](double v) { return v == 0.0; });
         }},
        {"monotone target has no local minima to fail", [&] { return check_local_minima_1d(fn([](double x) { return std::exp(x); }), 1.0).pass; }},
        {"zero density is reachable", [&] { return check_scl(DensityFn(zero), Hamiltonian::abs(), 1.0).verdict == Verdict::reachable; }},
        {"nonpositive density passes the sign condition", [&] { return check_scl_abs(DensityFn(fn([](double x) { return -x * x; })), 1.0).pass; }},
        {"scale by zero is reachable", [&] { return check_fixpoint(scale_target(vee, 0.0), Hamiltonian::power_scaled(3.0), 0.5).verdict == Verdict::reachable; }},
    };

    json rows = json::array();
    bool all = true;
    std::ostringstream text;
    for (const auto& [name, test] : table) {
        bool ok = false;
        try {
            ok = test();
        } catch (const std::exception&) {
            ok = false;
        }
        all = all && ok;
        rows.push_back({{"name", name}, {"pass", ok}});
        text << (ok ? "ok   " : "FAIL ") << name << "\n";
    }
    json rep{{"command", "selftest"}, {"results", rows}, {"pass", all}};
    text << (all ? "selftest passed" : "selftest FAILED");
    return finish(rep, all ? kOk : kFail, o, text.str());
}

}  // namespace reach::cli
