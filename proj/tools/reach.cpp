// reach: command-line front end. Exit codes: 0 reachable/pass, 2 not
// reachable/fail, 3 inconclusive (boundary), 1 usage or I/O error.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

#include "commands.hpp"
#include "reach/error.hpp"

using namespace reach::cli;

namespace {

void add_output(CLI::App* cmd, Output& o, bool plot = true) {
    cmd->add_option("--report", o.report, "write the JSON report here");
    if (plot) cmd->add_option("--plot", o.plot, "write plot data (CSV) here");
}

void add_t(CLI::App* cmd, double& t) { cmd->add_option("--t", t, "time horizon T")->required()->check(CLI::PositiveNumber); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reachability of Hamilton-Jacobi targets and scalar conservation laws"};
    // --h names the Hamiltonian, so help is --help only (inherited by subcommands).
    app.set_help_flag("--help", "print help and exit");
    app.require_subcommand(1);
    // Subcommands pass unknown options up, so --json works anywhere.
    app.fallthrough();
    Output out;
    app.add_flag("--json", out.json, "print the report as JSON on stdout");
    std::function<int()> action;

    TransformArgs tr;
    auto* transform = app.add_subcommand("transform", "discrete convex conjugate of sampled data");
    transform->add_option("--in", tr.in, "sampled function (JSON or CSV)")->required();
    transform->add_option("--out", tr.out, "conjugate samples (JSON)");
    transform->add_option("--dual", tr.dual, "dual grid (JSON); default [-(lip+1), lip+1]");
    transform->add_option("--method", tr.method, "fast or bruteforce")->check(CLI::IsMember({"fast", "bruteforce"}));
    add_output(transform, out);
    transform->callback([&] { action = [&] { return run_transform(tr, out); }; });

    SolveArgs sv;
    auto* solve = app.add_subcommand("solve", "Hopf-Lax evolution");
    solve->add_option("--dir", sv.dir, "forward or backward")->check(CLI::IsMember({"forward", "backward"}));
    solve->add_option("--h", sv.h, "Hamiltonian (JSON)")->required();
    add_t(solve, sv.t);
    solve->add_option("--in", sv.in, "input function")->required();
    solve->add_option("--out", sv.out, "evolved function (JSON with taint mask)");
    solve->add_flag("--no-prune", sv.no_prune, "search the whole grid");
    add_output(solve, out);
    solve->callback([&] { action = [&] { return run_solve(sv, out); }; });

    auto* check = app.add_subcommand("check", "reachability tests");
    check->require_subcommand(1);

    CheckHjArgs hj;
    auto* chj = check->add_subcommand("hj", "fixpoint test S+ S- u = u");
    chj->add_option("--h", hj.h, "Hamiltonian (JSON)")->required();
    add_t(chj, hj.t);
    chj->add_option("--in", hj.in, "target u_T")->required();
    chj->add_option("--tol", hj.tol, "residual tolerance; default 4h(lip+1)")->check(CLI::PositiveNumber);
    chj->add_option("--taint-cap", hj.taint_cap, "largest tainted fraction for a conclusive verdict")->check(CLI::Range(0.0, 1.0));
    chj->add_flag("--witnesses", hj.witnesses, "add touching witnesses to the report");
    chj->add_flag("--no-prune", hj.no_prune, "search the whole grid");
    add_output(chj, out);
    chj->callback([&] { action = [&] { return run_check_hj(hj, out); }; });

    CheckLevelsetArgs ls;
    auto* cls = check->add_subcommand("levelset", "interior ball test on sublevel sets (H = |p|)");
    add_t(cls, ls.t);
    cls->add_option("--in", ls.in, "target u_T")->required();
    auto* levels = cls->add_option("--levels", ls.levels, "explicit levels a,b,c")->delimiter(',');
    auto* all = cls->add_flag("--all", ls.all, "every distinct sample value");
    cls->add_flag("--auto", "quantized levels plus local minima (default)")->excludes(levels)->excludes(all);
    levels->excludes(all);
    cls->add_option("--band", ls.band, "forgiven pixel band (default 1 in 2D, 0 in 1D)")->check(CLI::NonNegativeNumber);
    cls->add_option("--pgm", ls.pgm, "2D: write PGM masks with this path prefix");
    add_output(cls, out);
    cls->callback([&] { action = [&] { return run_check_levelset(ls, out); }; });

    SclArgs sc;
    auto add_scl = [&](CLI::App* cmd, bool solving) {
        cmd->add_option("--flux", sc.flux, "flux H (JSON)")->required();
        add_t(cmd, sc.t);
        cmd->add_option("--in", sc.in, "density v")->required();
        cmd->add_flag("--no-prune", sc.no_prune, "search the whole grid");
        if (solving) {
            cmd->add_option("--out", sc.out, "evolved density (JSON with taint mask)");
        } else {
            cmd->add_option("--tol", sc.tol, "primitive residual tolerance; default h max|v| / 4")->check(CLI::PositiveNumber);
            cmd->add_option("--zero-tol", sc.zero_tol, "|v| at or below this counts as zero")->check(CLI::NonNegativeNumber);
            cmd->add_option("--taint-cap", sc.taint_cap, "largest tainted fraction for a conclusive verdict")->check(CLI::Range(0.0, 1.0));
        }
        add_output(cmd, out);
    };
    auto* cscl = check->add_subcommand("scl", "reachability of a conservation-law density");
    add_scl(cscl, false);
    cscl->callback([&] { action = [&] { return run_check_scl(sc, out); }; });

    auto* scl = app.add_subcommand("scl", "scalar conservation laws");
    scl->require_subcommand(1);
    auto* scl_solve = scl->add_subcommand("solve", "entropy solution at time T");
    add_scl(scl_solve, true);
    scl_solve->callback([&] { action = [&] { return run_scl_solve(sc, out); }; });
    auto* scl_check = scl->add_subcommand("check", "same as check scl");
    add_scl(scl_check, false);
    scl_check->callback([&] { action = [&] { return run_check_scl(sc, out); }; });

    auto* construct = app.add_subcommand("construct", "build reachable targets");
    construct->require_subcommand(1);
    ConesArgs cn;
    auto* cones = construct->add_subcommand("cones", "min of 0 and conjugate cones");
    cones->add_option("--h", cn.h, "Hamiltonian (JSON)")->required();
    add_t(cones, cn.t);
    cones->add_option("--anchors", cn.anchors, "[{\"x\":..., \"c\":...}] (JSON)")->required();
    cones->add_option("--grid", cn.grid, "grid (JSON)")->required();
    cones->add_option("--out", cn.out, "target u_T");
    add_output(cones, out);
    cones->callback([&] { action = [&] { return run_construct_cones(cn, out); }; });

    RandomArgs rn;
    auto* random = construct->add_subcommand("random", "forward image of a seeded random Lipschitz function");
    random->add_option("--h", rn.h, "Hamiltonian (JSON)")->required();
    add_t(random, rn.t);
    random->add_option("--grid", rn.grid, "grid (JSON)")->required();
    random->add_option("--seed", rn.seed, "seed");
    random->add_option("--out", rn.out, "target u_T (JSON with taint mask)");
    random->add_option("--u0", rn.u0, "also write the initial datum");
    add_output(random, out);
    random->callback([&] { action = [&] { return run_construct_random(rn, out); }; });

    RoundtripArgs rt;
    auto* roundtrip = app.add_subcommand("roundtrip", "read a function and write it back");
    roundtrip->add_option("--in", rt.in, "input (JSON or CSV)")->required();
    roundtrip->add_option("--out", rt.out, "output (JSON or CSV)")->required();
    add_output(roundtrip, out, false);
    roundtrip->callback([&] { action = [&] { return run_roundtrip(rt, out); }; });

    auto* selftest = app.add_subcommand("selftest", "run the built-in example table");
    add_output(selftest, out, false);
    selftest->callback([&] { action = [&] { return run_selftest(out); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kUsage;
    }
    try {
        return action();
    } catch (const reach::Error& e) {
        std::cerr << "reach: " << e.what() << "\n";
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "reach: " << e.what() << "\n";
    } catch (const std::exception& e) {
        std::cerr << "reach: " << e.what() << "\n";
    }
    return kUsage;
}
