#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace reach::cli {

// Exit codes are a function of the verdict only.
enum Exit : int { kOk = 0, kUsage = 1, kFail = 2, kInconclusive = 3 };

struct Output {
    bool json = false;     // report JSON on stdout instead of a summary line
    std::string report;    // optional report path
    std::string plot;      // optional plot CSV path
};

struct TransformArgs {
    std::string in, out, dual;
    std::string method = "fast";
};

struct SolveArgs {
    std::string dir = "forward";
    std::string h, in, out;
    double t = 0.0;
    bool no_prune = false;
};

struct CheckHjArgs {
    std::string h, in;
    double t = 0.0;
    std::optional<double> tol;
    double taint_cap = 0.5;
    bool witnesses = false;
    bool no_prune = false;
};

struct CheckLevelsetArgs {
    std::string in, pgm;
    double t = 0.0;
    std::vector<double> levels;
    bool all = false;
    int band = -1;
};

struct SclArgs {
    std::string flux, in, out;
    double t = 0.0;
    std::optional<double> tol;
    std::optional<double> zero_tol;
    double taint_cap = 0.5;
    bool no_prune = false;
};

struct ConesArgs {
    std::string h, anchors, grid, out;
    double t = 0.0;
};

struct RandomArgs {
    std::string h, grid, out, u0;
    double t = 0.0;
    std::uint64_t seed = 0;
};

struct RoundtripArgs {
    std::string in, out;
};

int run_transform(const TransformArgs& a, const Output& o);
int run_solve(const SolveArgs& a, const Output& o);
int run_check_hj(const CheckHjArgs& a, const Output& o);
int run_check_levelset(const CheckLevelsetArgs& a, const Output& o);
int run_check_scl(const SclArgs& a, const Output& o);
int run_scl_solve(const SclArgs& a, const Output& o);
int run_construct_cones(const ConesArgs& a, const Output& o);
int run_construct_random(const RandomArgs& a, const Output& o);
int run_roundtrip(const RoundtripArgs& a, const Output& o);
int run_selftest(const Output& o);

}  // namespace reach::cli
