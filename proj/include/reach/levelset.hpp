#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "reach/grid.hpp"

namespace reach {

struct SublevelMask {
    Grid grid;
    std::vector<std::uint8_t> bits;
    double level = 0.0;

    std::size_t count() const noexcept;
};

SublevelMask sublevel_mask(const GridFn& uT, double level);

// Union of the discrete closed balls {|x - y| <= r + h/2} (h the smallest
// spacing, centers y on the grid) contained in the mask. Samples outside the
// grid count as inside the set, so balls may stick out of the box.
SublevelMask ball_opening(const SublevelMask& mask, double r);

enum class LevelMode {
    auto_levels,  // 64 quantized levels plus every local-minimum value
    all,          // every distinct sample value (exact for the discrete problem)
    explicit_list,
};

struct InteriorBallOptions {
    LevelMode mode = LevelMode::auto_levels;
    std::vector<double> levels;  // used with explicit_list
    std::size_t quantized = 64;
    // Failing samples with an 8-neighbour (2-neighbour in 1D) inside the
    // opening and at most this many pixels from it are forgiven. Negative
    // means the default: 1 in 2D, 0 in 1D.
    int band_px = -1;
    // Stored failures per report (the count is always exact).
    std::size_t max_failures = 1000;
};

struct LevelFailure {
    double level = 0.0;
    std::size_t index = 0;
    Point x{};
};

struct InteriorBallReport {
    bool pass = true;
    double T = 0.0;
    int band_px = 0;
    double taint_distance = 0.0;  // failures closer than this to the box edge are ignored
    std::vector<double> levels;
    std::size_t failure_count = 0;
    std::size_t tainted_failures = 0;
    std::size_t forgiven = 0;
    std::vector<LevelFailure> failures;
    // Union over levels of untainted failing samples.
    std::vector<std::uint8_t> failing;
};

// Every sublevel set Omega_a = {u_T <= a} must be invariant under opening by
// radius-T balls, away from the boundary band.
InteriorBallReport check_interior_ball(const GridFn& uT, double T, const InteriorBallOptions& opts = {});

std::vector<double> select_levels(const GridFn& uT, const InteriorBallOptions& opts);

struct LocalMinimum {
    std::size_t first = 0;  // plateau endpoints (equal for a strict minimum)
    std::size_t last = 0;
    double value = 0.0;
    bool tainted = false;
    bool ok = false;
};

struct LocalMinimaReport {
    bool pass = true;
    double T = 0.0;
    double tol = 0.0;
    long window_cells = 0;  // half-width of the admissible window
    std::vector<LocalMinimum> minima;
};

// 1D: every discrete local minimum x (plateaus collapsed) lies in a window
// [x0 - T, x0 + T] on which u_T <= u_T(x) + tol.
LocalMinimaReport check_local_minima_1d(const GridFn& uT, double T, double tol = 0.0);

}  // namespace reach
