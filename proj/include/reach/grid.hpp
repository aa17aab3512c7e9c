#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "reach/ext_real.hpp"

namespace reach {

// A point of R^1 or R^2. In 1D the second coordinate is ignored and kept 0.
using Point = std::array<double, 2>;

double norm(const Point& p) noexcept;

struct Axis {
    double min = 0.0;
    double max = 1.0;
    std::size_t n = 2;

    double spacing() const noexcept { return (max - min) / static_cast<double>(n - 1); }
    // Exact for i = 0 and i = n-1 so endpoints round-trip.
    double point(std::size_t i) const noexcept;

    friend bool operator==(const Axis&, const Axis&) = default;
};

// Uniform tensor grid in one or two dimensions. Flat indices are row-major:
// flat = i * n1 + j where i runs along axis 0 and j along axis 1.
class Grid {
public:
    static Grid line(double min, double max, std::size_t n);
    static Grid plane(const Axis& x, const Axis& y);
    static Grid make(std::span<const Axis> axes);

    int dim() const noexcept { return dim_; }
    const Axis& axis(int k) const noexcept { return axes_[static_cast<std::size_t>(k)]; }
    std::size_t count(int k) const noexcept { return k < dim_ ? axes_[static_cast<std::size_t>(k)].n : 1; }
    std::size_t size() const noexcept { return count(0) * count(1); }
    double spacing(int k) const noexcept { return axes_[static_cast<std::size_t>(k)].spacing(); }
    double min_spacing() const noexcept;
    double max_spacing() const noexcept;

    std::size_t flat(std::size_t i, std::size_t j = 0) const noexcept { return i * count(1) + j; }
    std::array<std::size_t, 2> unflat(std::size_t flat) const noexcept {
        return {flat / count(1), flat % count(1)};
    }
    Point point(std::size_t flat) const noexcept;

    // Index of the sample nearest to p (clamped into the box).
    std::size_t nearest(const Point& p) const noexcept;

    // flat + (di, dj), or nullopt when the neighbour leaves the grid.
    std::optional<std::size_t> shifted(std::size_t flat, long di, long dj) const noexcept;

    // True when the sample sits on the outermost row or column.
    bool on_boundary(std::size_t flat) const noexcept;

    // Euclidean distance from the sample to the box boundary.
    double boundary_distance(std::size_t flat) const noexcept;

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    Grid(int dim, std::array<Axis, 2> axes) : dim_(dim), axes_(axes) {}

    int dim_ = 1;
    std::array<Axis, 2> axes_{};
};

// A function sampled on a grid with extended-real values. Values are stored
// as doubles where +inf marks the infinity flag (see ExtReal).
class GridFn {
public:
    GridFn(Grid grid, std::vector<double> values, std::optional<double> lip = std::nullopt);

    template <typename F>
    static GridFn sample(const Grid& grid, F&& f) {
        std::vector<double> v(grid.size());
        for (std::size_t k = 0; k < v.size(); ++k) v[k] = static_cast<double>(f(grid.point(k)));
        return GridFn(grid, std::move(v));
    }

    const Grid& grid() const noexcept { return grid_; }
    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t k) const noexcept { return values_[k]; }
    ExtReal at(std::size_t k) const { return ExtReal(values_[k]); }

    bool all_finite() const noexcept;
    double max_abs_finite() const noexcept;

    std::optional<double> lip() const noexcept { return lip_; }
    // Computes lipschitz_estimate and stores it in the cache.
    GridFn& cache_lipschitz();
    GridFn with_lip(std::optional<double> lip) const;

    friend bool operator==(const GridFn& a, const GridFn& b) noexcept {
        return a.grid_ == b.grid_ && a.values_ == b.values_;
    }

private:
    Grid grid_;
    std::vector<double> values_;
    std::optional<double> lip_;
};

// Max over adjacent finite sample pairs of |df|/h, max over axes.
double lipschitz_estimate(const GridFn& f);

// Unit grid offset: (1,0) and (0,1) are axes, (1,1) and (1,-1) diagonals.
struct Direction {
    int di = 1;
    int dj = 0;
};

inline constexpr std::array<Direction, 1> kDirections1D{{{1, 0}}};
inline constexpr std::array<Direction, 4> kDirections2D{{{1, 0}, {0, 1}, {1, 1}, {1, -1}}};

// Length of one step along d.
double step_length(const Grid& grid, Direction d) noexcept;

// (f(x+he) + f(x-he) - 2 f(x)) / |he|^2 at flat index k.
double second_difference(const GridFn& f, std::size_t k, Direction d);

}  // namespace reach
