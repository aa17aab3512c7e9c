#include "reach/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "reach/error.hpp"

namespace reach {

double norm(const Point& p) noexcept { return std::hypot(p[0], p[1]); }

double Axis::point(std::size_t i) const noexcept {
    if (i + 1 == n) return max;
    return min + static_cast<double>(i) * spacing();
}

namespace {

void validate(const Axis& a) {
    if (!std::isfinite(a.min) || !std::isfinite(a.max)) throw Error("grid: axis bounds must be finite");
    if (!(a.min < a.max)) throw Error("grid: axis requires min < max");
    if (a.n < 2) throw Error("grid: axis requires n >= 2");
}

}  // namespace

Grid Grid::line(double min, double max, std::size_t n) {
    Axis a{min, max, n};
    validate(a);
    return Grid(1, {a, Axis{0.0, 1.0, 2}});
}

Grid Grid::plane(const Axis& x, const Axis& y) {
    validate(x);
    validate(y);
    return Grid(2, {x, y});
}

Grid Grid::make(std::span<const Axis> axes) {
    if (axes.size() == 1) return line(axes[0].min, axes[0].max, axes[0].n);
    if (axes.size() == 2) return plane(axes[0], axes[1]);
    throw Error("grid: only 1D and 2D grids are supported (got " + std::to_string(axes.size()) + " axes)");
}

double Grid::min_spacing() const noexcept {
    return dim_ == 1 ? spacing(0) : std::min(spacing(0), spacing(1));
}

double Grid::max_spacing() const noexcept {
    return dim_ == 1 ? spacing(0) : std::max(spacing(0), spacing(1));
}

Point Grid::point(std::size_t flat) const noexcept {
    auto [i, j] = unflat(flat);
    if (dim_ == 1) return {axes_[0].point(i), 0.0};
    return {axes_[0].point(i), axes_[1].point(j)};
}

std::size_t Grid::nearest(const Point& p) const noexcept {
    auto snap = [](const Axis& a, double x) -> std::size_t {
        double t = std::round((x - a.min) / a.spacing());
        t = std::clamp(t, 0.0, static_cast<double>(a.n - 1));
        return static_cast<std::size_t>(t);
    };
    if (dim_ == 1) return snap(axes_[0], p[0]);
    return flat(snap(axes_[0], p[0]), snap(axes_[1], p[1]));
}

std::optional<std::size_t> Grid::shifted(std::size_t f, long di, long dj) const noexcept {
    auto [i, j] = unflat(f);
    long ni = static_cast<long>(i) + di;
    long nj = static_cast<long>(j) + dj;
    if (ni < 0 || nj < 0 || ni >= static_cast<long>(count(0)) || nj >= static_cast<long>(count(1))) {
        return std::nullopt;
    }
    return flat(static_cast<std::size_t>(ni), static_cast<std::size_t>(nj));
}

bool Grid::on_boundary(std::size_t f) const noexcept {
    auto [i, j] = unflat(f);
    if (i == 0 || i + 1 == count(0)) return true;
    return dim_ == 2 && (j == 0 || j + 1 == count(1));
}

double Grid::boundary_distance(std::size_t f) const noexcept {
    Point p = point(f);
    double d = std::min(p[0] - axes_[0].min, axes_[0].max - p[0]);
    if (dim_ == 2) d = std::min({d, p[1] - axes_[1].min, axes_[1].max - p[1]});
    return std::max(d, 0.0);
}

GridFn::GridFn(Grid grid, std::vector<double> values, std::optional<double> lip)
    : grid_(grid), values_(std::move(values)), lip_(lip) {
    if (values_.size() != grid_.size()) {
        throw Error("GridFn: expected " + std::to_string(grid_.size()) + " values, got " +
                    std::to_string(values_.size()));
    }
    for (double v : values_) {
        if (std::isnan(v) || v == -kInf) throw Error("GridFn: values must be real or +inf");
    }
    if (lip_ && !(*lip_ >= 0.0)) throw Error("GridFn: lip must be >= 0");
}

bool GridFn::all_finite() const noexcept {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

double GridFn::max_abs_finite() const noexcept {
    double m = 0.0;
    for (double v : values_)
        if (std::isfinite(v)) m = std::max(m, std::abs(v));
    return m;
}

GridFn& GridFn::cache_lipschitz() {
    lip_ = lipschitz_estimate(*this);
    return *this;
}

GridFn GridFn::with_lip(std::optional<double> lip) const {
    GridFn g = *this;
    g.lip_ = lip;
    return g;
}

double lipschitz_estimate(const GridFn& f) {
    const Grid& g = f.grid();
    auto v = f.values();
    double best = 0.0;
    bool any_pair = false;
    for (int axis = 0; axis < g.dim(); ++axis) {
        const double h = g.spacing(axis);
        const long di = axis == 0 ? 1 : 0;
        const long dj = axis == 1 ? 1 : 0;
        for (std::size_t k = 0; k < g.size(); ++k) {
            auto nb = g.shifted(k, di, dj);
            if (!nb || !std::isfinite(v[k]) || !std::isfinite(v[*nb])) continue;
            best = std::max(best, std::abs(v[*nb] - v[k]) / h);
            any_pair = true;
        }
    }
    if (!any_pair) {
        bool any_finite = std::any_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
        if (!any_finite) throw Error("lipschitz_estimate: no finite samples");
        throw Error("lipschitz_estimate: no adjacent pair of finite samples");
    }
    return best;
}

double step_length(const Grid& grid, Direction d) noexcept {
    const double a = d.di * grid.spacing(0);
    const double b = grid.dim() == 2 ? d.dj * grid.spacing(1) : 0.0;
    return std::hypot(a, b);
}

double second_difference(const GridFn& f, std::size_t k, Direction d) {
    const Grid& g = f.grid();
    if (g.dim() == 1 && d.dj != 0) throw Error("second_difference: diagonal offset on a 1D grid");
    if (d.di == 0 && d.dj == 0) throw Error("second_difference: zero offset");
    auto fwd = g.shifted(k, d.di, d.dj);
    auto bwd = g.shifted(k, -d.di, -d.dj);
    if (!fwd || !bwd) throw Error("second_difference: index is on the grid boundary");
    const double a = f[*fwd], b = f[*bwd], c = f[k];
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c)) {
        throw Error("second_difference: infinite neighbour");
    }
    const double h = step_length(g, d);
    return (a + b - 2.0 * c) / (h * h);
}

}  // namespace reach
