#include "reach/transform.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "reach/error.hpp"

namespace reach {

namespace {

// Largest origin-centred ball inside the primal box.
double inner_radius(const Grid& g) {
    double r = kInf;
    for (int k = 0; k < g.dim(); ++k) r = std::min({r, -g.axis(k).min, g.axis(k).max});
    return std::max(r, 0.0);
}

void require_finite_sample(const GridFn& f) {
    if (std::none_of(f.values().begin(), f.values().end(), [](double v) { return std::isfinite(v); })) {
        throw Error("conjugate: input has no finite sample");
    }
}

void require_same_dim(const GridFn& f, const Grid& dual) {
    if (f.grid().dim() != dual.dim()) throw Error("conjugate: primal and dual grids differ in dimension");
}

// max_i { p_i q_j - f_i } for every q_j on the dual axis. Samples equal to
// +inf are absent; out[j] = -inf when no sample is finite.
//
// Lower convex hull of (p_i, f_i) by monotone chain, then a single sweep
// over the ascending q_j: the maximizing vertex index is nondecreasing in q.
void conjugate_line(const Axis& primal, const double* f, std::size_t stride, const Axis& dual, double* out,
                    std::size_t out_stride, std::vector<std::size_t>& hull) {
    hull.clear();
    auto p = [&](std::size_t i) { return primal.point(i); };
    auto v = [&](std::size_t i) { return f[i * stride]; };
    for (std::size_t i = 0; i < primal.n; ++i) {
        if (!std::isfinite(v(i))) continue;
        while (hull.size() >= 2) {
            const std::size_t a = hull[hull.size() - 2], b = hull.back();
            // drop b when it is on or above the chord a-i
            if ((v(b) - v(a)) * (p(i) - p(b)) >= (v(i) - v(b)) * (p(b) - p(a))) {
                hull.pop_back();
            } else {
                break;
            }
        }
        hull.push_back(i);
    }
    if (hull.empty()) {
        for (std::size_t j = 0; j < dual.n; ++j) out[j * out_stride] = -kInf;
        return;
    }
    std::size_t k = 0;
    for (std::size_t j = 0; j < dual.n; ++j) {
        const double q = dual.point(j);
        while (k + 1 < hull.size()) {
            const std::size_t a = hull[k], b = hull[k + 1];
            if (v(b) - v(a) <= q * (p(b) - p(a))) {
                ++k;
            } else {
                break;
            }
        }
        out[j * out_stride] = q * p(hull[k]) - v(hull[k]);
    }
}

}  // namespace

ExtReal DualFn::interpolate(const Point& q) const {
    const Grid& g = samples_.grid();
    auto locate = [](const Axis& a, double x, std::size_t& i0, double& t) -> bool {
        const double s = (x - a.min) / a.spacing();
        const double last = static_cast<double>(a.n - 1);
        if (s < -1e-9 || s > last + 1e-9) return false;
        double fl = std::clamp(std::floor(s), 0.0, last - 1.0);
        i0 = static_cast<std::size_t>(fl);
        t = std::clamp(s - fl, 0.0, 1.0);
        return true;
    };
    std::size_t i0 = 0, j0 = 0;
    double s = 0, t = 0;
    if (!locate(g.axis(0), q[0], i0, s)) return ExtReal::infinity();
    if (g.dim() == 1) {
        const double a = samples_[i0], b = samples_[i0 + 1];
        if (s == 0.0) return a;
        if (s == 1.0) return b;
        if (!std::isfinite(a) || !std::isfinite(b)) return ExtReal::infinity();
        return (1.0 - s) * a + s * b;
    }
    if (!locate(g.axis(1), q[1], j0, t)) return ExtReal::infinity();
    const double c[4] = {samples_[g.flat(i0, j0)], samples_[g.flat(i0, j0 + 1)], samples_[g.flat(i0 + 1, j0)],
                         samples_[g.flat(i0 + 1, j0 + 1)]};
    const double w[4] = {(1 - s) * (1 - t), (1 - s) * t, s * (1 - t), s * t};
    double acc = 0.0;
    for (int k = 0; k < 4; ++k) {
        if (w[k] == 0.0) continue;
        if (!std::isfinite(c[k])) return ExtReal::infinity();
        acc += w[k] * c[k];
    }
    return acc;
}

ExtReal hstar_closed_form(const Hamiltonian& H, const Point& q) {
    const double r = norm(q);
    return std::visit(
        [&](const auto& k) -> ExtReal {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, ham::PowerScaled>) {
                const double e = k.alpha / (k.alpha - 1.0);
                return (k.alpha - 1.0) / k.alpha * std::pow(r, e);
            } else if constexpr (std::is_same_v<K, ham::Power>) {
                const double e = k.alpha / (k.alpha - 1.0);
                return (k.alpha - 1.0) * std::pow(k.alpha, -e) * std::pow(r, e);
            } else if constexpr (std::is_same_v<K, ham::Abs>) {
                return r <= 1.0 ? ExtReal(0.0) : ExtReal::infinity();
            } else if constexpr (std::is_same_v<K, ham::Quadratic>) {
                return 0.5 * r * r;
            } else if constexpr (std::is_same_v<K, ham::Affine>) {
                return (q[0] == k.a[0] && q[1] == k.a[1]) ? ExtReal(-k.b) : ExtReal::infinity();
            } else {
                throw Error("hstar_closed_form: sampled Hamiltonian has no closed form, use conjugate_fast");
            }
        },
        H.kind());
}

DualFn conjugate_bruteforce(const GridFn& f, const Grid& dual) {
    require_same_dim(f, dual);
    require_finite_sample(f);
    const Grid& g = f.grid();
    std::vector<Point> pts;
    std::vector<double> vals;
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (!std::isfinite(f[k])) continue;
        pts.push_back(g.point(k));
        vals.push_back(f[k]);
    }
    std::vector<double> out(dual.size());
    for (std::size_t j = 0; j < dual.size(); ++j) {
        const Point q = dual.point(j);
        double best = -kInf;
        for (std::size_t k = 0; k < pts.size(); ++k) best = std::max(best, pts[k][0] * q[0] + pts[k][1] * q[1] - vals[k]);
        out[j] = best;
    }
    return DualFn(GridFn(dual, std::move(out)), inner_radius(g));
}

DualFn conjugate_fast(const GridFn& f, const Grid& dual) {
    require_same_dim(f, dual);
    require_finite_sample(f);
    const Grid& g = f.grid();
    std::vector<std::size_t> hull;
    hull.reserve(g.count(0) + g.count(1));
    if (g.dim() == 1) {
        std::vector<double> out(dual.size());
        conjugate_line(g.axis(0), f.values().data(), 1, dual.axis(0), out.data(), 1, hull);
        return DualFn(GridFn(dual, std::move(out)), inner_radius(g));
    }

    // Rows: h(i, q2) = sup_{p2} { p2 q2 - f(p1_i, p2) }.
    const std::size_t n0 = g.count(0), n1 = g.count(1);
    const std::size_t m0 = dual.count(0), m1 = dual.count(1);
    std::vector<double> rows(n0 * m1);
    for (std::size_t i = 0; i < n0; ++i) {
        conjugate_line(g.axis(1), f.values().data() + i * n1, 1, dual.axis(1), rows.data() + i * m1, 1, hull);
    }
    // Columns: f*(q1, q2) = sup_{p1} { p1 q1 - (-h(p1, q2)) }.
    std::vector<double> neg(n0);
    std::vector<double> out(m0 * m1);
    for (std::size_t jq = 0; jq < m1; ++jq) {
        for (std::size_t i = 0; i < n0; ++i) {
            const double h = rows[i * m1 + jq];
            neg[i] = h == -kInf ? kInf : -h;
        }
        conjugate_line(g.axis(0), neg.data(), 1, dual.axis(0), out.data() + jq, m1, hull);
    }
    return DualFn(GridFn(dual, std::move(out)), inner_radius(g));
}

Grid default_dual_grid(const Grid& primal, double lip) {
    if (!(lip >= 0.0)) throw Error("default_dual_grid: lip must be >= 0");
    const double r = lip + 1.0;
    if (primal.dim() == 1) return Grid::line(-r, r, primal.count(0));
    return Grid::plane(Axis{-r, r, primal.count(0)}, Axis{-r, r, primal.count(1)});
}

double search_radius(const Hamiltonian& H, double lip, double T) {
    if (!(T > 0.0)) throw Error("search_radius: T must be > 0");
    if (!(lip >= 0.0)) throw Error("search_radius: lip must be >= 0");
    const double h0 = H.hstar_at_zero();
    if (!std::isfinite(h0)) return kInf;
    if (H.is<ham::Sampled>()) {
        const double c = std::min(lip + 1.0, inner_radius(H.as<ham::Sampled>().f.grid()));
        if (c <= lip) return kInf;
        return T * (h0 + H.max_on_ball(c)) / (c - lip);
    }
    return T * (h0 + H.max_on_ball(lip + 1.0));
}

}  // namespace reach
