#include "reach/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "reach/error.hpp"

namespace reach {

namespace {

void require_alpha(double alpha, const char* who) {
    if (!(alpha > 1.0) || !std::isfinite(alpha)) {
        throw Error(std::string(who) + ": alpha must be > 1 (alpha = 1 is the abs Hamiltonian)");
    }
}

// Discrete convexity: every finite axis triple has second difference
// >= -1e-9 * scale.
void require_convex(const GridFn& f) {
    const Grid& g = f.grid();
    const double tol = 1e-9 * std::max(1.0, f.max_abs_finite());
    bool any = false;
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (std::isfinite(f[k])) any = true;
        for (int axis = 0; axis < g.dim(); ++axis) {
            Direction d = axis == 0 ? Direction{1, 0} : Direction{0, 1};
            auto a = g.shifted(k, d.di, d.dj);
            auto b = g.shifted(k, -d.di, -d.dj);
            if (!a || !b) continue;
            if (!std::isfinite(f[*a]) || !std::isfinite(f[*b]) || !std::isfinite(f[k])) continue;
            const double h = g.spacing(axis);
            if ((f[*a] + f[*b] - 2.0 * f[k]) / (h * h) < -tol) {
                std::ostringstream os;
                os << "sampled Hamiltonian is not discretely convex at p = (" << g.point(k)[0];
                if (g.dim() == 2) os << ", " << g.point(k)[1];
                os << ")";
                throw Error(os.str());
            }
        }
    }
    if (!any) throw Error("sampled Hamiltonian has no finite samples");
}

double interp_axis(const Axis& a, double x, std::size_t& i0) {
    const double t = (x - a.min) / a.spacing();
    if (t < -1e-12 || t > static_cast<double>(a.n - 1) + 1e-12) throw Error("sampled Hamiltonian evaluated outside its grid");
    double fl = std::floor(t);
    fl = std::clamp(fl, 0.0, static_cast<double>(a.n - 2));
    i0 = static_cast<std::size_t>(fl);
    return std::clamp(t - fl, 0.0, 1.0);
}

}  // namespace

Hamiltonian Hamiltonian::power_scaled(double alpha) {
    require_alpha(alpha, "power_scaled");
    return Hamiltonian(ham::PowerScaled{alpha});
}

Hamiltonian Hamiltonian::power(double alpha) {
    require_alpha(alpha, "power");
    return Hamiltonian(ham::Power{alpha});
}

Hamiltonian Hamiltonian::abs() { return Hamiltonian(ham::Abs{}); }

Hamiltonian Hamiltonian::quadratic() { return Hamiltonian(ham::Quadratic{}); }

Hamiltonian Hamiltonian::affine(Point a, double b) {
    if (!std::isfinite(a[0]) || !std::isfinite(a[1]) || !std::isfinite(b)) throw Error("affine: coefficients must be finite");
    return Hamiltonian(ham::Affine{a, b});
}

Hamiltonian Hamiltonian::sampled(GridFn f) {
    require_convex(f);
    return Hamiltonian(ham::Sampled{std::move(f)});
}

bool Hamiltonian::compatible_with(int dim) const noexcept {
    if (auto* s = std::get_if<ham::Sampled>(&v_)) return s->f.grid().dim() == dim;
    if (auto* a = std::get_if<ham::Affine>(&v_)) return dim == 2 || a->a[1] == 0.0;
    return true;
}

double Hamiltonian::operator()(const Point& p) const {
    const double r = norm(p);
    return std::visit(
        [&](const auto& k) -> double {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, ham::PowerScaled>) {
                return std::pow(r, k.alpha) / k.alpha;
            } else if constexpr (std::is_same_v<K, ham::Power>) {
                return std::pow(r, k.alpha);
            } else if constexpr (std::is_same_v<K, ham::Abs>) {
                return r;
            } else if constexpr (std::is_same_v<K, ham::Quadratic>) {
                return 0.5 * r * r;
            } else if constexpr (std::is_same_v<K, ham::Affine>) {
                return k.a[0] * p[0] + k.a[1] * p[1] + k.b;
            } else {
                const Grid& g = k.f.grid();
                std::size_t i0 = 0, j0 = 0;
                const double s = interp_axis(g.axis(0), p[0], i0);
                if (g.dim() == 1) return (1.0 - s) * k.f[i0] + s * k.f[i0 + 1];
                const double t = interp_axis(g.axis(1), p[1], j0);
                const double f00 = k.f[g.flat(i0, j0)], f01 = k.f[g.flat(i0, j0 + 1)];
                const double f10 = k.f[g.flat(i0 + 1, j0)], f11 = k.f[g.flat(i0 + 1, j0 + 1)];
                return (1 - s) * ((1 - t) * f00 + t * f01) + s * ((1 - t) * f10 + t * f11);
            }
        },
        v_);
}

double Hamiltonian::hstar_at_zero() const {
    if (auto* a = std::get_if<ham::Affine>(&v_)) return (a->a[0] == 0.0 && a->a[1] == 0.0) ? -a->b : kInf;
    if (auto* s = std::get_if<ham::Sampled>(&v_)) {
        double m = kInf;
        for (double v : s->f.values()) m = std::min(m, v);
        return -m;
    }
    return 0.0;  // radial kinds attain their minimum 0 at p = 0
}

double Hamiltonian::max_on_ball(double c) const {
    if (!(c >= 0.0)) throw Error("max_on_ball: radius must be >= 0");
    if (auto* a = std::get_if<ham::Affine>(&v_)) return norm(a->a) * c + a->b;
    if (auto* s = std::get_if<ham::Sampled>(&v_)) {
        const Grid& g = s->f.grid();
        double m = -kInf;
        for (std::size_t k = 0; k < g.size(); ++k) {
            if (norm(g.point(k)) <= c * (1 + 1e-12) && std::isfinite(s->f[k])) m = std::max(m, s->f[k]);
        }
        if (m == -kInf) throw Error("max_on_ball: no sampled point inside the ball");
        return m;
    }
    return (*this)({c, 0.0});  // radial and nondecreasing in |p|
}

std::string Hamiltonian::name() const {
    std::ostringstream os;
    std::visit(
        [&](const auto& k) {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, ham::PowerScaled>) os << "power_scaled(alpha=" << k.alpha << ")";
            else if constexpr (std::is_same_v<K, ham::Power>) os << "power(alpha=" << k.alpha << ")";
            else if constexpr (std::is_same_v<K, ham::Abs>) os << "abs";
            else if constexpr (std::is_same_v<K, ham::Quadratic>) os << "quadratic";
            else if constexpr (std::is_same_v<K, ham::Affine>) os << "affine(a=(" << k.a[0] << "," << k.a[1] << "), b=" << k.b << ")";
            else os << "sampled(" << k.f.grid().dim() << "D, " << k.f.size() << " samples)";
        },
        v_);
    return os.str();
}

}  // namespace reach
