#pragma once

#include <optional>
#include <string>
#include <vector>

#include "reach/hopflax.hpp"

namespace reach {

enum class Verdict { reachable, not_reachable, inconclusive_boundary };

std::string to_string(Verdict v);

struct FixpointOptions {
    // Residual tolerance; default 4 h (lip(u_T) + 1) with h the largest spacing.
    std::optional<double> tol;
    // Above this tainted fraction a clean residual is reported as inconclusive.
    double taint_cap = 0.5;
    SolverOptions solver;
};

struct ReachabilityReport {
    Verdict verdict = Verdict::inconclusive_boundary;
    // S+ S- u_T - u_T per sample (+inf where the backward sweep was undefined).
    std::vector<double> residual;
    std::vector<std::uint8_t> tainted;
    double max_residual = 0.0;  // over untainted samples
    std::size_t worst_index = 0;
    Point worst_point{};
    double tainted_fraction = 0.0;
    double tol = 0.0;
    double taint_cap = 0.0;
    double lip = 0.0;
    double radius = 0.0;
};

// u_T is reachable iff S+_T S-_T u_T = u_T. Both sweeps share one kernel so
// the discrete closure is exact.
ReachabilityReport check_fixpoint(const GridFn& uT, const Hamiltonian& H, double T, const FixpointOptions& opts = {});

double default_tolerance(const GridFn& uT);

// phi(z) = T H*((z - x0)/T) + c touches u_T from above at x.
struct TouchingWitness {
    Point x{};
    Point x0{};
    std::size_t index = 0;
    std::size_t x0_index = 0;
    double c = 0.0;
    double contact = 0.0;  // phi(x) - u_T(x)
    double gap = 0.0;      // max_z (u_T(z) - phi(z)), clipped at 0
};

// Witness at the sample nearest to x, or nullopt when no touching function
// exists within tol. Throws "boundary-tainted point" at tainted samples.
std::optional<TouchingWitness> touching_witness(const GridFn& uT, const Hamiltonian& H, double T, const Point& x,
                                                const FixpointOptions& opts = {});

// Witness search at every sample. Tainted samples are reported as nullopt
// and flagged in `tainted`.
struct WitnessScan {
    std::vector<std::optional<TouchingWitness>> witnesses;
    std::vector<std::uint8_t> tainted;
    double tol = 0.0;

    // True when every untainted sample carries a witness.
    bool complete() const;
};
WitnessScan touching_witnesses(const GridFn& uT, const Hamiltonian& H, double T, const FixpointOptions& opts = {});

// ---- semiconcavity for H = |p|^alpha/alpha (scaled) or |p|^alpha (unscaled)

enum class PowerConvention { scaled, unscaled };

struct SemiconcavityOptions {
    // slack = margin * sqrt(h) * (1 + bound)
    double margin = 1.0;
    // alpha > 2: only points with |grad| > delta_factor * h * max(lip, 1) are checked.
    double delta_factor = 10.0;
    // Optional taint mask; samples whose stencil touches a tainted sample are skipped.
    std::vector<std::uint8_t> tainted;
};

struct SemiconcavityViolation {
    std::size_t index = 0;
    Point x{};
    Direction direction{};
    double second_difference = 0.0;
    double bound = 0.0;
};

struct SemiconcavityReport {
    bool pass = true;
    std::string branch;  // "alpha<2", "alpha=2", "alpha>2"
    double lip = 0.0;
    double T_effective = 0.0;
    double delta_min = 0.0;
    std::size_t checked = 0;
    std::size_t local_maxima = 0;
    std::vector<SemiconcavityViolation> violations;
};

// Necessary condition only: discrete second differences along axes and
// diagonals stay below the corollary's bound (plus slack), and are <= slack
// at strict discrete local maxima.
SemiconcavityReport check_semiconcavity_power(const GridFn& uT, double alpha, double T, PowerConvention convention,
                                              const SemiconcavityOptions& opts = {});

}  // namespace reach
