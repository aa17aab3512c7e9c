#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "reach/grid.hpp"
#include "reach/hamiltonian.hpp"
#include "reach/kernel.hpp"

namespace reach {

struct SolverOptions {
    // Restrict the optimization to the coercivity radius (search_radius).
    bool prune = true;
    // Exact linear-time lower envelope of parabolas for the quadratic kernel.
    bool fast_quadratic = true;
};

enum class Sweep {
    forward,   // S+_T u(x) = min_y { u(y) + T H*((x-y)/T) }
    backward,  // S-_T u(x) = max_y { u(y) - T H*((y-x)/T) }
};

// Result of one Hopf-Lax sweep. arg[k] is the flat index of the optimizer
// for output sample k; tainted[k] is set when that optimizer lies on the
// outermost grid row/column or was itself tainted in the input.
struct EvolvedFn {
    GridFn fn;
    std::vector<std::uint8_t> tainted;
    std::vector<std::size_t> arg;
    double T = 0.0;
    Hamiltonian H;
    double radius = 0.0;

    double tainted_fraction() const noexcept;
};

// Kernel for inputs with Lipschitz constant lip (already Euclidean-safe,
// see radius_lipschitz). Pruning radius is search_radius(H, lip, T) unless
// pruning is disabled.
Kernel make_kernel(const Hamiltonian& H, double T, const Grid& grid, double lip, const SolverOptions& opts = {});

// One sweep with an explicit kernel. input_taint (optional, same size as
// input) is propagated through the optimizers.
EvolvedFn sweep(const Kernel& kernel, Sweep dir, const GridFn& input, std::span<const std::uint8_t> input_taint = {},
                const SolverOptions& opts = {});

EvolvedFn forward(const GridFn& u0, const Hamiltonian& H, double T, const SolverOptions& opts = {});
EvolvedFn backward(const GridFn& uT, const Hamiltonian& H, double T, const SolverOptions& opts = {});

struct ArgminWitness {
    Point y{};
    std::size_t index = 0;
    double value = 0.0;
};

// Minimizer of u0(y) + k(x - y) at the sample nearest to x. Ties go to the
// smallest |y - x|, then the smallest flat index.
ArgminWitness argmin_at(const Kernel& kernel, const GridFn& u0, std::size_t x);
ArgminWitness argmin_witness(const GridFn& u0, const Hamiltonian& H, double T, const Point& x,
                             const SolverOptions& opts = {});

}  // namespace reach
