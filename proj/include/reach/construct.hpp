#pragma once

#include <cstdint>
#include <vector>

#include "reach/hopflax.hpp"

namespace reach {

struct Anchor {
    Point x{};
    double c = 0.0;
};

// min{0, T H*((x - x_i)/T) + c_i} sampled on the grid. Needs a locally
// Lipschitz conjugate: power families and Quadratic only.
GridFn cone_target(const Hamiltonian& H, double T, const std::vector<Anchor>& anchors, const Grid& grid);

// Pointwise minimum; lip cache = max of the input caches when all are set.
GridFn min_envelope(const std::vector<GridFn>& targets);

// lambda * u_T, lambda >= 0; lip cache scaled.
GridFn scale_target(const GridFn& uT, double lambda);

struct RandomTarget {
    GridFn u0;
    GridFn uT;
    std::vector<std::uint8_t> tainted;
};

// Seeded piecewise-linear u0 with Lipschitz constant <= 1 (1D: random
// slopes between random knots; 2D: max of mins of random planes), evolved by
// forward(u0, H, T). Deterministic in seed.
RandomTarget random_reachable(const Hamiltonian& H, double T, const Grid& grid, std::uint64_t seed,
                              const SolverOptions& opts = {});

// The u0 part alone.
GridFn random_lipschitz(const Grid& grid, std::uint64_t seed);

}  // namespace reach
