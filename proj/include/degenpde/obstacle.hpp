#pragma once

#include "degenpde/solve.hpp"

namespace degenpde {

/// Data of the obstacle problem  min{ Lu - f, u - psi } = 0  with u = g on
/// the non-degenerate boundary.  Compatibility psi <= g is required where
/// data is prescribed.
struct ObstacleData {
    ScalarField f;
    ScalarField g;
    ScalarField psi;
};

struct PsorConfig {
    double omega = 1.2;       ///< over-relaxation weight
    double tol = 1e-10;       ///< max-norm tolerance on the LCP residual
    int max_iters = 20000;    ///< per time step
};

/// Max-norm diagnostics of  min{ M u - rhs, u - psi } = 0  at one level.
struct ComplementarityDiagnostics {
    double obstacle_violation = 0.0;   ///< max positive part of psi - u
    double equation_violation = 0.0;   ///< max positive part of rhs - M u
    double complementarity = 0.0;      ///< max |min(M u - rhs, u - psi)|
};

struct ObstacleResult {
    Trajectory u;
    std::vector<std::vector<char>> exercise;  ///< contact set per level
    long total_iterations = 0;
    int max_iterations_step = 0;
    double worst_residual = 0.0;   ///< worst converged LCP residual
    MonotonicityVerdict monotonicity;
};

struct CompatibilityVerdict {
    bool pass = false;
    double worst_violation = 0.0;  ///< max of psi - g over data nodes
    SpaceTimePoint worst_point;
};

/// Checks psi <= g (up to tol) on the terminal slice and every
/// Dirichlet node at every time level.
CompatibilityVerdict check_compatibility(const Grid& grid, const ObstacleData& data,
                                         double tol = 1e-12);

/// Backward march of the discrete obstacle problem: each implicit step is
/// the linear complementarity problem  min{ M u - rhs, u - psi } = 0,
/// solved by projected SOR.  Requires a monotone stepping matrix and
/// compatible data; throws when PSOR fails to converge.
ObstacleResult solve_obstacle_problem(const ParabolicOperator& op, const Grid& grid,
                                      const ObstacleData& data,
                                      const SolverConfig& cfg = {},
                                      const PsorConfig& psor = {});

/// Diagnostics of one level of a computed solution against the stepping
/// system that produced it.
ComplementarityDiagnostics complementarity_residual(
    const SparseRows& M, const std::vector<double>& u,
    const std::vector<double>& rhs, const std::vector<double>& psi);

} // namespace degenpde
