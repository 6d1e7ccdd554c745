#include "degenpde/obstacle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace degenpde {

CompatibilityVerdict check_compatibility(const Grid& grid, const ObstacleData& data,
                                         double tol) {
    if (!data.g || !data.psi) throw Error("obstacle: g and psi must be set");
    CompatibilityVerdict verdict;
    verdict.pass = true;
    auto probe = [&](int level, int flat) {
        const SpaceTimePoint p = grid.point(level, flat);
        const double gap = data.psi(p) - data.g(p);
        if (gap > verdict.worst_violation) {
            verdict.worst_violation = gap;
            verdict.worst_point = p;
        }
    };
    const int total = grid.num_nodes();
    for (int flat = 0; flat < total; ++flat) {
        if (!grid.active[static_cast<size_t>(flat)]) continue;
        probe(grid.nt, flat);
        if (grid.node_class[static_cast<size_t>(flat)] == NodeClass::Dirichlet)
            for (int level = 0; level < grid.nt; ++level) probe(level, flat);
    }
    verdict.pass = verdict.worst_violation <= tol;
    return verdict;
}

ComplementarityDiagnostics complementarity_residual(
    const SparseRows& M, const std::vector<double>& u,
    const std::vector<double>& rhs, const std::vector<double>& psi) {
    ComplementarityDiagnostics d;
    std::vector<double> y(u.size());
    apply_rows_serial(M, u, y);
    for (int row = 0; row < M.n; ++row) {
        if (M.dirichlet[static_cast<size_t>(row)]) continue;
        const double eq = y[static_cast<size_t>(row)] - rhs[static_cast<size_t>(row)];
        const double gap = u[static_cast<size_t>(row)] - psi[static_cast<size_t>(row)];
        d.obstacle_violation = std::max(d.obstacle_violation, -gap);
        d.equation_violation = std::max(d.equation_violation, -eq);
        d.complementarity = std::max(d.complementarity, std::abs(std::min(eq, gap)));
    }
    return d;
}

namespace {

/// One projected SOR solve of  min{ M u - rhs, u - psi } = 0.  Pinned
/// rows of M are held fixed at their rhs values.  Returns iterations
/// used; throws on non-convergence.
int psorSolve(const SparseRows& M, const std::vector<double>& rhs,
              const std::vector<double>& psi, const PsorConfig& psor,
              std::vector<double>& u, double& residual_out) {
    const int n = M.n;
    for (int iter = 1; iter <= psor.max_iters; ++iter) {
        for (int row = 0; row < n; ++row) {
            if (M.dirichlet[static_cast<size_t>(row)]) {
                u[static_cast<size_t>(row)] = rhs[static_cast<size_t>(row)];
                continue;
            }
            const auto cs = M.cols(row);
            const auto ws = M.vals(row);
            double sum = 0.0, diag = 0.0;
            for (size_t k = 0; k < cs.size(); ++k) {
                if (cs[k] == row)
                    diag = ws[k];
                else
                    sum += ws[k] * u[static_cast<size_t>(cs[k])];
            }
            const double gs = (rhs[static_cast<size_t>(row)] - sum) / diag;
            const double relaxed =
                u[static_cast<size_t>(row)] +
                psor.omega * (gs - u[static_cast<size_t>(row)]);
            u[static_cast<size_t>(row)] =
                std::max(relaxed, psi[static_cast<size_t>(row)]);
        }

        // LCP residual in the max norm
        double res = 0.0;
        std::vector<double> y(static_cast<size_t>(n));
        apply_rows_serial(M, u, y);
        for (int row = 0; row < n; ++row) {
            if (M.dirichlet[static_cast<size_t>(row)]) continue;
            const double eq = y[static_cast<size_t>(row)] - rhs[static_cast<size_t>(row)];
            const double gap = u[static_cast<size_t>(row)] - psi[static_cast<size_t>(row)];
            res = std::max(res, std::abs(std::min(eq, gap)));
        }
        if (res <= psor.tol) {
            residual_out = res;
            return iter;
        }
    }
    std::ostringstream msg;
    msg << "obstacle: projected SOR failed to reach tolerance " << psor.tol
        << " within " << psor.max_iters << " iterations";
    throw Error(msg.str());
}

} // namespace

ObstacleResult solve_obstacle_problem(const ParabolicOperator& op, const Grid& grid,
                                      const ObstacleData& data,
                                      const SolverConfig& cfg,
                                      const PsorConfig& psor) {
    if (!data.f || !data.g || !data.psi)
        throw Error("obstacle: f, g and psi must be set");
    if (!(psor.omega > 0.0 && psor.omega < 2.0))
        throw Error("obstacle: omega must lie in (0, 2)");
    const auto compat = check_compatibility(grid, data);
    if (!compat.pass) {
        std::ostringstream msg;
        msg << "obstacle: psi exceeds g by " << compat.worst_violation
            << " at t = " << compat.worst_point.t;
        throw Error(msg.str());
    }

    const int total = grid.num_nodes();
    ObstacleResult result;
    result.u.assign(static_cast<size_t>(grid.nt) + 1,
                    GridFunction(static_cast<size_t>(total), 0.0));
    result.exercise.assign(static_cast<size_t>(grid.nt) + 1,
                           std::vector<char>(static_cast<size_t>(total), 0));

    // Terminal slice: u = g, already >= psi by compatibility.
    for (int flat = 0; flat < total; ++flat) {
        if (!grid.active[static_cast<size_t>(flat)]) continue;
        const SpaceTimePoint p = grid.point(grid.nt, flat);
        result.u[static_cast<size_t>(grid.nt)][static_cast<size_t>(flat)] = data.g(p);
        result.exercise[static_cast<size_t>(grid.nt)][static_cast<size_t>(flat)] =
            data.g(p) - data.psi(p) <= 10.0 * psor.tol ? 1 : 0;
    }

    SparseRows A = assemble_spatial_operator(op, grid, grid.time(grid.nt));
    SparseRows M = build_stepping_matrix(A, grid, cfg);
    result.monotonicity = verify_discrete_monotonicity(M);
    if (!result.monotonicity.pass)
        throw Error("obstacle: stepping matrix fails the monotonicity check: " +
                    result.monotonicity.message);

    std::vector<double> rhs(static_cast<size_t>(total), 0.0);
    std::vector<double> psiLevel(static_cast<size_t>(total), 0.0);
    std::vector<double> explicitPart(static_cast<size_t>(total), 0.0);
    SparseRows Anext = A;

    for (int level = grid.nt - 1; level >= 0; --level) {
        const double t = grid.time(level);
        const double tNext = grid.time(level + 1);
        if (!op.time_independent) {
            Anext = std::move(A);
            A = assemble_spatial_operator(op, grid, t);
            M = build_stepping_matrix(A, grid, cfg);
            result.monotonicity = verify_discrete_monotonicity(M);
            if (!result.monotonicity.pass)
                throw Error("obstacle: stepping matrix fails the monotonicity check: " +
                            result.monotonicity.message);
        }

        const auto& uNext = result.u[static_cast<size_t>(level) + 1];
        if (cfg.theta < 1.0) {
            if (cfg.parallel)
                apply_rows_parallel(Anext, uNext, explicitPart);
            else
                apply_rows_serial(Anext, uNext, explicitPart);
        }

        for (int flat = 0; flat < total; ++flat) {
            const auto cls = grid.node_class[static_cast<size_t>(flat)];
            psiLevel[static_cast<size_t>(flat)] =
                grid.active[static_cast<size_t>(flat)]
                    ? data.psi(grid.point(level, flat))
                    : 0.0;
            if (cls == NodeClass::Inactive) {
                rhs[static_cast<size_t>(flat)] = 0.0;
                psiLevel[static_cast<size_t>(flat)] =
                    -std::numeric_limits<double>::infinity();
                continue;
            }
            if (M.dirichlet[static_cast<size_t>(flat)]) {
                rhs[static_cast<size_t>(flat)] = data.g(grid.point(level, flat));
                continue;
            }
            const double fTheta =
                cfg.theta * data.f(grid.point(level, flat)) +
                (1.0 - cfg.theta) * data.f(SpaceTimePoint{tNext, grid.coords(flat)});
            double v = uNext[static_cast<size_t>(flat)] / grid.dt + fTheta;
            if (cfg.theta < 1.0)
                v -= (1.0 - cfg.theta) * explicitPart[static_cast<size_t>(flat)];
            rhs[static_cast<size_t>(flat)] = v;
        }

        auto& u = result.u[static_cast<size_t>(level)];
        u = uNext;  // warm start from the level above
        double residual = 0.0;
        const int iters = psorSolve(M, rhs, psiLevel, psor, u, residual);
        result.total_iterations += iters;
        result.max_iterations_step = std::max(result.max_iterations_step, iters);
        result.worst_residual = std::max(result.worst_residual, residual);

        // contact set: nodes resting on the obstacle
        auto& mask = result.exercise[static_cast<size_t>(level)];
        for (int flat = 0; flat < total; ++flat)
            mask[static_cast<size_t>(flat)] =
                grid.active[static_cast<size_t>(flat)] &&
                        u[static_cast<size_t>(flat)] -
                                psiLevel[static_cast<size_t>(flat)] <=
                            10.0 * psor.tol
                    ? 1
                    : 0;
    }
    return result;
}

} // namespace degenpde
