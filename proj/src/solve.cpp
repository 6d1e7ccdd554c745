#include "degenpde/solve.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <cmath>
#include <sstream>

namespace degenpde {

SparseRows build_stepping_matrix(const SparseRows& A, const Grid& grid,
                                 const SolverConfig& cfg) {
    RowsBuilder builder(A.n);
    for (int row = 0; row < A.n; ++row) {
        const bool pinned =
            A.dirichlet[static_cast<size_t>(row)] ||
            (cfg.force_deg_dirichlet &&
             grid.node_class[static_cast<size_t>(row)] == NodeClass::Degenerate);
        if (pinned) {
            builder.add(row, row, 1.0);
            builder.set_dirichlet(row);
            continue;
        }
        builder.add(row, row, 1.0 / grid.dt);
        const auto cs = A.cols(row);
        const auto ws = A.vals(row);
        for (size_t k = 0; k < cs.size(); ++k)
            builder.add(row, cs[k], cfg.theta * ws[k]);
    }
    return std::move(builder).compress();
}

namespace {

Eigen::SparseMatrix<double> toEigen(const SparseRows& rows) {
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(rows.col.size());
    for (int row = 0; row < rows.n; ++row) {
        const auto cs = rows.cols(row);
        const auto ws = rows.vals(row);
        for (size_t k = 0; k < cs.size(); ++k)
            triplets.emplace_back(row, cs[k], ws[k]);
    }
    Eigen::SparseMatrix<double> m(rows.n, rows.n);
    m.setFromTriplets(triplets.begin(), triplets.end());
    m.makeCompressed();
    return m;
}

double relativeResidual(const SparseRows& M, const std::vector<double>& u,
                        const std::vector<double>& rhs, bool parallel) {
    std::vector<double> y(u.size());
    if (parallel)
        apply_rows_parallel(M, u, y);
    else
        apply_rows_serial(M, u, y);
    double num = 0.0, den = 1.0;
    for (size_t i = 0; i < u.size(); ++i) {
        num = std::max(num, std::abs(y[i] - rhs[i]));
        den = std::max(den, std::abs(rhs[i]));
    }
    return num / den;
}

} // namespace

SolveResult solve_terminal_value_problem(const ParabolicOperator& op, const Grid& grid,
                                         const ProblemData& data,
                                         const SolverConfig& cfg) {
    if (!data.f || !data.g) throw Error("solve: f and g must be set");
    if (!(cfg.theta >= 0.0 && cfg.theta <= 1.0))
        throw Error("solve: theta must lie in [0, 1]");
    if (cfg.force_deg_dirichlet && !data.ghost)
        throw Error("solve: forced degenerate Dirichlet mode needs ghost data");

    const int total = grid.num_nodes();
    SolveResult result;
    result.u.assign(static_cast<size_t>(grid.nt) + 1,
                    GridFunction(static_cast<size_t>(total), 0.0));

    // Terminal slice: data on {T} x closure(O).
    for (int flat = 0; flat < total; ++flat) {
        if (!grid.active[static_cast<size_t>(flat)]) continue;
        result.u[static_cast<size_t>(grid.nt)][static_cast<size_t>(flat)] =
            data.g(grid.point(grid.nt, flat));
        ++result.stats.terminal_reads;
    }

    SparseRows A = assemble_spatial_operator(op, grid, grid.time(grid.nt));
    SparseRows M = build_stepping_matrix(A, grid, cfg);
    result.monotonicity = verify_discrete_monotonicity(M);
    if (!result.monotonicity.pass && !cfg.allow_nonmonotone)
        throw Error("solve: stepping matrix fails the monotonicity check: " +
                    result.monotonicity.message);

    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    Eigen::SparseMatrix<double> Msp = toEigen(M);
    lu.compute(Msp);
    if (lu.info() != Eigen::Success)
        throw Error("solve: sparse LU factorization failed");

    std::vector<double> rhs(static_cast<size_t>(total), 0.0);
    std::vector<double> explicitPart(static_cast<size_t>(total), 0.0);
    SparseRows Anext = A;  // A at the level above the one being solved

    for (int level = grid.nt - 1; level >= 0; --level) {
        const double t = grid.time(level);
        const double tNext = grid.time(level + 1);
        if (!op.time_independent) {
            Anext = std::move(A);
            A = assemble_spatial_operator(op, grid, t);
            M = build_stepping_matrix(A, grid, cfg);
            result.monotonicity = verify_discrete_monotonicity(M);
            if (!result.monotonicity.pass && !cfg.allow_nonmonotone)
                throw Error("solve: stepping matrix fails the monotonicity check: " +
                            result.monotonicity.message);
            Msp = toEigen(M);
            lu.compute(Msp);
            if (lu.info() != Eigen::Success)
                throw Error("solve: sparse LU factorization failed");
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
            if (cls == NodeClass::Inactive) {
                rhs[static_cast<size_t>(flat)] = 0.0;
                continue;
            }
            const bool pinned = M.dirichlet[static_cast<size_t>(flat)] != 0;
            if (pinned) {
                if (cls == NodeClass::Dirichlet) {
                    rhs[static_cast<size_t>(flat)] = data.g(grid.point(level, flat));
                    ++result.stats.dirichlet_reads;
                } else {
                    rhs[static_cast<size_t>(flat)] = data.ghost(grid.point(level, flat));
                    ++result.stats.degenerate_reads;
                }
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

        Eigen::Map<const Eigen::VectorXd> rhsVec(rhs.data(), total);
        Eigen::VectorXd sol = lu.solve(rhsVec);
        if (lu.info() != Eigen::Success)
            throw Error("solve: sparse LU back substitution failed");
        auto& u = result.u[static_cast<size_t>(level)];
        for (int flat = 0; flat < total; ++flat)
            u[static_cast<size_t>(flat)] = sol(flat);

        const double res = relativeResidual(M, u, rhs, cfg.parallel);
        result.max_residual = std::max(result.max_residual, res);
        if (res > cfg.tol_lin) {
            std::ostringstream msg;
            msg << "solve: linear residual " << res << " exceeds tolerance "
                << cfg.tol_lin << " at level " << level;
            throw Error(msg.str());
        }
    }
    return result;
}

ConvergenceReport manufactured_convergence(
    const ParabolicOperator& op, const DomainSpec& dom,
    const BoundaryPartition& partition, const ScalarField& exact,
    const ProblemData& data,
    const std::vector<std::pair<std::vector<int>, int>>& ladder,
    const SolverConfig& cfg) {
    if (ladder.size() < 2)
        throw Error("convergence: ladder needs at least two levels");

    ConvergenceReport report;
    for (const auto& [nodes, nt] : ladder) {
        const Grid grid = build_grid(dom, partition, nodes, nt);
        const SolveResult solved = solve_terminal_value_problem(op, grid, data, cfg);
        ConvergenceLevel level;
        level.n = nodes;
        level.nt = nt;
        for (int lvl = 0; lvl <= grid.nt; ++lvl)
            for (int flat = 0; flat < grid.num_nodes(); ++flat)
                level.err_inf = std::max(
                    level.err_inf,
                    std::abs(solved.u[static_cast<size_t>(lvl)][static_cast<size_t>(flat)] -
                             exact(grid.point(lvl, flat))));
        report.levels.push_back(std::move(level));
    }

    for (size_t i = 1; i < report.levels.size(); ++i) {
        const auto& prev = report.levels[i - 1];
        const auto& cur = report.levels[i];
        // refinement factor: spatial when the mesh changed, else temporal
        double factor = 0.0;
        for (size_t ax = 0; ax < prev.n.size(); ++ax)
            factor = std::max(factor,
                              (cur.n[ax] - 1.0) / (prev.n[ax] - 1.0));
        if (factor < 1.01) factor = static_cast<double>(cur.nt) / prev.nt;
        if (factor < 1.01) throw Error("convergence: ladder levels do not refine");
        report.orders.push_back(std::log(prev.err_inf / cur.err_inf) /
                                std::log(factor));
    }
    report.order = report.orders.back();
    return report;
}

} // namespace degenpde
