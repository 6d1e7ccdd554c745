#include "degenpde/solve.hpp"

#include <doctest.h>

#include <cmath>

using namespace degenpde;

namespace {

struct HestonSetup {
    HestonParams params;
    ParabolicOperator op;
    DomainSpec dom;
    BoundaryPartition part;
    Grid grid;
};

HestonSetup hestonSetup(std::vector<int> nodes = {9, 9}, int nt = 4) {
    HestonSetup s;
    s.op = make_heston(s.params);
    s.dom.T = 1.0;
    s.dom.box = {{-0.5, 0.5}, {0.0, 0.2}};
    s.part = classify_degenerate_boundary(s.op, s.dom);
    s.grid = build_grid(s.dom, s.part, nodes, nt);
    return s;
}

/// Affine exact solution with manufactured source; the scheme reproduces
/// it to rounding because every difference stencil is exact on affine u.
ProblemData affineData(const HestonParams& params) {
    const double a0 = 0.3, at = 0.2, a1 = 0.7, a2 = -0.4;
    auto exact = [=](const SpaceTimePoint& p) {
        return a0 + at * p.t + a1 * p.x[0] + a2 * p.x[1];
    };
    ProblemData data;
    data.g = exact;
    data.f = [=](const SpaceTimePoint& p) {
        const double b1 = params.r - params.q - p.x[1] / 2.0;
        const double b2 = params.kappa * (params.theta - p.x[1]);
        return -at - (b1 * a1 + b2 * a2) + params.r * exact(p);
    };
    return data;
}

double affineExact(const SpaceTimePoint& p) {
    return 0.3 + 0.2 * p.t + 0.7 * p.x[0] - 0.4 * p.x[1];
}

} // namespace

TEST_CASE("affine solutions are reproduced to rounding") {
    const HestonSetup s = hestonSetup();
    const SolveResult res =
        solve_terminal_value_problem(s.op, s.grid, affineData(s.params));
    double err = 0.0;
    for (int lvl = 0; lvl <= s.grid.nt; ++lvl)
        for (int flat = 0; flat < s.grid.num_nodes(); ++flat)
            err = std::max(err, std::abs(res.u[static_cast<size_t>(lvl)][static_cast<size_t>(flat)] -
                                         affineExact(s.grid.point(lvl, flat))));
    CHECK(err <= 1e-10);
    CHECK(res.monotonicity.pass);
    CHECK(res.max_residual <= 1e-10);
    CHECK(res.stats.degenerate_reads == 0);
    CHECK(res.stats.terminal_reads == s.grid.num_nodes());
    CHECK(res.stats.dirichlet_reads > 0);
}

TEST_CASE("the solution never reads values on the degenerate boundary") {
    const HestonSetup s = hestonSetup();
    ProblemData data = affineData(s.params);
    data.ghost = [](const SpaceTimePoint&) { return 1e6; };
    const SolveResult poisoned = solve_terminal_value_problem(s.op, s.grid, data);
    data.ghost = [](const SpaceTimePoint&) { return -1e6; };
    const SolveResult poisoned2 = solve_terminal_value_problem(s.op, s.grid, data);
    CHECK(poisoned.stats.degenerate_reads == 0);
    CHECK(poisoned2.stats.degenerate_reads == 0);
    for (int lvl = 0; lvl <= s.grid.nt; ++lvl)
        for (int flat = 0; flat < s.grid.num_nodes(); ++flat)
            CHECK(poisoned.u[static_cast<size_t>(lvl)][static_cast<size_t>(flat)] ==
                  poisoned2.u[static_cast<size_t>(lvl)][static_cast<size_t>(flat)]);
}

TEST_CASE("input validation") {
    const HestonSetup s = hestonSetup();
    ProblemData data = affineData(s.params);
    SolverConfig cfg;
    cfg.theta = 1.5;
    CHECK_THROWS_AS(solve_terminal_value_problem(s.op, s.grid, data, cfg), Error);
    cfg = SolverConfig{};
    cfg.force_deg_dirichlet = true;  // no ghost supplied
    CHECK_THROWS_AS(solve_terminal_value_problem(s.op, s.grid, data, cfg), Error);
    ProblemData incomplete;
    incomplete.g = data.g;
    CHECK_THROWS_AS(solve_terminal_value_problem(s.op, s.grid, incomplete), Error);
}

TEST_CASE("forcing data on the degenerate boundary changes the solution") {
    const HestonSetup s = hestonSetup();
    ProblemData data = affineData(s.params);
    const SolveResult normal = solve_terminal_value_problem(s.op, s.grid, data);

    data.ghost = [&data](const SpaceTimePoint& p) { return data.g(p) + 1.0; };
    SolverConfig cfg;
    cfg.force_deg_dirichlet = true;
    const SolveResult forced = solve_terminal_value_problem(s.op, s.grid, data, cfg);
    CHECK(forced.stats.degenerate_reads > 0);
    double diff = 0.0;
    for (int lvl = 0; lvl <= s.grid.nt; ++lvl)
        for (int flat = 0; flat < s.grid.num_nodes(); ++flat)
            diff = std::max(diff,
                            std::abs(forced.u[static_cast<size_t>(lvl)][static_cast<size_t>(flat)] -
                                     normal.u[static_cast<size_t>(lvl)][static_cast<size_t>(flat)]));
    CHECK(diff >= 0.1);
}

TEST_CASE("a non-monotone stepping matrix aborts the solve") {
    // correlation too strong for an equal-count mesh on this box
    HestonSetup s;
    s.op = make_heston(s.params);
    s.dom.T = 1.0;
    s.dom.box = {{-0.5, 0.5}, {0.0, 1.0}};
    s.part = classify_degenerate_boundary(s.op, s.dom);
    s.grid = build_grid(s.dom, s.part, {9, 9}, 4);
    CHECK_THROWS_WITH_AS(
        solve_terminal_value_problem(s.op, s.grid, affineData(s.params)),
        doctest::Contains("monotonicity"), Error);
}

TEST_CASE("manufactured convergence observes the expected orders in 1-d") {
    const ParabolicOperator op = make_identity_laplacian(1);
    DomainSpec dom;
    dom.T = 0.5;
    dom.box = {{0.0, 1.0}};
    const auto part = classify_degenerate_boundary(op, dom);

    SUBCASE("second order in space with dt ~ h^2") {
        const double pi = 3.14159265358979323846;
        ScalarField exact = [pi](const SpaceTimePoint& p) {
            return std::exp(-p.t) * std::sin(pi * p.x[0]);
        };
        ProblemData data;
        data.g = exact;
        data.f = [exact, pi](const SpaceTimePoint& p) {
            return (1.0 + pi * pi) * exact(p);
        };
        const ConvergenceReport report = manufactured_convergence(
            op, dom, part, exact, data, {{{9}, 8}, {{17}, 32}, {{33}, 128}});
        REQUIRE(report.orders.size() == 2);
        CHECK(report.levels[0].err_inf > report.levels[2].err_inf);
        CHECK(report.order >= 1.5);
    }

    SUBCASE("first order in time on spatially constant solutions") {
        ScalarField exact = [](const SpaceTimePoint& p) { return std::exp(-p.t); };
        ProblemData data;
        data.g = exact;
        data.f = exact;  // -u_t = e^{-t}
        const ConvergenceReport report = manufactured_convergence(
            op, dom, part, exact, data, {{{9}, 4}, {{9}, 8}, {{9}, 16}});
        CHECK(report.order >= 0.85);
        CHECK(report.order <= 1.3);
    }

    SUBCASE("ladder validation") {
        ScalarField exact = [](const SpaceTimePoint&) { return 0.0; };
        ProblemData data;
        data.g = exact;
        data.f = exact;
        CHECK_THROWS_AS(
            manufactured_convergence(op, dom, part, exact, data, {{{9}, 4}}), Error);
        CHECK_THROWS_AS(manufactured_convergence(op, dom, part, exact, data,
                                                 {{{9}, 4}, {{9}, 4}}),
                        Error);
    }
}
