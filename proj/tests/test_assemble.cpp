#include "degenpde/assemble.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace degenpde;

namespace {

struct HestonSetup {
    ParabolicOperator op;
    DomainSpec dom;
    BoundaryPartition part;
    Grid grid;
};

HestonSetup hestonSetup() {
    HestonSetup s;
    HestonParams params;
    s.op = make_heston(params);
    s.dom.T = 1.0;
    // the mixed-derivative stencil needs h1 / h2 >= |rho| / sigma = 2.5
    s.dom.box = {{-0.5, 0.5}, {0.0, 0.2}};
    s.part = classify_degenerate_boundary(s.op, s.dom);
    s.grid = build_grid(s.dom, s.part, {11, 11}, 4);
    return s;
}

} // namespace

TEST_CASE("first-order row on the degenerate floor matches the hand stencil") {
    const HestonSetup s = hestonSetup();
    const HestonParams params;  // defaults match hestonSetup
    const SparseRows rows = assemble_spatial_operator(s.op, s.grid, 0.5);

    const int flat = s.grid.index({5, 0});  // floor node away from corners
    REQUIRE(s.grid.node_class[static_cast<size_t>(flat)] == NodeClass::Degenerate);
    const double h1 = s.grid.h[0], h2 = s.grid.h[1];
    const double b1 = params.r - params.q;        // x1 drift at x2 = 0
    const double bPerp = params.kappa * params.theta;  // inflow at the floor

    const auto cs = rows.cols(flat);
    const auto ws = rows.vals(flat);
    REQUIRE(cs.size() == 3);
    for (size_t k = 0; k < cs.size(); ++k) {
        if (cs[k] == flat)
            CHECK(ws[k] == doctest::Approx(bPerp / h2 + b1 / h1 + params.r));
        else if (cs[k] == s.grid.index({6, 0}))
            CHECK(ws[k] == doctest::Approx(-b1 / h1));  // upwind along x1
        else if (cs[k] == s.grid.index({5, 1}))
            CHECK(ws[k] == doctest::Approx(-bPerp / h2));  // one-sided inward
        else
            FAIL(doctest::String("unexpected column in floor row"));
    }
    CHECK(rows.dirichlet[static_cast<size_t>(flat)] == 0);
}

TEST_CASE("data rows are identity and flagged") {
    const HestonSetup s = hestonSetup();
    const SparseRows rows = assemble_spatial_operator(s.op, s.grid, 0.5);
    const int flat = s.grid.index({0, 5});  // x1_lo side
    REQUIRE(s.grid.node_class[static_cast<size_t>(flat)] == NodeClass::Dirichlet);
    CHECK(rows.dirichlet[static_cast<size_t>(flat)] == 1);
    REQUIRE(rows.cols(flat).size() == 1);
    CHECK(rows.cols(flat)[0] == flat);
    CHECK(rows.vals(flat)[0] == doctest::Approx(1.0));
}

TEST_CASE("interior rows on an admissible mesh form an M-matrix") {
    const HestonSetup s = hestonSetup();
    const SparseRows rows = assemble_spatial_operator(s.op, s.grid, 0.5);
    const MonotonicityVerdict verdict = verify_discrete_monotonicity(rows);
    CHECK(verdict.pass);
    CHECK(verdict.message.find("monotone") != std::string::npos);
}

TEST_CASE("an inadmissible mesh ratio is reported with a witness row") {
    // strong cross coupling: |a12| = 0.9 exceeds a11 h2 / h1 = 0.25
    ParabolicOperator op;
    op.dim = 2;
    op.a = [](const SpaceTimePoint&) {
        Eigen::MatrixXd a(2, 2);
        a << 1.0, 0.9, 0.9, 1.0;
        return a;
    };
    op.b = [](const SpaceTimePoint&) { return Eigen::VectorXd::Zero(2); };
    op.c = [](const SpaceTimePoint&) { return 0.0; };
    DomainSpec dom;
    dom.T = 1.0;
    dom.box = {{0.0, 4.0}, {0.0, 1.0}};
    const auto part = classify_degenerate_boundary(op, dom);
    const Grid grid = build_grid(dom, part, {5, 5}, 2);
    const SparseRows rows = assemble_spatial_operator(op, grid, 0.5);
    const MonotonicityVerdict verdict = verify_discrete_monotonicity(rows);
    CHECK_FALSE(verdict.pass);
    CHECK(verdict.worst_offdiag > 0.0);
    CHECK(verdict.message.find("not monotone") != std::string::npos);
    CHECK(grid.node_class[static_cast<size_t>(verdict.worst_row)] == NodeClass::Interior);
}

TEST_CASE("outflow drift on the degenerate boundary is rejected") {
    ParabolicOperator op;
    op.dim = 1;
    op.a = [](const SpaceTimePoint& p) {
        Eigen::MatrixXd a(1, 1);
        a << p.x[0];
        return a;
    };
    op.b = [](const SpaceTimePoint&) {
        Eigen::VectorXd b(1);
        b << -1.0;  // points out of the domain at x = 0
        return b;
    };
    op.c = [](const SpaceTimePoint&) { return 0.0; };
    DomainSpec dom;
    dom.T = 1.0;
    dom.box = {{0.0, 1.0}};
    const auto part = classify_degenerate_boundary(op, dom);
    const Grid grid = build_grid(dom, part, {5}, 2);
    CHECK_THROWS_WITH_AS(assemble_spatial_operator(op, grid, 0.5),
                         doctest::Contains("drift points out"), Error);
}

TEST_CASE("serial and parallel application agree bitwise") {
    const HestonSetup s = hestonSetup();
    const SparseRows rows = assemble_spatial_operator(s.op, s.grid, 0.25);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> x(static_cast<size_t>(rows.n));
    for (auto& v : x) v = dist(rng);
    std::vector<double> ys(x.size()), yp(x.size());
    apply_rows_serial(rows, x, ys);
    apply_rows_parallel(rows, x, yp);
    for (size_t i = 0; i < x.size(); ++i) CHECK(ys[i] == yp[i]);
}

TEST_CASE("row builder accumulates duplicate entries") {
    RowsBuilder builder(2);
    builder.add(0, 0, 1.0);
    builder.add(0, 1, -0.5);
    builder.add(0, 0, 2.0);
    builder.set_dirichlet(1);
    builder.add(1, 1, 1.0);
    const SparseRows rows = std::move(builder).compress();
    CHECK(rows.diag(0) == doctest::Approx(3.0));
    CHECK(rows.cols(0).size() == 2);
    CHECK(rows.dirichlet[1] == 1);
}
