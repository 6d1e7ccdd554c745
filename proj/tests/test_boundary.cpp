#include "degenpde/boundary.hpp"

#include <doctest.h>

#include <algorithm>

using namespace degenpde;

namespace {

DomainSpec hestonDomain() {
    DomainSpec dom;
    dom.T = 1.0;
    dom.box = {{-0.5, 0.5}, {0.0, 0.5}};
    return dom;
}

bool contains(const std::vector<std::string>& v, const std::string& id) {
    return std::find(v.begin(), v.end(), id) != v.end();
}

} // namespace

TEST_CASE("domain validation") {
    DomainSpec dom = hestonDomain();
    CHECK_NOTHROW(dom.validate());
    dom.T = 0.0;
    CHECK_THROWS_AS(dom.validate(), Error);
    dom = hestonDomain();
    dom.box[0] = {1.0, 1.0};
    CHECK_THROWS_AS(dom.validate(), Error);
    dom = hestonDomain();
    dom.truncated_faces = {"x7_lo"};
    CHECK_THROWS_AS(dom.validate(), Error);
}

TEST_CASE("parabolic boundary of a 2-d cylinder has nine faces") {
    const auto faces = parabolic_boundary(hestonDomain());
    CHECK(faces.size() == 9);  // top + 4 sides + 4 corner edges
    int tops = 0, sides = 0, corners = 0;
    for (const auto& f : faces) {
        if (f.kind == FaceKind::Top) ++tops;
        if (f.kind == FaceKind::Side) ++sides;
        if (f.kind == FaceKind::Corner) ++corners;
    }
    CHECK(tops == 1);
    CHECK(sides == 4);
    CHECK(corners == 4);
}

TEST_CASE("variance floor is the only degenerate face of the model operator") {
    const ParabolicOperator op = make_heston(HestonParams{});
    const BoundaryPartition part = classify_degenerate_boundary(op, hestonDomain());
    CHECK(part.deg == std::vector<std::string>{"x2_lo"});
    CHECK(contains(part.nondeg, "top"));
    CHECK(contains(part.nondeg, "x1_lo"));
    CHECK(contains(part.nondeg, "x1_hi"));
    CHECK(contains(part.nondeg, "x2_hi"));

    const BoundaryFace* floor = find_face(part, "x2_lo");
    REQUIRE(floor != nullptr);
    CHECK(floor->degenerate);
    CHECK(floor->n0 == doctest::Approx(0.0));
    CHECK(floor->nvec[1] == doctest::Approx(1.0));

    const BoundaryFace* corner = find_face(part, "corner_x2_lo");
    REQUIRE(corner != nullptr);
    CHECK(corner->degenerate);  // inherits the adjacent side label
    const BoundaryFace* otherCorner = find_face(part, "corner_x1_lo");
    REQUIRE(otherCorner != nullptr);
    CHECK_FALSE(otherCorner->degenerate);
}

TEST_CASE("degeneracy is detected by extrapolation, not by smallness") {
    // a = 50 x vanishes at x = 0 but is far above eps_a at every probe
    // offset; the linear extrapolation to the face must still label it.
    ParabolicOperator op;
    op.dim = 1;
    op.time_independent = true;
    op.a = [](const SpaceTimePoint& p) {
        Eigen::MatrixXd a(1, 1);
        a << 50.0 * p.x[0];
        return a;
    };
    op.b = [](const SpaceTimePoint&) { return Eigen::VectorXd::Ones(1); };
    op.c = [](const SpaceTimePoint&) { return 0.0; };

    DomainSpec dom;
    dom.T = 1.0;
    dom.box = {{0.0, 1.0}};
    const BoundaryPartition part = classify_degenerate_boundary(op, dom);
    CHECK(part.deg == std::vector<std::string>{"x1_lo"});
    CHECK(contains(part.nondeg, "x1_hi"));
}

TEST_CASE("a face with mixed verdicts across sample times is rejected") {
    // a vanishes toward the left endpoint only for t > 1/2, so the samples
    // on face x1_lo disagree and classification must fail loudly.
    ParabolicOperator op;
    op.dim = 1;
    op.a = [](const SpaceTimePoint& p) {
        Eigen::MatrixXd a(1, 1);
        a << (p.t > 0.5 ? p.x[0] : 1.0);
        return a;
    };
    op.b = [](const SpaceTimePoint&) { return Eigen::VectorXd::Zero(1); };
    op.c = [](const SpaceTimePoint&) { return 0.0; };

    DomainSpec dom;
    dom.T = 1.0;
    dom.box = {{0.0, 1.0}};
    CHECK_THROWS_WITH_AS(classify_degenerate_boundary(op, dom),
                         doctest::Contains("x1_lo"), Error);
}

TEST_CASE("truncation faces are forced non-degenerate") {
    const ParabolicOperator op = make_heston(HestonParams{});
    DomainSpec dom = hestonDomain();
    dom.truncated_faces = {"x2_lo"};
    const BoundaryPartition part = classify_degenerate_boundary(op, dom);
    CHECK(part.deg.empty());
    const BoundaryFace* floor = find_face(part, "x2_lo");
    REQUIRE(floor != nullptr);
    CHECK_FALSE(floor->degenerate);
    CHECK(floor->truncation);
}

TEST_CASE("inward normal checks face membership") {
    const auto faces = parabolic_boundary(hestonDomain());
    const BoundaryFace* floor = nullptr;
    const BoundaryFace* top = nullptr;
    const BoundaryFace* corner = nullptr;
    for (const auto& f : faces) {
        if (f.id == "x2_lo") floor = &f;
        if (f.id == "top") top = &f;
        if (f.id == "corner_x2_lo") corner = &f;
    }
    REQUIRE(floor != nullptr);
    REQUIRE(top != nullptr);
    REQUIRE(corner != nullptr);

    const auto [n0, nvec] = inward_normal(*floor, SpaceTimePoint{0.5, {0.0, 0.0}});
    CHECK(n0 == doctest::Approx(0.0));
    CHECK(nvec[1] == doctest::Approx(1.0));

    const auto [tn0, tnvec] = inward_normal(*top, SpaceTimePoint{1.0, {0.0, 0.2}});
    CHECK(tn0 == doctest::Approx(-1.0));

    CHECK_THROWS_AS(inward_normal(*floor, SpaceTimePoint{0.5, {0.0, 0.3}}), Error);
    CHECK_THROWS_AS(inward_normal(*top, SpaceTimePoint{0.5, {0.0, 0.2}}), Error);
    CHECK_THROWS_AS(inward_normal(*corner, SpaceTimePoint{0.5, {0.5, 0.0}}), Error);
}
