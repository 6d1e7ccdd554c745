#pragma once

#include "degenpde/operator.hpp"

#include <set>
#include <string>
#include <utility>
#include <vector>

namespace degenpde {

/// A space-time cylinder (0,T) x O with O an axis-aligned box.
/// truncated_faces marks side faces that are artificial far-field cuts of
/// an unbounded model domain; those always take Dirichlet data.
struct DomainSpec {
    double T = 1.0;
    std::vector<std::pair<double, double>> box;  ///< (lo_i, hi_i) per axis
    std::set<std::string> truncated_faces;       ///< e.g. {"x1_lo", "x2_hi"}

    int dim() const { return static_cast<int>(box.size()); }
    void validate() const;
};

enum class FaceKind { Top, Side, Corner };

/// One face of the parabolic boundary of a box cylinder.
struct BoundaryFace {
    std::string id;       ///< "top", "x<k>_lo", "x<k>_hi", "corner_x<k>_lo", ...
    FaceKind kind = FaceKind::Side;
    int axis = -1;        ///< fixed spatial axis for sides/corners, -1 for top
    int side = 0;         ///< 0 = lo, 1 = hi
    double fixed = 0.0;   ///< value of the fixed coordinate (x_axis, or t for top)
    double n0 = 0.0;      ///< time component of the inward unit normal
    std::vector<double> nvec;  ///< spatial components of the inward unit normal
    bool degenerate = false;
    bool truncation = false;
};

/// Faces of the parabolic boundary split into degenerate and
/// non-degenerate portions.
struct BoundaryPartition {
    std::vector<BoundaryFace> faces;
    std::vector<std::string> deg;     ///< ids of degenerate side faces
    std::vector<std::string> nondeg;  ///< ids of non-degenerate top/side faces
};

/// Parabolic boundary of the cylinder: the top {T} x O, the sides
/// (0,T) x dO per box face, and the corner edges {T} x dO.  The initial
/// slice {0} x O is excluded under the terminal-value convention.
std::vector<BoundaryFace> parabolic_boundary(const DomainSpec& dom);

/// Labels each side face degenerate when ||a|| tends to zero along inward
/// probes at every sampled face point (and n0 = 0 there).  The top face
/// is always non-degenerate; truncation faces are forced non-degenerate.
/// Throws on a face with mixed probe verdicts across its sample points.
BoundaryPartition classify_degenerate_boundary(
    const ParabolicOperator& op, const DomainSpec& dom,
    double eps_a = 1e-10,
    std::vector<double> probe_offsets = {},
    int samples_per_axis = 7);

/// Inward unit normal (n0, nvec) at a point on the face.  Errors when p
/// does not lie on the face or when the face is a corner.
std::pair<double, std::vector<double>> inward_normal(const BoundaryFace& face,
                                                     const SpaceTimePoint& p);

const BoundaryFace* find_face(const BoundaryPartition& partition, const std::string& id);

} // namespace degenpde
