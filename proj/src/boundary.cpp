#include "degenpde/boundary.hpp"

#include <algorithm>
#include <cmath>

namespace degenpde {

void DomainSpec::validate() const {
    if (!(T > 0.0)) throw Error("domain: terminal time must be positive");
    if (box.empty()) throw Error("domain: spatial dimension must be at least 1");
    for (size_t i = 0; i < box.size(); ++i) {
        if (!(box[i].first < box[i].second))
            throw Error("domain: box degenerate along axis " + std::to_string(i + 1));
    }
    for (const auto& id : truncated_faces) {
        bool known = false;
        for (size_t k = 1; k <= box.size(); ++k) {
            if (id == "x" + std::to_string(k) + "_lo" ||
                id == "x" + std::to_string(k) + "_hi")
                known = true;
        }
        if (!known) throw Error("domain: unknown truncated face '" + id + "'");
    }
}

namespace {

std::string sideId(int axis, int side) {
    return "x" + std::to_string(axis + 1) + (side == 0 ? "_lo" : "_hi");
}

} // namespace

std::vector<BoundaryFace> parabolic_boundary(const DomainSpec& dom) {
    dom.validate();
    const int d = dom.dim();
    std::vector<BoundaryFace> faces;

    BoundaryFace top;
    top.id = "top";
    top.kind = FaceKind::Top;
    top.fixed = dom.T;
    top.n0 = -1.0;
    top.nvec.assign(static_cast<size_t>(d), 0.0);
    faces.push_back(top);

    for (int axis = 0; axis < d; ++axis) {
        for (int side = 0; side < 2; ++side) {
            BoundaryFace f;
            f.id = sideId(axis, side);
            f.kind = FaceKind::Side;
            f.axis = axis;
            f.side = side;
            f.fixed = side == 0 ? dom.box[static_cast<size_t>(axis)].first
                                : dom.box[static_cast<size_t>(axis)].second;
            f.n0 = 0.0;
            f.nvec.assign(static_cast<size_t>(d), 0.0);
            f.nvec[static_cast<size_t>(axis)] = side == 0 ? 1.0 : -1.0;
            f.truncation = dom.truncated_faces.count(f.id) > 0;
            faces.push_back(f);

            BoundaryFace corner = f;
            corner.id = "corner_" + f.id;
            corner.kind = FaceKind::Corner;
            corner.nvec.clear();  // no normal at corners
            faces.push_back(corner);
        }
    }
    return faces;
}

BoundaryPartition classify_degenerate_boundary(const ParabolicOperator& op,
                                               const DomainSpec& dom,
                                               double eps_a,
                                               std::vector<double> probe_offsets,
                                               int samples_per_axis) {
    if (!(eps_a > 0.0)) throw Error("classify: eps_a must be positive");
    if (op.dim != dom.dim()) throw Error("classify: operator/domain dimension mismatch");
    if (probe_offsets.empty()) probe_offsets = {1e-2, 1e-3, 1e-4, 1e-5};
    if (!std::is_sorted(probe_offsets.rbegin(), probe_offsets.rend()))
        throw Error("classify: probe offsets must decrease toward 0");

    BoundaryPartition out;
    out.faces = parabolic_boundary(dom);
    const int d = dom.dim();

    for (auto& face : out.faces) {
        if (face.kind == FaceKind::Corner) continue;
        if (face.kind == FaceKind::Top || face.truncation) {
            face.degenerate = false;
            out.nondeg.push_back(face.id);
            continue;
        }

        // Sample interior points of the face crossed with interior times.
        int degVotes = 0, totalVotes = 0;
        for (int s = 0; s < samples_per_axis; ++s) {
            const double frac = (s + 1.0) / (samples_per_axis + 1.0);
            SpaceTimePoint p;
            p.t = dom.T * frac;
            p.x.assign(static_cast<size_t>(d), 0.0);
            for (int ax = 0; ax < d; ++ax) {
                const auto& [lo, hi] = dom.box[static_cast<size_t>(ax)];
                p.x[static_cast<size_t>(ax)] =
                    ax == face.axis ? face.fixed : lo + frac * (hi - lo);
            }
            // Linearly extrapolate ||a|| along inward probes to offset 0.
            const double span = dom.box[static_cast<size_t>(face.axis)].second -
                                dom.box[static_cast<size_t>(face.axis)].first;
            std::vector<double> norms;
            double scale = 0.0;
            for (double off : probe_offsets) {
                SpaceTimePoint probe = p;
                probe.x[static_cast<size_t>(face.axis)] +=
                    face.nvec[static_cast<size_t>(face.axis)] * off * span;
                norms.push_back(op.a(probe).cwiseAbs().maxCoeff());
                scale = std::max(scale, norms.back());
            }
            double limit = norms.back();
            if (norms.size() >= 2) {
                const size_t k = norms.size() - 1;
                const double o0 = probe_offsets[k - 1], o1 = probe_offsets[k];
                limit = norms[k] - o1 * (norms[k - 1] - norms[k]) / (o0 - o1);
            }
            ++totalVotes;
            if (std::abs(limit) <= eps_a + 1e-9 * scale) ++degVotes;
        }
        if (degVotes != 0 && degVotes != totalVotes)
            throw Error("classify: mixed degeneracy verdicts on face '" + face.id +
                        "' (" + std::to_string(degVotes) + "/" + std::to_string(totalVotes) +
                        " sample points vanish)");
        face.degenerate = degVotes == totalVotes;
        (face.degenerate ? out.deg : out.nondeg).push_back(face.id);
    }

    // Corner edges inherit the label of the adjacent side face closure.
    for (auto& face : out.faces) {
        if (face.kind != FaceKind::Corner) continue;
        const auto* side = find_face(out, face.id.substr(7));
        face.degenerate = side != nullptr && side->degenerate;
        face.truncation = side != nullptr && side->truncation;
    }
    return out;
}

std::pair<double, std::vector<double>> inward_normal(const BoundaryFace& face,
                                                     const SpaceTimePoint& p) {
    constexpr double tol = 1e-12;
    if (face.kind == FaceKind::Corner)
        throw Error("inward_normal: undefined at corner '" + face.id + "'");
    if (face.kind == FaceKind::Top) {
        if (std::abs(p.t - face.fixed) > tol)
            throw Error("inward_normal: point not on top face");
        return {face.n0, face.nvec};
    }
    if (std::abs(p.x[static_cast<size_t>(face.axis)] - face.fixed) > tol)
        throw Error("inward_normal: point not on face '" + face.id + "'");
    return {face.n0, face.nvec};
}

const BoundaryFace* find_face(const BoundaryPartition& partition, const std::string& id) {
    for (const auto& f : partition.faces)
        if (f.id == id) return &f;
    return nullptr;
}

} // namespace degenpde
