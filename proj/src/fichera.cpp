#include "degenpde/fichera.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace degenpde {

std::string to_string(SigmaClass c) {
    switch (c) {
        case SigmaClass::Sigma0: return "Sigma0";
        case SigmaClass::Sigma1: return "Sigma1";
        case SigmaClass::Sigma2: return "Sigma2";
        case SigmaClass::Sigma3: return "Sigma3";
    }
    return "?";
}

double fichera_function(const ParabolicOperator& op, const DomainSpec& dom,
                        const SpaceTimePoint& p, double n0,
                        const std::vector<double>& nvec) {
    (void)dom;
    const double norm2 = n0 * n0 +
        std::inner_product(nvec.begin(), nvec.end(), nvec.begin(), 0.0);
    if (std::abs(norm2 - 1.0) > 1e-9)
        throw Error("fichera_function: normal vector is not unit length");

    const Eigen::VectorXd b = op.b(p);
    const auto da = a_derivatives(op, p);
    double fb = n0;  // the time slot contributes b^0 = 1 with no diffusion
    for (int k = 0; k < op.dim; ++k) {
        double div_k = 0.0;
        for (int j = 0; j < op.dim; ++j) div_k += da[static_cast<size_t>(j)](k, j);
        fb += (b(k) - div_k) * nvec[static_cast<size_t>(k)];
    }
    return fb;
}

namespace {

struct EllipticFace {
    std::string id;
    int axis;       ///< -1 for time faces
    int side;       ///< 0 = lo, 1 = hi
    double fixed;
    double n0;
    std::vector<double> nvec;
};

std::vector<EllipticFace> ellipticFaces(const DomainSpec& dom) {
    const int d = dom.dim();
    std::vector<EllipticFace> faces;
    faces.push_back({"t_lo", -1, 0, 0.0, 1.0, std::vector<double>(static_cast<size_t>(d), 0.0)});
    faces.push_back({"t_hi", -1, 1, dom.T, -1.0, std::vector<double>(static_cast<size_t>(d), 0.0)});
    for (int ax = 0; ax < d; ++ax) {
        for (int side = 0; side < 2; ++side) {
            EllipticFace f;
            f.id = "x" + std::to_string(ax + 1) + (side == 0 ? "_lo" : "_hi");
            f.axis = ax;
            f.side = side;
            f.fixed = side == 0 ? dom.box[static_cast<size_t>(ax)].first
                                : dom.box[static_cast<size_t>(ax)].second;
            f.n0 = 0.0;
            f.nvec.assign(static_cast<size_t>(d), 0.0);
            f.nvec[static_cast<size_t>(ax)] = side == 0 ? 1.0 : -1.0;
            faces.push_back(f);
        }
    }
    return faces;
}

} // namespace

SigmaPartition sigma_partition(const ParabolicOperator& op, const DomainSpec& dom,
                               double eps_char, double eps_fb, int samples_per_axis) {
    if (!(eps_char > 0.0) || !(eps_fb > 0.0))
        throw Error("sigma_partition: tolerances must be positive");
    dom.validate();
    if (op.dim != dom.dim()) throw Error("sigma_partition: dimension mismatch");

    SigmaPartition out;
    for (const auto& face : ellipticFaces(dom)) {
        SigmaPartition::FaceResult result;
        result.face_id = face.id;
        for (int s = 0; s < samples_per_axis; ++s) {
            const double frac = (s + 1.0) / (samples_per_axis + 1.0);
            SpaceTimePoint p;
            p.t = face.axis == -1 ? face.fixed : dom.T * frac;
            p.x.assign(static_cast<size_t>(op.dim), 0.0);
            for (int ax = 0; ax < op.dim; ++ax) {
                const auto& [lo, hi] = dom.box[static_cast<size_t>(ax)];
                p.x[static_cast<size_t>(ax)] =
                    ax == face.axis ? face.fixed : lo + frac * (hi - lo);
            }

            FicheraSample sample;
            sample.point = p;
            // characteristic test a^{ij} n_i n_j, with zero diffusion in time
            double ann = 0.0;
            if (face.axis != -1) {
                const Eigen::MatrixXd a = op.a(p);
                for (int i = 0; i < op.dim; ++i)
                    for (int j = 0; j < op.dim; ++j)
                        ann += a(i, j) * face.nvec[static_cast<size_t>(i)] *
                               face.nvec[static_cast<size_t>(j)];
            }
            if (ann > eps_char) {
                sample.sigma_class = SigmaClass::Sigma3;
                sample.fb = fichera_function(op, dom, p, face.n0, face.nvec);
            } else {
                sample.fb = fichera_function(op, dom, p, face.n0, face.nvec);
                if (sample.fb > eps_fb) sample.sigma_class = SigmaClass::Sigma1;
                else if (sample.fb < -eps_fb) sample.sigma_class = SigmaClass::Sigma2;
                else sample.sigma_class = SigmaClass::Sigma0;
            }
            result.samples.push_back(sample);
        }
        result.sigma_class = result.samples.front().sigma_class;
        for (const auto& s : result.samples)
            if (s.sigma_class != result.sigma_class)
                throw Error("sigma_partition: mixed classification on face '" + face.id + "'");
        out.faces.push_back(std::move(result));
    }
    return out;
}

BetaReport heston_beta(const HestonParams& params, const DomainSpec& dom) {
    params.validate();
    dom.validate();
    if (dom.dim() != 2) throw Error("heston_beta: expects a 2-d domain");

    BetaReport report;
    report.beta = 2.0 * params.kappa * params.theta / (params.sigma * params.sigma);
    report.fb_floor = params.sigma * params.sigma * (report.beta - 1.0) / 2.0;

    const bool hasFloor = dom.box[1].first == 0.0;
    report.dirichlet_locus_partial_data = {"top", "x1_lo", "x1_hi", "x2_hi"};
    if (!hasFloor) report.dirichlet_locus_partial_data.push_back("x2_lo");

    report.dirichlet_locus_fichera = report.dirichlet_locus_partial_data;
    // the classical prescription adds the floor when fb < 0 there; use the
    // same tolerance as the face sampler so the critical case beta = 1
    // (fb = 0 up to rounding) stays off the locus
    if (hasFloor && report.fb_floor < -1e-9)
        report.dirichlet_locus_fichera.push_back("x2_lo");

    std::sort(report.dirichlet_locus_partial_data.begin(), report.dirichlet_locus_partial_data.end());
    std::sort(report.dirichlet_locus_fichera.begin(), report.dirichlet_locus_fichera.end());
    report.loci_agree = report.dirichlet_locus_fichera == report.dirichlet_locus_partial_data;
    return report;
}

std::vector<std::string> fichera_dirichlet_locus(const SigmaPartition& partition) {
    std::vector<std::string> out;
    for (const auto& face : partition.faces)
        if (face.sigma_class == SigmaClass::Sigma2 ||
            face.sigma_class == SigmaClass::Sigma3)
            out.push_back(face.face_id);
    return out;
}

} // namespace degenpde
