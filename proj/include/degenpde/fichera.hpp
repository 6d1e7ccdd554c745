#pragma once

#include "degenpde/boundary.hpp"

#include <vector>

namespace degenpde {

/// Classes of the characteristic-boundary partition, viewing t as an
/// extra coordinate of a degenerate-elliptic operator: on the
/// characteristic set the sign of the boundary drift functional fb picks
/// Sigma1 (fb > 0), Sigma2 (fb < 0) or Sigma0 (fb = 0); off it, Sigma3.
enum class SigmaClass { Sigma0, Sigma1, Sigma2, Sigma3 };

std::string to_string(SigmaClass c);

struct FicheraSample {
    SpaceTimePoint point;
    double fb = 0.0;
    SigmaClass sigma_class = SigmaClass::Sigma3;
};

/// Per-face aggregated classification over the full boundary of the
/// cylinder, including the initial slice {0} x O and the top {T} x O.
struct SigmaPartition {
    struct FaceResult {
        std::string face_id;      ///< "t_lo", "t_hi", "x<k>_lo", "x<k>_hi"
        SigmaClass sigma_class;
        std::vector<FicheraSample> samples;
    };
    std::vector<FaceResult> faces;
};

/// Comparison of the classical boundary-data prescription (data on
/// Sigma2 u Sigma3) against the partial-Dirichlet formulation (data on
/// the non-degenerate parabolic boundary only).
struct BetaReport {
    double beta = 0.0;      ///< 2*kappa*theta / sigma^2
    double fb_floor = 0.0;  ///< sigma^2 (beta - 1) / 2 on the variance floor
    std::vector<std::string> dirichlet_locus_fichera;
    std::vector<std::string> dirichlet_locus_partial_data;
    bool loci_agree = false;
};

/// Boundary drift functional
///   fb(p) = sum_k (b^k - sum_j d a^{kj}/d x_j) n_k + n0,
/// with (n0, n) the inward space-time unit normal.
double fichera_function(const ParabolicOperator& op, const DomainSpec& dom,
                        const SpaceTimePoint& p, double n0,
                        const std::vector<double>& nvec);

/// Classifies every boundary face by sampling; a face whose samples
/// disagree raises an error naming the face.
SigmaPartition sigma_partition(const ParabolicOperator& op, const DomainSpec& dom,
                               double eps_char = 1e-10, double eps_fb = 1e-9,
                               int samples_per_axis = 7);

BetaReport heston_beta(const HestonParams& params, const DomainSpec& dom);

/// Faces where the classical first boundary value problem prescribes
/// Dirichlet data: the Sigma2 and Sigma3 faces.
std::vector<std::string> fichera_dirichlet_locus(const SigmaPartition& partition);

} // namespace degenpde
