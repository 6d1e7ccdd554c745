#pragma once

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace degenpde {

/// Error raised when operator or problem inputs violate a contract.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A point P = (t, x) in the space-time cylinder.
struct SpaceTimePoint {
    double t = 0.0;
    std::vector<double> x;

    int dim() const { return static_cast<int>(x.size()); }
};

/// Coefficients (a, b, c) of  Lu = -u_t - tr(a D^2 u) - <b, Du> + c u
/// evaluated at one point.  a is symmetric positive semi-definite.
struct CoefficientTriple {
    Eigen::MatrixXd a;
    Eigen::VectorXd b;
    double c = 0.0;
};

using MatrixField = std::function<Eigen::MatrixXd(const SpaceTimePoint&)>;
using VectorField = std::function<Eigen::VectorXd(const SpaceTimePoint&)>;
using ScalarField = std::function<double(const SpaceTimePoint&)>;

/// Spatial partial derivatives of a:  result[k](i,j) = d a^{ij} / d x_k.
using MatrixDerivField =
    std::function<std::vector<Eigen::MatrixXd>(const SpaceTimePoint&)>;

/// A linear second-order parabolic operator in non-divergence form with
/// callable coefficient fields.  Immutable after construction; all
/// evaluations are pure and safe to run concurrently.
struct ParabolicOperator {
    int dim = 0;
    MatrixField a;
    VectorField b;
    ScalarField c;
    /// Analytic spatial derivatives of a, when available.  When absent,
    /// central differences with step deriv_step are used.
    MatrixDerivField da;
    double deriv_step = 1e-5;
    /// Coefficients independent of t; lets solvers reuse factorizations.
    bool time_independent = false;
};

/// Parameters of the two-factor stochastic-volatility model operator.
struct HestonParams {
    double sigma = 0.2;   ///< vol-of-vol, != 0
    double rho = -0.5;    ///< correlation, in (-1, 1)
    double kappa = 1.5;   ///< mean-reversion speed, > 0
    double theta = 0.04;  ///< long-run variance, > 0
    double r = 0.05;      ///< short rate
    double q = 0.0;       ///< dividend yield

    void validate() const;
};

/// Structured verdict for coefficient checks.
struct GrowthVerdict {
    bool pass = false;
    double worst_ratio = 0.0;          ///< max of (tr a + <b,x>) / (1+|x|^2)
    SpaceTimePoint worst_point;
};

CoefficientTriple eval_coefficients(const ParabolicOperator& op, const SpaceTimePoint& p);

/// Smallest eigenvalue of a(p).  Closed form for d <= 2.
double least_eigenvalue(const ParabolicOperator& op, const SpaceTimePoint& p);

/// Checks  tr a(t,x) + <b(t,x), x> <= K (1 + |x|^2)  over the samples.
GrowthVerdict check_quadratic_growth(const ParabolicOperator& op,
                                     const std::vector<SpaceTimePoint>& samples,
                                     double K);

/// Derivatives of a at p: analytic when provided, otherwise central
/// finite differences in each spatial coordinate with step op.deriv_step.
std::vector<Eigen::MatrixXd> a_derivatives(const ParabolicOperator& op,
                                           const SpaceTimePoint& p);

/// Conjugated application  Lhat v := phi * applier(phi^{-1} v), the
/// grid-level form of the commutator identity (L + N)v with
/// N v = -[L, phi](phi^{-1} v).  phi must be positive at every node.
std::vector<double> conjugate_apply(
    const std::vector<double>& phi, const std::vector<double>& v,
    const std::function<std::vector<double>(const std::vector<double>&)>& applier);

/// The two-factor model operator with
///   a = (x2/2) [[1, rho*sigma], [rho*sigma, sigma^2]],
///   b = (r - q - x2/2, kappa (theta - x2)),  c = r,
/// and analytic derivatives of a populated.
ParabolicOperator make_heston(const HestonParams& params);

/// a = I, b = 0, c = 0 in the given dimension.
ParabolicOperator make_identity_laplacian(int dim);

} // namespace degenpde
