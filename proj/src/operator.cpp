#include "degenpde/operator.hpp"

#include <cmath>

namespace degenpde {

namespace {

constexpr double kSymTol = 1e-12;
constexpr double kPsdTol = -1e-10;

void checkCoefficientMatrix(const Eigen::MatrixXd& a, const SpaceTimePoint& p) {
    if (!a.allFinite())
        throw Error("non-finite diffusion coefficient at t=" + std::to_string(p.t));
    const double asym = (a - a.transpose()).cwiseAbs().maxCoeff();
    if (asym > kSymTol)
        throw Error("diffusion matrix not symmetric (asymmetry " + std::to_string(asym) + ")");
}

double leastEigenvalueOf(const Eigen::MatrixXd& a) {
    const int d = static_cast<int>(a.rows());
    if (d == 1) return a(0, 0);
    if (d == 2) {
        // trace/determinant closed form for the symmetric 2x2 case
        const double tr = a(0, 0) + a(1, 1);
        const double det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
        const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
        return tr / 2.0 - disc;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

} // namespace

void HestonParams::validate() const {
    if (sigma == 0.0) throw Error("heston: sigma must be nonzero");
    if (!(rho > -1.0 && rho < 1.0)) throw Error("heston: rho must lie in (-1, 1)");
    if (!(kappa > 0.0)) throw Error("heston: kappa must be positive");
    if (!(theta > 0.0)) throw Error("heston: theta must be positive");
    if (!std::isfinite(r) || !std::isfinite(q)) throw Error("heston: r, q must be finite");
}

CoefficientTriple eval_coefficients(const ParabolicOperator& op, const SpaceTimePoint& p) {
    if (p.dim() != op.dim)
        throw Error("point dimension " + std::to_string(p.dim()) +
                    " does not match operator dimension " + std::to_string(op.dim));
    CoefficientTriple out;
    out.a = op.a(p);
    out.b = op.b(p);
    out.c = op.c(p);
    if (out.a.rows() != op.dim || out.a.cols() != op.dim || out.b.size() != op.dim)
        throw Error("coefficient field returned wrong shape");
    checkCoefficientMatrix(out.a, p);
    if (!out.b.allFinite() || !std::isfinite(out.c))
        throw Error("non-finite drift or zero-order coefficient");
    if (leastEigenvalueOf(out.a) < kPsdTol)
        throw Error("diffusion matrix not positive semi-definite");
    return out;
}

double least_eigenvalue(const ParabolicOperator& op, const SpaceTimePoint& p) {
    if (p.dim() != op.dim) throw Error("point dimension mismatch");
    Eigen::MatrixXd a = op.a(p);
    checkCoefficientMatrix(a, p);
    return leastEigenvalueOf(a);
}

GrowthVerdict check_quadratic_growth(const ParabolicOperator& op,
                                     const std::vector<SpaceTimePoint>& samples,
                                     double K) {
    if (samples.empty()) throw Error("quadratic growth check needs at least one sample");
    GrowthVerdict v;
    v.pass = true;
    v.worst_ratio = -std::numeric_limits<double>::infinity();
    for (const auto& p : samples) {
        const auto coef = eval_coefficients(op, p);
        double xsq = 0.0, bx = 0.0;
        for (int i = 0; i < op.dim; ++i) {
            xsq += p.x[static_cast<size_t>(i)] * p.x[static_cast<size_t>(i)];
            bx += coef.b(i) * p.x[static_cast<size_t>(i)];
        }
        const double lhs = coef.a.trace() + bx;
        const double ratio = lhs / (1.0 + xsq);
        if (ratio > v.worst_ratio) {
            v.worst_ratio = ratio;
            v.worst_point = p;
        }
        if (lhs > K * (1.0 + xsq)) v.pass = false;
    }
    return v;
}

std::vector<Eigen::MatrixXd> a_derivatives(const ParabolicOperator& op,
                                           const SpaceTimePoint& p) {
    if (op.da) return op.da(p);
    const double h = op.deriv_step;
    std::vector<Eigen::MatrixXd> out;
    out.reserve(static_cast<size_t>(op.dim));
    for (int k = 0; k < op.dim; ++k) {
        SpaceTimePoint pp = p, pm = p;
        pp.x[static_cast<size_t>(k)] += h;
        pm.x[static_cast<size_t>(k)] -= h;
        out.push_back((op.a(pp) - op.a(pm)) / (2.0 * h));
    }
    return out;
}

std::vector<double> conjugate_apply(
    const std::vector<double>& phi, const std::vector<double>& v,
    const std::function<std::vector<double>(const std::vector<double>&)>& applier) {
    if (phi.size() != v.size()) throw Error("conjugate_apply: shape mismatch");
    std::vector<double> scaled(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        if (!(phi[i] > 0.0))
            throw Error("conjugate_apply: non-positive conjugation weight at node " +
                        std::to_string(i));
        scaled[i] = v[i] / phi[i];
    }
    std::vector<double> out = applier(scaled);
    if (out.size() != v.size()) throw Error("conjugate_apply: applier shape mismatch");
    for (size_t i = 0; i < out.size(); ++i) out[i] *= phi[i];
    return out;
}

ParabolicOperator make_heston(const HestonParams& params) {
    params.validate();
    const double sigma = params.sigma, rho = params.rho, kappa = params.kappa,
                 theta = params.theta, r = params.r, q = params.q;
    ParabolicOperator op;
    op.dim = 2;
    op.time_independent = true;
    op.a = [sigma, rho](const SpaceTimePoint& p) {
        const double x2 = p.x[1];
        Eigen::MatrixXd a(2, 2);
        a << 1.0, rho * sigma,
             rho * sigma, sigma * sigma;
        return Eigen::MatrixXd(0.5 * x2 * a);
    };
    op.b = [r, q, kappa, theta](const SpaceTimePoint& p) {
        const double x2 = p.x[1];
        Eigen::VectorXd b(2);
        b << r - q - 0.5 * x2, kappa * (theta - x2);
        return b;
    };
    op.c = [r](const SpaceTimePoint&) { return r; };
    op.da = [sigma, rho](const SpaceTimePoint&) {
        // a is linear in x2 and independent of x1
        Eigen::MatrixXd d1 = Eigen::MatrixXd::Zero(2, 2);
        Eigen::MatrixXd d2(2, 2);
        d2 << 0.5, 0.5 * rho * sigma,
              0.5 * rho * sigma, 0.5 * sigma * sigma;
        return std::vector<Eigen::MatrixXd>{d1, d2};
    };
    return op;
}

ParabolicOperator make_identity_laplacian(int dim) {
    if (dim < 1) throw Error("dimension must be at least 1");
    ParabolicOperator op;
    op.dim = dim;
    op.time_independent = true;
    op.a = [dim](const SpaceTimePoint&) { return Eigen::MatrixXd(Eigen::MatrixXd::Identity(dim, dim)); };
    op.b = [dim](const SpaceTimePoint&) { return Eigen::VectorXd(Eigen::VectorXd::Zero(dim)); };
    op.c = [](const SpaceTimePoint&) { return 0.0; };
    op.da = [dim](const SpaceTimePoint&) {
        return std::vector<Eigen::MatrixXd>(static_cast<size_t>(dim),
                                            Eigen::MatrixXd::Zero(dim, dim));
    };
    return op;
}

} // namespace degenpde
