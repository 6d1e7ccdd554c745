#include "degenpde/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace degenpde {

std::string to_string(Regime regime) {
    switch (regime) {
        case Regime::PositiveC: return "c>=c0>0";
        case Regime::NonnegativeC: return "c>=0";
        case Regime::BoundedBelowC: return "c>=-K0";
    }
    return "?";
}

int VerificationReport::passed() const {
    int n = 0;
    for (const auto& v : verdicts)
        if (v.pass) ++n;
    return n;
}

int VerificationReport::failed() const {
    return static_cast<int>(verdicts.size()) - passed();
}

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Minimum of c over every grid node and time level.
double sampledMinC(const ProblemInstance& inst) {
    double cmin = std::numeric_limits<double>::infinity();
    for (int level = 0; level <= inst.grid.nt; ++level)
        for (int flat = 0; flat < inst.grid.num_nodes(); ++flat)
            if (inst.grid.active[static_cast<size_t>(flat)])
                cmin = std::min(cmin, inst.op.c(inst.grid.point(level, flat)));
    return cmin;
}

/// Random low-order polynomial in (t, x); coefficients in [-amp, amp].
ScalarField randomPolynomial(std::mt19937_64& rng, int dim, double amp) {
    const double a0 = uniform(rng, -amp, amp);
    const double at = uniform(rng, -amp, amp);
    std::vector<double> lin(static_cast<size_t>(dim));
    for (auto& v : lin) v = uniform(rng, -amp, amp);
    const double quad = uniform(rng, -amp, amp);
    return [a0, at, lin, quad](const SpaceTimePoint& p) {
        double v = a0 + at * p.t;
        for (size_t i = 0; i < lin.size(); ++i) v += lin[i] * p.x[i];
        v += quad * p.x[0] * p.x[0];
        return v;
    };
}

/// Random polynomial that is >= 0 on t >= 0, x >= lo componentwise.
ScalarField randomNonnegative(std::mt19937_64& rng, const DomainSpec& dom, double amp) {
    const int dim = dom.dim();
    const double a0 = uniform(rng, 0.0, amp);
    const double at = uniform(rng, 0.0, amp);
    std::vector<double> lin(static_cast<size_t>(dim)), lo(static_cast<size_t>(dim));
    for (int i = 0; i < dim; ++i) {
        lin[static_cast<size_t>(i)] = uniform(rng, 0.0, amp);
        lo[static_cast<size_t>(i)] = dom.box[static_cast<size_t>(i)].first;
    }
    return [a0, at, lin, lo](const SpaceTimePoint& p) {
        double v = a0 + at * p.t;
        for (size_t i = 0; i < lin.size(); ++i) v += lin[i] * (p.x[i] - lo[i]);
        return v;
    };
}

ParabolicOperator makeSeparable1d(double alpha, double lo, double b0, double b1,
                                  double cconst) {
    ParabolicOperator op;
    op.dim = 1;
    op.a = [alpha, lo](const SpaceTimePoint& p) {
        Eigen::MatrixXd a(1, 1);
        a(0, 0) = alpha * (p.x[0] - lo);
        return a;
    };
    op.b = [b0, b1, lo](const SpaceTimePoint& p) {
        Eigen::VectorXd b(1);
        b(0) = b0 + b1 * (p.x[0] - lo);
        return b;
    };
    op.c = [cconst](const SpaceTimePoint&) { return cconst; };
    op.da = [alpha](const SpaceTimePoint&) {
        std::vector<Eigen::MatrixXd> d(1, Eigen::MatrixXd::Zero(1, 1));
        d[0](0, 0) = alpha;
        return d;
    };
    op.time_independent = true;
    return op;
}

struct FieldExtrema {
    double sup_f = -std::numeric_limits<double>::infinity();
    double inf_f = std::numeric_limits<double>::infinity();
    double sup_g = -std::numeric_limits<double>::infinity();
    double inf_g = std::numeric_limits<double>::infinity();
};

/// sup/inf of f over evolving nodes (interior + degenerate boundary,
/// levels below the terminal one) and of g over data nodes (Dirichlet
/// side nodes at every level plus the whole terminal slice).
FieldExtrema scanExtrema(const ProblemInstance& inst, const ProblemData& data) {
    FieldExtrema e;
    const Grid& grid = inst.grid;
    for (int level = 0; level <= grid.nt; ++level) {
        for (int flat = 0; flat < grid.num_nodes(); ++flat) {
            if (!grid.active[static_cast<size_t>(flat)]) continue;
            const auto cls = grid.node_class[static_cast<size_t>(flat)];
            const SpaceTimePoint p = grid.point(level, flat);
            const bool dataNode = level == grid.nt || cls == NodeClass::Dirichlet;
            if (dataNode) {
                const double g = data.g(p);
                e.sup_g = std::max(e.sup_g, g);
                e.inf_g = std::min(e.inf_g, g);
            }
            if (level < grid.nt && cls != NodeClass::Dirichlet) {
                const double f = data.f(p);
                e.sup_f = std::max(e.sup_f, f);
                e.inf_f = std::min(e.inf_f, f);
            }
        }
    }
    return e;
}

/// Worst nodewise excess of `value(level, flat) - bound(level, flat)`.
template <typename Fn>
Witness worstExcess(const Grid& grid, const Trajectory& u, Fn&& excess) {
    Witness w;
    w.value = -std::numeric_limits<double>::infinity();
    for (int level = 0; level <= grid.nt; ++level) {
        for (int flat = 0; flat < grid.num_nodes(); ++flat) {
            if (!grid.active[static_cast<size_t>(flat)]) continue;
            const double v = excess(level, flat);
            if (v > w.value) {
                w.value = v;
                w.level = level;
                w.node = flat;
                w.point = grid.point(level, flat);
            }
        }
    }
    return w;
}

Verdict makeVerdict(std::string ref, const ProblemInstance& inst, Witness witness,
                    double tolerance) {
    Verdict v;
    v.property_ref = std::move(ref);
    v.instance = inst.name;
    v.witness = std::move(witness);
    v.violation = v.witness.value;
    v.tolerance = tolerance;
    v.pass = v.violation <= v.tolerance;
    return v;
}

ScalarField clampNonpositive(const ScalarField& f) {
    return [f](const SpaceTimePoint& p) { return std::min(f(p), 0.0); };
}

ScalarField clampNonnegative(const ScalarField& f) {
    return [f](const SpaceTimePoint& p) { return std::max(f(p), 0.0); };
}

ScalarField zeroField() {
    return [](const SpaceTimePoint&) { return 0.0; };
}

ScalarField sumFields(const ScalarField& a, const ScalarField& b) {
    return [a, b](const SpaceTimePoint& p) { return a(p) + b(p); };
}

ScalarField scaleField(const ScalarField& a, double s) {
    return [a, s](const SpaceTimePoint& p) { return s * a(p); };
}

} // namespace

ProblemInstance random_instance(std::uint64_t seed, Regime regime, int dim,
                                const std::vector<int>& nodes, int time_steps) {
    if (dim != 1 && dim != 2)
        throw Error("random_instance: dim must be 1 or 2");
    std::mt19937_64 rng(seed);

    ProblemInstance inst;
    inst.seed = seed;
    inst.regime = regime;

    if (dim == 2) {
        HestonParams params;
        params.sigma = uniform(rng, 0.2, 0.6);
        params.kappa = uniform(rng, 0.5, 2.0);
        params.theta = uniform(rng, 0.05, 0.3);
        params.q = uniform(rng, 0.0, 0.05);
        switch (regime) {
            case Regime::PositiveC:
                params.r = uniform(rng, 0.05, 0.5);
                inst.c0 = 0.05;
                break;
            case Regime::NonnegativeC:
                params.r = uniform(rng, 0.0, 0.3);
                break;
            case Regime::BoundedBelowC:
                params.r = uniform(rng, -0.2, 0.1);
                break;
        }
        inst.dom.T = uniform(rng, 0.5, 1.0);
        const double x1lo = uniform(rng, -0.5, 0.0);
        const double vmax = uniform(rng, 0.4, 0.8);
        inst.dom.box = {{x1lo, x1lo + 1.0}, {0.0, vmax}};
        // keep the cross-derivative stencil monotone on a square-ish mesh
        const double rhoCap =
            0.9 * std::min({1.0, params.sigma / vmax, vmax / params.sigma});
        params.rho = uniform(rng, -rhoCap, rhoCap);
        inst.op = make_heston(params);
        std::ostringstream name;
        name << "heston-" << to_string(regime) << "-seed" << seed;
        inst.name = name.str();
    } else {
        const double alpha = uniform(rng, 0.3, 2.0);
        const double lo = uniform(rng, -0.5, 0.5);
        const double b0 = uniform(rng, 0.1, 1.0);
        const double b1 = uniform(rng, -0.5, 0.5);
        double cconst = 0.0;
        switch (regime) {
            case Regime::PositiveC:
                cconst = uniform(rng, 0.05, 0.6);
                inst.c0 = 0.05;
                break;
            case Regime::NonnegativeC:
                cconst = uniform(rng, 0.0, 0.4);
                break;
            case Regime::BoundedBelowC:
                cconst = uniform(rng, -0.25, 0.1);
                break;
        }
        inst.dom.T = uniform(rng, 0.5, 1.0);
        inst.dom.box = {{lo, lo + 1.0}};
        inst.op = makeSeparable1d(alpha, lo, b0, b1, cconst);
        std::ostringstream name;
        name << "separable1d-" << to_string(regime) << "-seed" << seed;
        inst.name = name.str();
    }

    inst.partition = classify_degenerate_boundary(inst.op, inst.dom);
    inst.grid = build_grid(inst.dom, inst.partition, nodes, time_steps);

    inst.data.f = randomPolynomial(rng, dim, 0.5);
    inst.data.g = randomPolynomial(rng, dim, 1.0);

    // Verify the regime tags against the sampled coefficient range.
    const double cmin = sampledMinC(inst);
    switch (regime) {
        case Regime::PositiveC:
            if (cmin < inst.c0)
                throw Error("random_instance: sampled min c below c0");
            break;
        case Regime::NonnegativeC:
            if (cmin < 0.0) throw Error("random_instance: sampled min c below 0");
            break;
        case Regime::BoundedBelowC:
            inst.K0 = std::max(1e-3, -cmin);
            break;
    }
    return inst;
}

void attach_random_obstacle(ProblemInstance& inst) {
    std::mt19937_64 rng(inst.seed ^ 0x9e3779b97f4a7c15ULL);
    const double margin = uniform(rng, 0.05, 0.3);
    const ScalarField g = inst.data.g;
    inst.psi = [g, margin](const SpaceTimePoint& p) { return g(p) - margin; };
}

Verdict check_weak_max_bound(const Trajectory& u, const ProblemInstance& inst,
                             const ProblemData& data, int item, double slack) {
    if (item < 1 || item > 6) throw Error("check_weak_max_bound: item must be 1..6");
    const bool needsC0 = item == 2 || item == 4 || item == 6;
    if (needsC0 && inst.regime != Regime::PositiveC)
        throw Error("check_weak_max_bound: item needs the c >= c0 > 0 regime");
    if (!needsC0 && inst.regime == Regime::BoundedBelowC)
        throw Error("check_weak_max_bound: item needs c >= 0");

    const FieldExtrema e = scanExtrema(inst, data);
    if (item == 1 && e.sup_f > 1e-12)
        throw Error("check_weak_max_bound: item 1 needs f <= 0");
    if (item == 3 && e.inf_f < -1e-12)
        throw Error("check_weak_max_bound: item 3 needs f >= 0");
    if (item == 5 && std::max(std::abs(e.sup_f), std::abs(e.inf_f)) > 1e-12)
        throw Error("check_weak_max_bound: item 5 needs f = 0");

    const Grid& grid = inst.grid;
    Witness w;
    std::ostringstream ref;
    switch (item) {
        case 1: {
            const double bound = std::max(0.0, e.sup_g);
            w = worstExcess(grid, u, [&](int level, int flat) {
                return u[static_cast<size_t>(level)][static_cast<size_t>(flat)] - bound;
            });
            ref << "bound/subsolution-sign-constrained";
            break;
        }
        case 2: {
            const double bound = std::max({0.0, e.sup_f / inst.c0, e.sup_g});
            w = worstExcess(grid, u, [&](int level, int flat) {
                return u[static_cast<size_t>(level)][static_cast<size_t>(flat)] - bound;
            });
            ref << "bound/subsolution-generic";
            break;
        }
        case 3: {
            const double bound = std::min(0.0, e.inf_g);
            w = worstExcess(grid, u, [&](int level, int flat) {
                return bound - u[static_cast<size_t>(level)][static_cast<size_t>(flat)];
            });
            ref << "bound/supersolution-sign-constrained";
            break;
        }
        case 4: {
            const double bound = std::min({0.0, e.inf_f / inst.c0, e.inf_g});
            w = worstExcess(grid, u, [&](int level, int flat) {
                return bound - u[static_cast<size_t>(level)][static_cast<size_t>(flat)];
            });
            ref << "bound/supersolution-generic";
            break;
        }
        case 5: {
            const double bound = std::max(std::abs(e.sup_g), std::abs(e.inf_g));
            w = worstExcess(grid, u, [&](int level, int flat) {
                return std::abs(
                           u[static_cast<size_t>(level)][static_cast<size_t>(flat)]) -
                       bound;
            });
            ref << "bound/solution-data-norm";
            break;
        }
        case 6: {
            const double supAbsF = std::max(std::abs(e.sup_f), std::abs(e.inf_f));
            const double bound = std::max(supAbsF / inst.c0,
                                          std::max(std::abs(e.sup_g), std::abs(e.inf_g)));
            w = worstExcess(grid, u, [&](int level, int flat) {
                return std::abs(
                           u[static_cast<size_t>(level)][static_cast<size_t>(flat)]) -
                       bound;
            });
            ref << "bound/solution-generic";
            break;
        }
    }
    return makeVerdict(ref.str(), inst, std::move(w), slack);
}

Verdict check_time_weighted_bound(const Trajectory& u, const ProblemInstance& inst,
                                  const ProblemData& data, int item, double slack) {
    if (item != 2 && item != 4 && item != 6)
        throw Error("check_time_weighted_bound: item must be 2, 4 or 6");
    if (inst.regime != Regime::BoundedBelowC)
        throw Error("check_time_weighted_bound: needs the c >= -K0 regime");

    const FieldExtrema e = scanExtrema(inst, data);
    const Grid& grid = inst.grid;
    const double lambda = inst.K0 + 1.0;
    const double T = inst.dom.T;
    auto weight = [lambda, T](double t) { return std::exp(lambda * (T - t)); };

    Witness w;
    std::string ref;
    if (item == 2) {
        w = worstExcess(grid, u, [&](int level, int flat) {
            const double bound =
                std::max({0.0, weight(grid.time(level)) * e.sup_f,
                          weight(grid.time(level)) * e.sup_g});
            return u[static_cast<size_t>(level)][static_cast<size_t>(flat)] - bound;
        });
        ref = "bound/subsolution-time-weighted";
    } else if (item == 4) {
        w = worstExcess(grid, u, [&](int level, int flat) {
            const double bound =
                std::min({0.0, weight(grid.time(level)) * e.inf_f,
                          weight(grid.time(level)) * e.inf_g});
            return bound - u[static_cast<size_t>(level)][static_cast<size_t>(flat)];
        });
        ref = "bound/supersolution-time-weighted";
    } else {
        const double supAbsF = std::max(std::abs(e.sup_f), std::abs(e.inf_f));
        const double supAbsG = std::max(std::abs(e.sup_g), std::abs(e.inf_g));
        w = worstExcess(grid, u, [&](int level, int flat) {
            const double bound =
                weight(grid.time(level)) * std::max(supAbsF, supAbsG);
            return std::abs(u[static_cast<size_t>(level)][static_cast<size_t>(flat)]) -
                   bound;
        });
        ref = "bound/solution-time-weighted";
    }
    return makeVerdict(ref, inst, std::move(w), slack);
}

Verdict check_comparison(const Trajectory& u, const Trajectory& v,
                         const ProblemInstance& inst, double tol) {
    Witness w = worstExcess(inst.grid, u, [&](int level, int flat) {
        return u[static_cast<size_t>(level)][static_cast<size_t>(flat)] -
               v[static_cast<size_t>(level)][static_cast<size_t>(flat)];
    });
    return makeVerdict("comparison/ordered-data", inst, std::move(w), tol);
}

Verdict check_comparison_pair(const ProblemInstance& inst, std::uint64_t perturb_seed,
                              const SolverConfig& cfg, double tol) {
    std::mt19937_64 rng(perturb_seed);
    const ScalarField df = randomNonnegative(rng, inst.dom, 0.2);
    const ScalarField dg = randomNonnegative(rng, inst.dom, 0.2);

    const SolveResult lower = solve_terminal_value_problem(inst.op, inst.grid, inst.data, cfg);
    ProblemData upperData;
    upperData.f = sumFields(inst.data.f, df);
    upperData.g = sumFields(inst.data.g, dg);
    const SolveResult upper = solve_terminal_value_problem(inst.op, inst.grid, upperData, cfg);
    return check_comparison(lower.u, upper.u, inst, tol);
}

Verdict check_uniqueness(const ProblemInstance& inst, const SolverConfig& cfg,
                         double tol) {
    const SolveResult first = solve_terminal_value_problem(inst.op, inst.grid, inst.data, cfg);
    const SolveResult second = solve_terminal_value_problem(inst.op, inst.grid, inst.data, cfg);
    Witness w = worstExcess(inst.grid, first.u, [&](int level, int flat) {
        return std::abs(first.u[static_cast<size_t>(level)][static_cast<size_t>(flat)] -
                        second.u[static_cast<size_t>(level)][static_cast<size_t>(flat)]);
    });
    return makeVerdict("comparison/identical-data", inst, std::move(w), tol);
}

Verdict check_strong_max_constancy(const Trajectory& u, const ProblemInstance& inst,
                                   int level0, int node0, double tol) {
    const ReachableSet set = reachable_set(inst.grid, level0, node0);
    const double u0 = u[static_cast<size_t>(level0)][static_cast<size_t>(node0)];
    Witness w;
    w.value = 0.0;
    for (int level = 1; level <= level0; ++level) {
        for (int flat = 0; flat < inst.grid.num_nodes(); ++flat) {
            if (!set.in_s[static_cast<size_t>(level)][static_cast<size_t>(flat)]) continue;
            const double dev =
                std::abs(u[static_cast<size_t>(level)][static_cast<size_t>(flat)] - u0);
            if (dev > w.value) {
                w.value = dev;
                w.level = level;
                w.node = flat;
                w.point = inst.grid.point(level, flat);
            }
        }
    }
    w.note = "max deviation from the base value over the reachable set";
    return makeVerdict("strongmax/constancy-on-reachable-set", inst, std::move(w), tol);
}

Verdict check_argmax_on_data_boundary(const Trajectory& u, const ProblemInstance& inst,
                                      double tol) {
    const Grid& grid = inst.grid;
    double globalMax = -std::numeric_limits<double>::infinity();
    double dataMax = -std::numeric_limits<double>::infinity();
    Witness w;
    for (int level = 0; level <= grid.nt; ++level) {
        for (int flat = 0; flat < grid.num_nodes(); ++flat) {
            if (!grid.active[static_cast<size_t>(flat)]) continue;
            const double v = u[static_cast<size_t>(level)][static_cast<size_t>(flat)];
            const bool dataNode =
                level == grid.nt ||
                grid.node_class[static_cast<size_t>(flat)] == NodeClass::Dirichlet;
            if (v > globalMax) {
                globalMax = v;
                w.level = level;
                w.node = flat;
                w.point = grid.point(level, flat);
            }
            if (dataNode) dataMax = std::max(dataMax, v);
        }
    }
    Verdict verdict = makeVerdict("strongmax/positive-argmax-on-data-boundary", inst,
                                  std::move(w), tol);
    verdict.violation = globalMax - dataMax;
    verdict.witness.value = verdict.violation;
    verdict.pass = verdict.violation <= verdict.tolerance;
    if (globalMax <= tol) {
        verdict.inconclusive = true;
        verdict.pass = true;
        verdict.witness.note = "global max not positive; hypothesis fails";
    }
    return verdict;
}

Verdict check_hopf_sign(const Trajectory& u, const ProblemInstance& inst,
                        int level, int node, double delta) {
    const Grid& grid = inst.grid;
    if (grid.node_class[static_cast<size_t>(node)] != NodeClass::Degenerate)
        throw Error("check_hopf_sign: node is not on the degenerate boundary");
    if (level < 0 || level >= grid.nt)
        throw Error("check_hopf_sign: level must be below the terminal slice");

    const auto multi = grid.multi_index(node);
    int axis = -1, inward = 0;
    for (size_t ax = 0; ax < multi.size(); ++ax) {
        if (multi[ax] == 0) {
            axis = static_cast<int>(ax);
            inward = 1;
            break;
        }
        if (multi[ax] == grid.n[ax] - 1) {
            axis = static_cast<int>(ax);
            inward = -1;
            break;
        }
    }
    if (axis < 0) throw Error("check_hopf_sign: node is not on a boundary face");

    auto neighbor = [&](int ax, int step) {
        auto m = multi;
        m[static_cast<size_t>(ax)] += step;
        return grid.index(m);
    };
    const double uP = u[static_cast<size_t>(level)][static_cast<size_t>(node)];
    const double uIn =
        u[static_cast<size_t>(level)][static_cast<size_t>(neighbor(axis, inward))];

    Verdict verdict;
    verdict.property_ref = "hopf/inward-quotient-negative";
    verdict.instance = inst.name;
    verdict.tolerance = 0.0;
    verdict.witness.level = level;
    verdict.witness.node = node;
    verdict.witness.point = grid.point(level, node);

    // hypotheses: strict max toward the interior, u >= 0 with c >= 0
    // (or u = 0 at the node)
    const double cmin = sampledMinC(inst);
    const bool signOk =
        (uP >= -1e-12 && cmin >= -1e-12) || std::abs(uP) <= 1e-12;
    if (!(uP > uIn + 1e-14) || !signOk) {
        verdict.inconclusive = true;
        verdict.pass = true;
        verdict.violation = 0.0;
        verdict.witness.note = "no strict boundary max with the required signs";
        return verdict;
    }

    const double quotient = (uIn - uP) / grid.h[static_cast<size_t>(axis)];
    verdict.violation = quotient + delta;  // pass iff quotient <= -delta
    verdict.pass = verdict.violation <= verdict.tolerance;
    verdict.witness.value = quotient;
    verdict.witness.note = "one-sided inward difference quotient";
    return verdict;
}

ProblemInstance make_hopf_instance(std::uint64_t seed, int nodes, int time_steps) {
    std::mt19937_64 rng(seed);
    ProblemInstance inst;
    inst.seed = seed;
    inst.regime = Regime::NonnegativeC;
    const double alpha = uniform(rng, 0.5, 2.0);
    const double b0 = uniform(rng, 0.5, 1.5);
    const double cconst = uniform(rng, 0.0, 0.3);
    inst.dom.T = 1.0;
    inst.dom.box = {{0.0, 1.0}};
    inst.op = makeSeparable1d(alpha, 0.0, b0, 0.0, cconst);
    inst.partition = classify_degenerate_boundary(inst.op, inst.dom);
    inst.grid = build_grid(inst.dom, inst.partition, {nodes}, time_steps);
    inst.data.f = zeroField();
    inst.data.g = [](const SpaceTimePoint& p) { return 1.0 - p.x[0]; };
    std::ostringstream name;
    name << "hopf-1d-seed" << seed;
    inst.name = name.str();
    return inst;
}

std::vector<Verdict> run_bound_checks(const ProblemInstance& inst,
                                      const SolverConfig& cfg, double slack) {
    std::vector<Verdict> verdicts;
    auto solveWith = [&](const ScalarField& f) {
        ProblemData data;
        data.f = f;
        data.g = inst.data.g;
        return solve_terminal_value_problem(inst.op, inst.grid, data, cfg);
    };

    if (inst.regime == Regime::BoundedBelowC) {
        const SolveResult generic = solveWith(inst.data.f);
        ProblemData data = inst.data;
        for (int item : {2, 4, 6})
            verdicts.push_back(
                check_time_weighted_bound(generic.u, inst, data, item, slack));
        return verdicts;
    }

    {
        ProblemData data;
        data.g = inst.data.g;
        data.f = clampNonpositive(inst.data.f);
        const SolveResult sub = solveWith(data.f);
        verdicts.push_back(check_weak_max_bound(sub.u, inst, data, 1, slack));
    }
    {
        ProblemData data;
        data.g = inst.data.g;
        data.f = clampNonnegative(inst.data.f);
        const SolveResult super = solveWith(data.f);
        verdicts.push_back(check_weak_max_bound(super.u, inst, data, 3, slack));
    }
    {
        ProblemData data;
        data.g = inst.data.g;
        data.f = zeroField();
        const SolveResult hom = solveWith(data.f);
        verdicts.push_back(check_weak_max_bound(hom.u, inst, data, 5, slack));
    }
    if (inst.regime == Regime::PositiveC) {
        const SolveResult generic = solveWith(inst.data.f);
        for (int item : {2, 4, 6})
            verdicts.push_back(
                check_weak_max_bound(generic.u, inst, inst.data, item, slack));
    }
    return verdicts;
}

std::vector<Verdict> check_obstacle_estimates(const ProblemInstance& inst,
                                              const SolverConfig& cfg,
                                              const PsorConfig& psor, double slack) {
    if (!inst.psi) throw Error("check_obstacle_estimates: instance has no obstacle");
    std::vector<Verdict> verdicts;
    const Grid& grid = inst.grid;

    auto solveObstacle = [&](const ScalarField& f, const ScalarField& g,
                             const ScalarField& psi) {
        ObstacleData data;
        data.f = f;
        data.g = g;
        data.psi = psi;
        return solve_obstacle_problem(inst.op, grid, data, cfg, psor);
    };

    const ObstacleResult base = solveObstacle(inst.data.f, inst.data.g, inst.psi);

    {
        // admissibility: the projection enforces u >= psi exactly
        Witness w = worstExcess(grid, base.u, [&](int level, int flat) {
            return inst.psi(grid.point(level, flat)) -
                   base.u[static_cast<size_t>(level)][static_cast<size_t>(flat)];
        });
        verdicts.push_back(makeVerdict("obstacle/admissibility", inst, std::move(w), 0.0));
    }
    {
        Witness w;
        w.value = base.worst_residual;
        w.note = "worst converged complementarity residual across steps";
        verdicts.push_back(
            makeVerdict("obstacle/complementarity-residual", inst, std::move(w), slack));
    }

    const FieldExtrema e = scanExtrema(inst, inst.data);
    double supPsiSigned = -std::numeric_limits<double>::infinity();
    for (int level = 0; level <= grid.nt; ++level)
        for (int flat = 0; flat < grid.num_nodes(); ++flat)
            if (grid.active[static_cast<size_t>(flat)])
                supPsiSigned =
                    std::max(supPsiSigned, inst.psi(grid.point(level, flat)));

    {
        // supersolution bound, f >= 0:  u >= 0 ^ inf g
        const ObstacleResult super =
            solveObstacle(clampNonnegative(inst.data.f), inst.data.g, inst.psi);
        const double bound = std::min(0.0, e.inf_g);
        Witness w = worstExcess(grid, super.u, [&](int level, int flat) {
            return bound -
                   super.u[static_cast<size_t>(level)][static_cast<size_t>(flat)];
        });
        verdicts.push_back(
            makeVerdict("obstacle/supersolution-sign-constrained", inst, std::move(w), slack));
    }
    {
        // solution bound, f <= 0:  u <= 0 v sup g v sup psi
        const ObstacleResult sub =
            solveObstacle(clampNonpositive(inst.data.f), inst.data.g, inst.psi);
        const double bound = std::max({0.0, e.sup_g, supPsiSigned});
        Witness w = worstExcess(grid, sub.u, [&](int level, int flat) {
            return sub.u[static_cast<size_t>(level)][static_cast<size_t>(flat)] - bound;
        });
        verdicts.push_back(
            makeVerdict("obstacle/solution-sign-constrained", inst, std::move(w), slack));
    }
    if (inst.regime == Regime::PositiveC) {
        const double bound =
            std::max({0.0, e.sup_f / inst.c0, e.sup_g, supPsiSigned});
        Witness w = worstExcess(grid, base.u, [&](int level, int flat) {
            return base.u[static_cast<size_t>(level)][static_cast<size_t>(flat)] - bound;
        });
        verdicts.push_back(
            makeVerdict("obstacle/solution-generic", inst, std::move(w), slack));
    }

    {
        // comparison: larger data give a larger solution
        std::mt19937_64 rng(inst.seed ^ 0x5bf03635ULL);
        const ScalarField df = randomNonnegative(rng, inst.dom, 0.2);
        const ScalarField dg = randomNonnegative(rng, inst.dom, 0.2);
        const ScalarField dpsi = scaleField(dg, 0.5);  // keeps psi + dpsi <= g + dg
        const ObstacleResult upper =
            solveObstacle(sumFields(inst.data.f, df), sumFields(inst.data.g, dg),
                          sumFields(inst.psi, dpsi));
        Witness w = worstExcess(grid, base.u, [&](int level, int flat) {
            return base.u[static_cast<size_t>(level)][static_cast<size_t>(flat)] -
                   upper.u[static_cast<size_t>(level)][static_cast<size_t>(flat)];
        });
        verdicts.push_back(
            makeVerdict("obstacle/comparison-ordered-data", inst, std::move(w), slack));
    }
    {
        // stability with f fixed:  |u1 - u2| <= max(||dg||, ||dpsi||)
        std::mt19937_64 rng(inst.seed ^ 0x2545f491ULL);
        const double eps = uniform(rng, 0.001, 0.01);
        auto shift = [eps](const ScalarField& field) {
            return [field, eps](const SpaceTimePoint& p) { return field(p) + eps; };
        };
        const ObstacleResult shifted =
            solveObstacle(inst.data.f, shift(inst.data.g), shift(inst.psi));
        Witness w = worstExcess(grid, base.u, [&](int level, int flat) {
            return std::abs(
                       base.u[static_cast<size_t>(level)][static_cast<size_t>(flat)] -
                       shifted.u[static_cast<size_t>(level)][static_cast<size_t>(flat)]) -
                   eps;
        });
        verdicts.push_back(
            makeVerdict("obstacle/stability-data-perturbation", inst, std::move(w), slack));
    }
    {
        // a far-below obstacle never binds: match the unconstrained solve
        const ScalarField low = [psi = inst.psi](const SpaceTimePoint& p) {
            return psi(p) - 100.0;
        };
        const ObstacleResult inactive = solveObstacle(inst.data.f, inst.data.g, low);
        ProblemData plain;
        plain.f = inst.data.f;
        plain.g = inst.data.g;
        const SolveResult unconstrained =
            solve_terminal_value_problem(inst.op, grid, plain, cfg);
        Witness w = worstExcess(grid, inactive.u, [&](int level, int flat) {
            return std::abs(
                inactive.u[static_cast<size_t>(level)][static_cast<size_t>(flat)] -
                unconstrained.u[static_cast<size_t>(level)][static_cast<size_t>(flat)]);
        });
        verdicts.push_back(
            makeVerdict("obstacle/inactive-matches-unconstrained", inst, std::move(w), slack));
    }
    return verdicts;
}

VerificationReport run_randomized_suite(int count, std::uint64_t base_seed,
                                        Regime regime, int dim,
                                        const std::vector<int>& nodes, int time_steps,
                                        const SolverConfig& cfg, double slack,
                                        int jobs) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<std::vector<Verdict>> perInstance(static_cast<size_t>(count));

#ifdef _OPENMP
    const int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#else
    (void)jobs;
#endif
    for (int i = 0; i < count; ++i) {
        const std::uint64_t seed = base_seed + static_cast<std::uint64_t>(i);
        std::vector<Verdict> verdicts;
        try {
            ProblemInstance inst =
                random_instance(seed, regime, dim, nodes, time_steps);
            verdicts = run_bound_checks(inst, cfg, slack);
            verdicts.push_back(
                check_comparison_pair(inst, seed ^ 0xabcdef12ULL, cfg, slack));
            verdicts.push_back(check_uniqueness(inst, cfg, 1e-10));
        } catch (const std::exception& ex) {
            Verdict v;
            v.property_ref = "harness/instance-error";
            std::ostringstream name;
            name << "seed" << seed;
            v.instance = name.str();
            v.pass = false;
            v.violation = std::numeric_limits<double>::infinity();
            v.witness.note = ex.what();
            verdicts.push_back(v);
        }
        perInstance[static_cast<size_t>(i)] = std::move(verdicts);
    }

    VerificationReport report;
    for (auto& verdicts : perInstance)
        for (auto& v : verdicts) report.verdicts.push_back(std::move(v));
    std::ostringstream summary;
    summary << count << " instances, regime " << to_string(regime) << ", dim " << dim
            << ", base seed " << base_seed;
    report.summary = summary.str();
    report.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    for (const auto& v : report.verdicts)
        if (v.property_ref == "harness/instance-error") report.monotone = false;
    return report;
}

} // namespace degenpde
