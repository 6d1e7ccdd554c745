#pragma once

#include "degenpde/fichera.hpp"
#include "degenpde/obstacle.hpp"

#include <cstdint>

namespace degenpde {

/// Coefficient regimes for the zeroth-order term c; each estimate below
/// is only valid under the regime its statement assumes.
enum class Regime {
    PositiveC,      ///< c >= c0 > 0
    NonnegativeC,   ///< c >= 0
    BoundedBelowC   ///< c >= -K0, finite horizon T
};

std::string to_string(Regime regime);

/// One randomly drawn, fully assembled problem: operator, domain,
/// boundary partition, grid, and data.  Reproducible from the seed.
struct ProblemInstance {
    std::string name;
    std::uint64_t seed = 0;
    Regime regime = Regime::NonnegativeC;
    double c0 = 0.0;   ///< sampled lower bound of c (PositiveC)
    double K0 = 0.0;   ///< sampled bound with c >= -K0 (BoundedBelowC)
    ParabolicOperator op;
    DomainSpec dom;
    BoundaryPartition partition;
    Grid grid;
    ProblemData data;  ///< f, g; ghost unset
    ScalarField psi;   ///< obstacle, set only for obstacle instances
};

struct Witness {
    int level = -1;
    int node = -1;
    SpaceTimePoint point;
    double value = 0.0;
    std::string note;
};

/// Outcome of one property check.  pass iff violation <= tolerance;
/// inconclusive marks checks whose hypotheses could not be verified on
/// the given solution (distinct from a failure).
struct Verdict {
    std::string property_ref;  ///< stable id of the property checked
    std::string instance;
    bool pass = false;
    bool inconclusive = false;
    double violation = 0.0;
    double tolerance = 0.0;
    Witness witness;
};

struct VerificationReport {
    std::string summary;
    bool monotone = true;      ///< all stepping matrices passed the M-matrix check
    double runtime_seconds = 0.0;
    std::vector<Verdict> verdicts;

    int passed() const;
    int failed() const;
    bool all_pass() const { return failed() == 0; }
};

/// Draws an instance for the regime: dim 2 gives a randomized
/// two-factor stochastic-volatility operator (degenerate variance
/// floor), dim 1 a synthetic separable operator a = alpha (x - lo)
/// degenerate at the left endpoint.  Inflow b_perp >= 0 on the
/// degenerate boundary holds by construction; regime tags are verified
/// by sampling c over the grid.
ProblemInstance random_instance(std::uint64_t seed, Regime regime, int dim,
                                const std::vector<int>& nodes, int time_steps);

/// Adds an obstacle psi <= g to an instance (compatible by construction).
void attach_random_obstacle(ProblemInstance& inst);

/// Nodewise a priori bound, items 1-6:
///   1: c >= 0, f <= 0        =>  u <= 0 v sup g
///   2: c >= c0 > 0           =>  u <= 0 v (1/c0) sup f v sup g
///   3: c >= 0, f >= 0        =>  u >= 0 ^ inf g
///   4: c >= c0 > 0           =>  u >= 0 ^ (1/c0) inf f ^ inf g
///   5: c >= 0, f = 0         =>  |u| <= sup |g|
///   6: c >= c0 > 0           =>  |u| <= (1/c0) sup |f| v sup |g|
/// sup/inf of f range over interior and degenerate-boundary nodes, of g
/// over data nodes.  `data` must be the data the trajectory was solved
/// with.  Throws on a regime/item mismatch.
Verdict check_weak_max_bound(const Trajectory& u, const ProblemInstance& inst,
                             const ProblemData& data, int item, double slack);

/// Items 2/4/6 with the factor 1/c0 replaced by the weight e^{(K0+1)(T-t)},
/// which multiplies both the f-term and the data-term of the bound (the
/// data term alone cannot bound a solution that grows backward in time
/// under negative c); requires the bounded-below regime.
Verdict check_time_weighted_bound(const Trajectory& u, const ProblemInstance& inst,
                                  const ProblemData& data, int item, double slack);

/// Nodewise u <= v.
Verdict check_comparison(const Trajectory& u, const Trajectory& v,
                         const ProblemInstance& inst, double tol);

/// Solves the instance and an ordered perturbation (f + df, g + dg with
/// df, dg >= 0 drawn from perturb_seed) and checks nodewise ordering.
Verdict check_comparison_pair(const ProblemInstance& inst, std::uint64_t perturb_seed,
                              const SolverConfig& cfg, double tol);

/// Solves the instance twice and checks bitwise-stable agreement of the
/// two runs within tol (uniqueness clause of the comparison principle).
Verdict check_uniqueness(const ProblemInstance& inst, const SolverConfig& cfg,
                         double tol);

/// Constancy on the reachable set: |u - u(P0)| over S(P0) <= tol.
Verdict check_strong_max_constancy(const Trajectory& u, const ProblemInstance& inst,
                                   int level0, int node0, double tol);

/// Contrapositive form: when c >= 0 and f <= 0 and the global max is
/// positive, every argmax node must carry Dirichlet data (side node or
/// terminal slice).  Inconclusive when the max is not positive.
Verdict check_argmax_on_data_boundary(const Trajectory& u, const ProblemInstance& inst,
                                      double tol);

/// Boundary-point sign: at a degenerate-boundary node holding a strict
/// local max with u >= 0 and c >= 0 (or u = 0 there), the one-sided
/// inward difference quotient is <= -delta.  Inconclusive when the
/// strict-max hypothesis fails at the node.
Verdict check_hopf_sign(const Trajectory& u, const ProblemInstance& inst,
                        int level, int node, double delta);

/// 1-d instance constructed to attain its positive max on the
/// degenerate boundary: a = alpha x, constant inflow drift, c >= 0,
/// decreasing data g = 1 - x.
ProblemInstance make_hopf_instance(std::uint64_t seed, int nodes, int time_steps);

/// All bound checks applicable to the instance's regime, including the
/// required sign-constrained variant solves.
std::vector<Verdict> run_bound_checks(const ProblemInstance& inst,
                                      const SolverConfig& cfg, double slack);

/// Obstacle-problem estimates: admissibility u >= psi, complementarity
/// residual, items 1-4 bounds, comparison (item 5) and stability
/// (item 6) on a perturbed pair, and the inactive-obstacle consistency
/// solve.
std::vector<Verdict> check_obstacle_estimates(const ProblemInstance& inst,
                                              const SolverConfig& cfg,
                                              const PsorConfig& psor, double slack);

/// Randomized suite over `count` instances (OpenMP-parallel, collected
/// deterministically by index).
VerificationReport run_randomized_suite(int count, std::uint64_t base_seed,
                                        Regime regime, int dim,
                                        const std::vector<int>& nodes, int time_steps,
                                        const SolverConfig& cfg, double slack,
                                        int jobs = 0);

} // namespace degenpde
