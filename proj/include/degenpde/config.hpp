#pragma once

#include "degenpde/harness.hpp"

namespace degenpde {

/// Operator description from a config: either a named builtin
/// ("heston" with parameters, "identity-laplacian") or componentwise
/// coefficient expressions over t, x1..xd.
struct OperatorSpec {
    std::string builtin;                          ///< empty for custom
    HestonParams heston;                          ///< when builtin == "heston"
    int dim = 0;
    std::vector<std::vector<std::string>> a_expr; ///< dim x dim
    std::vector<std::string> b_expr;              ///< dim
    std::string c_expr;
};

/// One named run of a suite.
struct RunSpec {
    std::string name;
    std::string mode;      ///< "classify", "solve", "obstacle" or "harness"
    std::uint64_t seed = 0;

    // classify / solve / obstacle
    OperatorSpec op;
    DomainSpec dom;
    std::string f_expr, g_expr, psi_expr, ghost_expr;
    std::vector<int> nodes;
    int time_steps = 0;
    double theta = 1.0;

    // harness
    int count = 0;
    Regime regime = Regime::NonnegativeC;
    int dim = 0;
    double slack = 1e-8;
};

struct SuiteConfig {
    std::vector<RunSpec> runs;
    int jobs = 0;
};

/// Parses and validates a JSON suite configuration; errors carry the
/// offending run name or key.
SuiteConfig load_suite_config(const std::string& path);

ParabolicOperator build_operator(const OperatorSpec& spec);

/// Scalar field evaluating a parsed expression; empty text yields the
/// zero field.
ScalarField field_from_expr(const std::string& text, int dim);

/// Human-readable description of a builtin operator; throws on an
/// unknown name.
std::string describe_builtin(const std::string& name);

} // namespace degenpde
