#include "degenpde/config.hpp"

#include "degenpde/expr.hpp"

#include <json.hpp>

#include <cctype>
#include <fstream>
#include <sstream>

namespace degenpde {

namespace {

using nlohmann::json;

/// True when the expression references the time variable t as a
/// standalone token (not the t inside "sqrt" etc.).
bool usesTime(const std::string& text) {
    for (size_t i = 0; i < text.size(); ++i) {
        if (text[i] != 't') continue;
        const bool leftOk = i == 0 || !std::isalnum(static_cast<unsigned char>(text[i - 1]));
        const bool rightOk =
            i + 1 == text.size() || !std::isalnum(static_cast<unsigned char>(text[i + 1]));
        if (leftOk && rightOk) return true;
    }
    return false;
}

Regime parseRegime(const std::string& text) {
    if (text == "c>=c0" || text == "positive") return Regime::PositiveC;
    if (text == "c>=0" || text == "nonnegative") return Regime::NonnegativeC;
    if (text == "c>=-K0" || text == "bounded-below") return Regime::BoundedBelowC;
    throw Error("config: unknown regime '" + text + "'");
}

DomainSpec parseDomain(const json& j, const std::string& run) {
    DomainSpec dom;
    if (!j.contains("T") || !j.contains("box"))
        throw Error("config: run '" + run + "': domain needs T and box");
    dom.T = j.at("T").get<double>();
    for (const auto& pair : j.at("box"))
        dom.box.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
    if (j.contains("truncated_faces"))
        for (const auto& face : j.at("truncated_faces"))
            dom.truncated_faces.insert(face.get<std::string>());
    dom.validate();
    return dom;
}

OperatorSpec parseOperator(const json& j, const std::string& run) {
    OperatorSpec spec;
    if (j.contains("builtin")) {
        spec.builtin = j.at("builtin").get<std::string>();
        if (spec.builtin == "heston") {
            if (j.contains("sigma")) spec.heston.sigma = j.at("sigma").get<double>();
            if (j.contains("rho")) spec.heston.rho = j.at("rho").get<double>();
            if (j.contains("kappa")) spec.heston.kappa = j.at("kappa").get<double>();
            if (j.contains("theta")) spec.heston.theta = j.at("theta").get<double>();
            if (j.contains("r")) spec.heston.r = j.at("r").get<double>();
            if (j.contains("q")) spec.heston.q = j.at("q").get<double>();
            spec.dim = 2;
        } else if (spec.builtin == "identity-laplacian") {
            spec.dim = j.value("dim", 2);
        } else {
            throw Error("config: run '" + run + "': unknown builtin '" +
                        spec.builtin + "'");
        }
        return spec;
    }
    if (!j.contains("dim") || !j.contains("a") || !j.contains("b") || !j.contains("c"))
        throw Error("config: run '" + run + "': custom operator needs dim, a, b, c");
    spec.dim = j.at("dim").get<int>();
    for (const auto& row : j.at("a")) {
        std::vector<std::string> r;
        for (const auto& cell : row) r.push_back(cell.get<std::string>());
        spec.a_expr.push_back(std::move(r));
    }
    for (const auto& cell : j.at("b")) spec.b_expr.push_back(cell.get<std::string>());
    spec.c_expr = j.at("c").get<std::string>();
    if (static_cast<int>(spec.a_expr.size()) != spec.dim ||
        static_cast<int>(spec.b_expr.size()) != spec.dim)
        throw Error("config: run '" + run + "': operator shape mismatch");
    for (const auto& row : spec.a_expr)
        if (static_cast<int>(row.size()) != spec.dim)
            throw Error("config: run '" + run + "': a must be dim x dim");
    return spec;
}

} // namespace

ScalarField field_from_expr(const std::string& text, int dim) {
    if (text.empty())
        return [](const SpaceTimePoint&) { return 0.0; };
    const Expr expr = Expr::parse(text, dim);
    return [expr](const SpaceTimePoint& p) { return expr.eval(p.t, p.x); };
}

ParabolicOperator build_operator(const OperatorSpec& spec) {
    if (spec.builtin == "heston") return make_heston(spec.heston);
    if (spec.builtin == "identity-laplacian") return make_identity_laplacian(spec.dim);
    if (!spec.builtin.empty()) throw Error("config: unknown builtin '" + spec.builtin + "'");

    const int d = spec.dim;
    std::vector<std::vector<Expr>> aExpr;
    bool timeDep = false;
    for (const auto& row : spec.a_expr) {
        std::vector<Expr> r;
        for (const auto& cell : row) {
            r.push_back(Expr::parse(cell, d));
            timeDep = timeDep || usesTime(cell);
        }
        aExpr.push_back(std::move(r));
    }
    std::vector<Expr> bExpr;
    for (const auto& cell : spec.b_expr) {
        bExpr.push_back(Expr::parse(cell, d));
        timeDep = timeDep || usesTime(cell);
    }
    const Expr cExpr = Expr::parse(spec.c_expr, d);
    timeDep = timeDep || usesTime(spec.c_expr);

    ParabolicOperator op;
    op.dim = d;
    op.a = [aExpr, d](const SpaceTimePoint& p) {
        Eigen::MatrixXd a(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                a(i, j) = aExpr[static_cast<size_t>(i)][static_cast<size_t>(j)].eval(p.t, p.x);
        return a;
    };
    op.b = [bExpr, d](const SpaceTimePoint& p) {
        Eigen::VectorXd b(d);
        for (int i = 0; i < d; ++i) b(i) = bExpr[static_cast<size_t>(i)].eval(p.t, p.x);
        return b;
    };
    op.c = [cExpr](const SpaceTimePoint& p) { return cExpr.eval(p.t, p.x); };
    op.time_independent = !timeDep;
    return op;
}

SuiteConfig load_suite_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("config: cannot open '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& ex) {
        throw Error("config: parse error in '" + path + "': " + ex.what());
    }

    SuiteConfig suite;
    suite.jobs = j.value("jobs", 0);
    if (!j.contains("runs") || !j.at("runs").is_array() || j.at("runs").empty())
        throw Error("config: '" + path + "' has an empty run list");

    std::set<std::string> names;
    for (const auto& rj : j.at("runs")) {
        RunSpec run;
        run.name = rj.value("name", "");
        if (run.name.empty()) throw Error("config: run without a name");
        if (!names.insert(run.name).second)
            throw Error("config: duplicate run name '" + run.name + "'");
        run.mode = rj.value("mode", "solve");
        run.seed = rj.value("seed", std::uint64_t{0});

        if (run.mode == "harness") {
            run.count = rj.value("count", 0);
            if (run.count <= 0)
                throw Error("config: run '" + run.name + "': harness needs count > 0");
            run.regime = parseRegime(rj.value("regime", "c>=0"));
            run.dim = rj.value("dim", 2);
            run.nodes = rj.value("nodes", std::vector<int>{9, 9});
            run.time_steps = rj.value("time_steps", 5);
            run.slack = rj.value("slack", 1e-8);
        } else if (run.mode == "classify" || run.mode == "solve" ||
                   run.mode == "obstacle") {
            if (!rj.contains("operator"))
                throw Error("config: run '" + run.name + "' needs an operator");
            run.op = parseOperator(rj.at("operator"), run.name);
            if (!rj.contains("domain"))
                throw Error("config: run '" + run.name + "' needs a domain");
            run.dom = parseDomain(rj.at("domain"), run.name);
            if (run.mode != "classify") {
                run.f_expr = rj.value("f", "");
                run.g_expr = rj.value("g", "");
                run.psi_expr = rj.value("psi", "");
                run.ghost_expr = rj.value("ghost", "");
                run.nodes = rj.value("nodes", std::vector<int>{});
                run.time_steps = rj.value("time_steps", 0);
                run.theta = rj.value("theta", 1.0);
                if (run.g_expr.empty())
                    throw Error("config: run '" + run.name + "' needs data g");
                if (run.nodes.empty() || run.time_steps <= 0)
                    throw Error("config: run '" + run.name +
                                "' needs nodes and time_steps");
                if (run.mode == "obstacle" && run.psi_expr.empty())
                    throw Error("config: run '" + run.name + "' needs psi");
            }
        } else {
            throw Error("config: run '" + run.name + "': unknown mode '" +
                        run.mode + "'");
        }
        suite.runs.push_back(std::move(run));
    }
    return suite;
}

std::string describe_builtin(const std::string& name) {
    if (name == "heston") {
        std::ostringstream out;
        out << "heston: two-factor stochastic-volatility operator on (x1, x2)\n"
            << "  a = (x2/2) [[1, rho*sigma], [rho*sigma, sigma^2]]\n"
            << "  b = (r - q - x2/2,  kappa*(theta - x2))\n"
            << "  c = r\n"
            << "Degenerate on the variance floor x2 = 0, where the drift\n"
            << "component kappa*theta > 0 points inward; the first-order\n"
            << "boundary restriction applies there and no Dirichlet data is\n"
            << "read.  beta = 2*kappa*theta/sigma^2 controls the classical\n"
            << "Dirichlet-locus comparison on the floor.\n";
        return out.str();
    }
    if (name == "identity-laplacian") {
        return "identity-laplacian: a = I, b = 0, c = 0 (uniformly parabolic, "
               "no degenerate boundary)\n";
    }
    throw Error("describe: unknown builtin '" + name + "'");
}

} // namespace degenpde
