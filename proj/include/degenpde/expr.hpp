#pragma once

#include <memory>
#include <string>
#include <vector>

namespace degenpde {

/// Parsed arithmetic expression over the variables t, x1, ..., xd.
///
/// Grammar: + - * / ^ with usual precedence, unary minus, parentheses,
/// numeric literals, and the functions exp(a), max(a,b), min(a,b),
/// abs(a), sqrt(a), log(a).
class Expr {
public:
    static Expr parse(const std::string& text, int dim);

    /// Evaluate at (t, x). x.size() must equal the dim given to parse().
    double eval(double t, const std::vector<double>& x) const;

    const std::string& text() const { return text_; }

    struct Node;  // exposed for the implementation; not part of the API

private:
    std::shared_ptr<const Node> root_;
    std::string text_;
    int dim_ = 0;
};

} // namespace degenpde
