#pragma once

#include "degenpde/grid.hpp"

#include <span>

namespace degenpde {

/// Compressed sparse rows of a discrete spatial operator.
struct SparseRows {
    int n = 0;
    std::vector<int> row_ptr;   ///< size n + 1
    std::vector<int> col;
    std::vector<double> val;
    std::vector<char> dirichlet;  ///< rows pinned to boundary data

    std::span<const int> cols(int row) const {
        return {col.data() + row_ptr[static_cast<size_t>(row)],
                col.data() + row_ptr[static_cast<size_t>(row) + 1]};
    }
    std::span<const double> vals(int row) const {
        return {val.data() + row_ptr[static_cast<size_t>(row)],
                val.data() + row_ptr[static_cast<size_t>(row) + 1]};
    }
    double diag(int row) const;
};

/// Row-by-row builder used during assembly.
class RowsBuilder {
public:
    explicit RowsBuilder(int n);
    void add(int row, int col, double w);
    void set_dirichlet(int row);
    SparseRows compress() &&;

private:
    int n_;
    std::vector<std::vector<std::pair<int, double>>> rows_;
    std::vector<char> dirichlet_;
};

/// Discrete spatial operator  -tr(a D^2) - <b, D> + c  at time t:
///  - interior rows: central second differences for the diagonal a-terms,
///    a sign-split 7-point stencil for the cross term, upwind first-order
///    differences for b;
///  - degenerate-boundary rows: the first-order condition
///    -<b, Du> + c u with a one-sided inward difference in the normal
///    direction (requires b_perp >= 0 there) and upwind tangential terms;
///  - Dirichlet rows: identity.
SparseRows assemble_spatial_operator(const ParabolicOperator& op, const Grid& grid,
                                     double t);

struct MonotonicityVerdict {
    bool pass = false;
    int worst_row = -1;
    double worst_offdiag = 0.0;     ///< most positive off-diagonal entry
    double worst_deficit = 0.0;     ///< max of (sum|offdiag| - diag)
    std::string message;
};

/// M-matrix check: every off-diagonal <= 0 and every row weakly
/// diagonally dominant with positive diagonal.  Passing guarantees the
/// discrete comparison principle for the assembled system.
MonotonicityVerdict verify_discrete_monotonicity(const SparseRows& rows);

/// y = A x.  The parallel variant distributes rows across OpenMP threads
/// and is bit-identical to the serial one (per-row sums are sequential).
void apply_rows_serial(const SparseRows& rows, std::span<const double> x,
                       std::span<double> y);
void apply_rows_parallel(const SparseRows& rows, std::span<const double> x,
                         std::span<double> y);

} // namespace degenpde
