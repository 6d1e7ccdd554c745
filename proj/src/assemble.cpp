#include "degenpde/assemble.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace degenpde {

double SparseRows::diag(int row) const {
    const auto cs = cols(row);
    const auto ws = vals(row);
    for (size_t k = 0; k < cs.size(); ++k)
        if (cs[k] == row) return ws[k];
    return 0.0;
}

RowsBuilder::RowsBuilder(int n)
    : n_(n), rows_(static_cast<size_t>(n)), dirichlet_(static_cast<size_t>(n), 0) {}

void RowsBuilder::add(int row, int col, double w) {
    auto& entries = rows_[static_cast<size_t>(row)];
    for (auto& [c, v] : entries) {
        if (c == col) {
            v += w;
            return;
        }
    }
    entries.emplace_back(col, w);
}

void RowsBuilder::set_dirichlet(int row) { dirichlet_[static_cast<size_t>(row)] = 1; }

SparseRows RowsBuilder::compress() && {
    SparseRows out;
    out.n = n_;
    out.dirichlet = std::move(dirichlet_);
    out.row_ptr.reserve(static_cast<size_t>(n_) + 1);
    out.row_ptr.push_back(0);
    for (auto& entries : rows_) {
        std::sort(entries.begin(), entries.end());
        for (const auto& [c, v] : entries) {
            out.col.push_back(c);
            out.val.push_back(v);
        }
        out.row_ptr.push_back(static_cast<int>(out.col.size()));
    }
    return out;
}

namespace {

/// Flat index of the node shifted by `step` along `axis`.
int shifted(const Grid& grid, const std::vector<int>& multi, int axis, int step) {
    auto m = multi;
    m[static_cast<size_t>(axis)] += step;
    return grid.index(m);
}

bool onBoundary(const Grid& grid, const std::vector<int>& multi, int axis, int& inward) {
    const int i = multi[static_cast<size_t>(axis)];
    if (i == 0) {
        inward = 1;
        return true;
    }
    if (i == grid.n[static_cast<size_t>(axis)] - 1) {
        inward = -1;
        return true;
    }
    return false;
}

void addUpwindDrift(RowsBuilder& builder, const Grid& grid,
                    const std::vector<int>& multi, int flat, int axis, double bk) {
    // -b_k du/dx_k with the first-order difference taken on the side the
    // drift points to, keeping the neighbor weight non-positive.
    const double h = grid.h[static_cast<size_t>(axis)];
    if (bk >= 0.0) {
        builder.add(flat, flat, bk / h);
        builder.add(flat, shifted(grid, multi, axis, +1), -bk / h);
    } else {
        builder.add(flat, flat, -bk / h);
        builder.add(flat, shifted(grid, multi, axis, -1), bk / h);
    }
}

void assembleInterior(RowsBuilder& builder, const ParabolicOperator& op,
                      const Grid& grid, const std::vector<int>& multi, int flat,
                      const CoefficientTriple& coef) {
    const int d = grid.dim();
    // -a_kk d2u/dx_k2 by central second differences.
    for (int ax = 0; ax < d; ++ax) {
        const double akk = coef.a(ax, ax);
        const double h2 = grid.h[static_cast<size_t>(ax)] * grid.h[static_cast<size_t>(ax)];
        builder.add(flat, flat, 2.0 * akk / h2);
        builder.add(flat, shifted(grid, multi, ax, +1), -akk / h2);
        builder.add(flat, shifted(grid, multi, ax, -1), -akk / h2);
    }
    // -2 a_ij d2u/dx_i dx_j by the 7-point stencil whose corner pair
    // follows the sign of a_ij, so corner weights stay non-positive.
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            const double aij = coef.a(i, j);
            if (aij == 0.0) continue;
            const double m = std::abs(aij);
            const double w = m / (grid.h[static_cast<size_t>(i)] * grid.h[static_cast<size_t>(j)]);
            const int si = aij > 0.0 ? +1 : -1;  // corner pair (si, +1), (-si, -1)
            auto corner = [&](int di, int dj) {
                auto mm = multi;
                mm[static_cast<size_t>(i)] += di;
                mm[static_cast<size_t>(j)] += dj;
                return grid.index(mm);
            };
            builder.add(flat, flat, -2.0 * w);
            builder.add(flat, corner(si, +1), -w);
            builder.add(flat, corner(-si, -1), -w);
            builder.add(flat, shifted(grid, multi, i, +1), w);
            builder.add(flat, shifted(grid, multi, i, -1), w);
            builder.add(flat, shifted(grid, multi, j, +1), w);
            builder.add(flat, shifted(grid, multi, j, -1), w);
        }
    }
    for (int ax = 0; ax < d; ++ax)
        addUpwindDrift(builder, grid, multi, flat, ax, coef.b(ax));
    builder.add(flat, flat, coef.c);
    (void)op;
}

void assembleDegenerate(RowsBuilder& builder, const ParabolicOperator& op,
                        const Grid& grid, const std::vector<int>& multi, int flat,
                        const CoefficientTriple& coef, double t) {
    // The diffusion vanishes here, so the operator restricts to the
    // first-order equation -<b, Du> + c u, discretized with one-sided
    // inward differences along boundary axes.  The drift must not point
    // out of the domain there.
    const int d = grid.dim();
    for (int ax = 0; ax < d; ++ax) {
        int inward = 0;
        const double bk = coef.b(ax);
        if (onBoundary(grid, multi, ax, inward)) {
            const double bPerp = bk * inward;
            if (bPerp < -1e-12) {
                std::ostringstream msg;
                msg << "assemble: drift points out of the domain at degenerate node "
                    << flat << " (t = " << t << ", axis " << ax + 1
                    << ", b_perp = " << bPerp << ")";
                throw Error(msg.str());
            }
            const double h = grid.h[static_cast<size_t>(ax)];
            builder.add(flat, flat, bPerp / h);
            builder.add(flat, shifted(grid, multi, ax, inward), -bPerp / h);
        } else {
            addUpwindDrift(builder, grid, multi, flat, ax, bk);
        }
    }
    builder.add(flat, flat, coef.c);
    (void)op;
}

} // namespace

SparseRows assemble_spatial_operator(const ParabolicOperator& op, const Grid& grid,
                                     double t) {
    if (op.dim != grid.dim()) throw Error("assemble: operator/grid dimension mismatch");
    const int total = grid.num_nodes();
    RowsBuilder builder(total);
    for (int flat = 0; flat < total; ++flat) {
        const auto cls = grid.node_class[static_cast<size_t>(flat)];
        if (cls == NodeClass::Inactive) {
            builder.add(flat, flat, 1.0);
            builder.set_dirichlet(flat);
            continue;
        }
        if (cls == NodeClass::Dirichlet) {
            builder.add(flat, flat, 1.0);
            builder.set_dirichlet(flat);
            continue;
        }
        const auto multi = grid.multi_index(flat);
        const SpaceTimePoint p{t, grid.coords(flat)};
        const auto coef = eval_coefficients(op, p);
        if (cls == NodeClass::Degenerate)
            assembleDegenerate(builder, op, grid, multi, flat, coef, t);
        else
            assembleInterior(builder, op, grid, multi, flat, coef);
    }
    return std::move(builder).compress();
}

MonotonicityVerdict verify_discrete_monotonicity(const SparseRows& rows) {
    constexpr double kOffdiagTol = 1e-12;
    constexpr double kDominanceTol = 1e-10;

    MonotonicityVerdict verdict;
    verdict.pass = true;
    for (int row = 0; row < rows.n; ++row) {
        const auto cs = rows.cols(row);
        const auto ws = rows.vals(row);
        double diag = 0.0, offSum = 0.0, offMax = 0.0;
        for (size_t k = 0; k < cs.size(); ++k) {
            if (cs[k] == row) {
                diag = ws[k];
            } else {
                offSum += std::abs(ws[k]);
                offMax = std::max(offMax, ws[k]);
            }
        }
        const double scale = std::max(1.0, std::abs(diag) + offSum);
        const double deficit = offSum - diag;
        bool bad = false;
        if (offMax > kOffdiagTol * scale) bad = true;
        if (!(diag > 0.0)) bad = true;
        if (deficit > kDominanceTol * scale) bad = true;
        if (bad) {
            if (verdict.pass || offMax > verdict.worst_offdiag ||
                deficit > verdict.worst_deficit) {
                verdict.worst_row = row;
                verdict.worst_offdiag = offMax;
                verdict.worst_deficit = deficit;
            }
            verdict.pass = false;
        }
    }
    if (verdict.pass) {
        verdict.message = "monotone: off-diagonals non-positive, rows weakly dominant";
    } else {
        std::ostringstream msg;
        msg << "not monotone: row " << verdict.worst_row
            << " has max off-diagonal " << verdict.worst_offdiag
            << " and dominance deficit " << verdict.worst_deficit;
        verdict.message = msg.str();
    }
    return verdict;
}

void apply_rows_serial(const SparseRows& rows, std::span<const double> x,
                       std::span<double> y) {
    for (int row = 0; row < rows.n; ++row) {
        double sum = 0.0;
        for (int k = rows.row_ptr[static_cast<size_t>(row)];
             k < rows.row_ptr[static_cast<size_t>(row) + 1]; ++k)
            sum += rows.val[static_cast<size_t>(k)] *
                   x[static_cast<size_t>(rows.col[static_cast<size_t>(k)])];
        y[static_cast<size_t>(row)] = sum;
    }
}

void apply_rows_parallel(const SparseRows& rows, std::span<const double> x,
                         std::span<double> y) {
#pragma omp parallel for schedule(static)
    for (int row = 0; row < rows.n; ++row) {
        double sum = 0.0;
        for (int k = rows.row_ptr[static_cast<size_t>(row)];
             k < rows.row_ptr[static_cast<size_t>(row) + 1]; ++k)
            sum += rows.val[static_cast<size_t>(k)] *
                   x[static_cast<size_t>(rows.col[static_cast<size_t>(k)])];
        y[static_cast<size_t>(row)] = sum;
    }
}

} // namespace degenpde
