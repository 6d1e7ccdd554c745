#include "degenpde/solve.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <vector>

using namespace degenpde;

namespace {

double seconds(const std::chrono::steady_clock::time_point& start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
}

} // namespace

int main() {
    HestonParams params;
    const ParabolicOperator op = make_heston(params);
    DomainSpec dom;
    dom.T = 1.0;
    dom.box = {{-0.5, 0.5}, {0.0, 0.5}};
    const BoundaryPartition partition = classify_degenerate_boundary(op, dom);

    std::cout << "nodes      assemble[s]  apply_serial[s]  apply_omp[s]  speedup  max|diff|\n";
    for (int n : {65, 129, 257}) {
        const Grid grid = build_grid(dom, partition, {n, n}, 4);
        const int total = grid.num_nodes();

        auto t0 = std::chrono::steady_clock::now();
        const SparseRows rows = assemble_spatial_operator(op, grid, 0.5);
        const double assembleTime = seconds(t0);

        std::vector<double> x(static_cast<size_t>(total));
        for (int i = 0; i < total; ++i)
            x[static_cast<size_t>(i)] = std::sin(0.01 * i);
        std::vector<double> ySerial(x.size()), yParallel(x.size());

        const int reps = 200;
        t0 = std::chrono::steady_clock::now();
        for (int r = 0; r < reps; ++r) apply_rows_serial(rows, x, ySerial);
        const double serialTime = seconds(t0) / reps;

        t0 = std::chrono::steady_clock::now();
        for (int r = 0; r < reps; ++r) apply_rows_parallel(rows, x, yParallel);
        const double parallelTime = seconds(t0) / reps;

        double maxDiff = 0.0;
        for (size_t i = 0; i < x.size(); ++i)
            maxDiff = std::max(maxDiff, std::abs(ySerial[i] - yParallel[i]));

        std::printf("%3dx%-6d %10.4f %15.6f %13.6f %8.2f %10.2e\n", n, n,
                    assembleTime, serialTime, parallelTime,
                    serialTime / parallelTime, maxDiff);
    }
    return 0;
}
