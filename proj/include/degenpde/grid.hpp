#pragma once

#include "degenpde/boundary.hpp"

#include <vector>

namespace degenpde {

enum class NodeClass {
    Interior,
    Degenerate,  ///< on the degenerate boundary portion: no Dirichlet data
    Dirichlet,   ///< on the non-degenerate boundary portion
    Inactive     ///< outside the active region (union-of-boxes domains)
};

/// Tensor-product grid on the spatial box with uniform time levels
/// 0 = t_0 < ... < t_nt = T.  Node classification follows the boundary
/// partition: nodes touching any non-degenerate face are Dirichlet,
/// remaining nodes on degenerate faces carry no data.
struct Grid {
    DomainSpec dom;
    std::vector<int> n;      ///< nodes per spatial axis (>= 3)
    std::vector<double> h;   ///< spacings
    int nt = 0;              ///< number of time steps (levels = nt + 1)
    double dt = 0.0;
    std::vector<NodeClass> node_class;  ///< per flattened spatial node
    std::vector<char> active;           ///< per node; 0 only for union grids

    int dim() const { return static_cast<int>(n.size()); }
    int num_nodes() const;
    int index(const std::vector<int>& multi) const;
    std::vector<int> multi_index(int flat) const;
    std::vector<double> coords(int flat) const;
    double time(int level) const { return dt * level; }
    SpaceTimePoint point(int level, int flat) const;
};

/// Values on all spatial nodes of one time level.
using GridFunction = std::vector<double>;

/// Values across all time levels; index 0 is t = 0 and index nt is t = T.
using Trajectory = std::vector<GridFunction>;

Grid build_grid(const DomainSpec& dom, const BoundaryPartition& partition,
                const std::vector<int>& nodes_per_axis, int time_steps);

/// Grid over the bounding box of a disjoint union of boxes; nodes outside
/// every box are Inactive.  Used for connectivity queries, not solves.
Grid build_union_grid(double T, const std::vector<std::vector<std::pair<double, double>>>& boxes,
                      const std::vector<int>& nodes_per_axis, int time_steps);

/// Nodes reachable from P0 = (level0, node0) through the interior and the
/// degenerate boundary by spatial-neighbor and backward-time edges, and
/// the connected component of the t = t0 slice containing P0.
struct ReachableSet {
    int level0 = 0;
    int node0 = 0;
    /// in_s[level][node] — membership of S(P0); levels 0..level0 stored.
    std::vector<std::vector<char>> in_s;
    /// membership of C(P0) within the t = t0 slice.
    std::vector<char> slice;
};

ReachableSet reachable_set(const Grid& grid, int level0, int node0);

} // namespace degenpde
