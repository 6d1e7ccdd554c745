#include "degenpde/grid.hpp"

#include <cmath>
#include <deque>

namespace degenpde {

int Grid::num_nodes() const {
    int total = 1;
    for (int ni : n) total *= ni;
    return total;
}

int Grid::index(const std::vector<int>& multi) const {
    int flat = 0;
    for (size_t ax = 0; ax < n.size(); ++ax)
        flat = flat * n[ax] + multi[ax];
    return flat;
}

std::vector<int> Grid::multi_index(int flat) const {
    std::vector<int> multi(n.size());
    for (size_t ax = n.size(); ax-- > 0;) {
        multi[ax] = flat % n[ax];
        flat /= n[ax];
    }
    return multi;
}

std::vector<double> Grid::coords(int flat) const {
    const auto multi = multi_index(flat);
    std::vector<double> x(n.size());
    for (size_t ax = 0; ax < n.size(); ++ax)
        x[ax] = dom.box[ax].first + h[ax] * multi[ax];
    return x;
}

SpaceTimePoint Grid::point(int level, int flat) const {
    return SpaceTimePoint{time(level), coords(flat)};
}

namespace {

void checkResolution(const std::vector<int>& nodes_per_axis, int time_steps) {
    for (int ni : nodes_per_axis)
        if (ni < 3) throw Error("grid: need at least 3 nodes per axis");
    if (time_steps < 1) throw Error("grid: need at least 2 time levels");
}

} // namespace

Grid build_grid(const DomainSpec& dom, const BoundaryPartition& partition,
                const std::vector<int>& nodes_per_axis, int time_steps) {
    dom.validate();
    if (static_cast<int>(nodes_per_axis.size()) != dom.dim())
        throw Error("grid: resolution dimension mismatch");
    checkResolution(nodes_per_axis, time_steps);

    Grid g;
    g.dom = dom;
    g.n = nodes_per_axis;
    g.nt = time_steps;
    g.dt = dom.T / time_steps;
    g.h.resize(nodes_per_axis.size());
    for (size_t ax = 0; ax < g.h.size(); ++ax)
        g.h[ax] = (dom.box[ax].second - dom.box[ax].first) / (nodes_per_axis[ax] - 1);

    const int d = dom.dim();
    const int total = g.num_nodes();
    g.node_class.assign(static_cast<size_t>(total), NodeClass::Interior);
    g.active.assign(static_cast<size_t>(total), 1);

    for (int flat = 0; flat < total; ++flat) {
        const auto multi = g.multi_index(flat);
        bool onNondeg = false, onDeg = false;
        for (int ax = 0; ax < d; ++ax) {
            for (int side = 0; side < 2; ++side) {
                const bool onFace = side == 0 ? multi[static_cast<size_t>(ax)] == 0
                                              : multi[static_cast<size_t>(ax)] == g.n[static_cast<size_t>(ax)] - 1;
                if (!onFace) continue;
                const std::string id = "x" + std::to_string(ax + 1) + (side == 0 ? "_lo" : "_hi");
                const auto* face = find_face(partition, id);
                if (face == nullptr) throw Error("grid: partition missing face " + id);
                (face->degenerate ? onDeg : onNondeg) = true;
            }
        }
        if (onNondeg)
            g.node_class[static_cast<size_t>(flat)] = NodeClass::Dirichlet;
        else if (onDeg)
            g.node_class[static_cast<size_t>(flat)] = NodeClass::Degenerate;
    }
    return g;
}

Grid build_union_grid(double T,
                      const std::vector<std::vector<std::pair<double, double>>>& boxes,
                      const std::vector<int>& nodes_per_axis, int time_steps) {
    if (boxes.empty()) throw Error("union grid: need at least one box");
    const size_t d = boxes.front().size();
    DomainSpec bounding;
    bounding.T = T;
    bounding.box = boxes.front();
    for (const auto& box : boxes) {
        if (box.size() != d) throw Error("union grid: mixed dimensions");
        for (size_t ax = 0; ax < d; ++ax) {
            bounding.box[ax].first = std::min(bounding.box[ax].first, box[ax].first);
            bounding.box[ax].second = std::max(bounding.box[ax].second, box[ax].second);
        }
    }
    checkResolution(nodes_per_axis, time_steps);

    Grid g;
    g.dom = bounding;
    g.n = nodes_per_axis;
    g.nt = time_steps;
    g.dt = T / time_steps;
    g.h.resize(d);
    for (size_t ax = 0; ax < d; ++ax)
        g.h[ax] = (bounding.box[ax].second - bounding.box[ax].first) / (nodes_per_axis[ax] - 1);

    const int total = g.num_nodes();
    g.node_class.assign(static_cast<size_t>(total), NodeClass::Inactive);
    g.active.assign(static_cast<size_t>(total), 0);
    for (int flat = 0; flat < total; ++flat) {
        const auto x = g.coords(flat);
        for (const auto& box : boxes) {
            bool inside = true;
            for (size_t ax = 0; ax < d; ++ax)
                inside = inside && x[ax] >= box[ax].first - 1e-12 &&
                         x[ax] <= box[ax].second + 1e-12;
            if (inside) {
                g.active[static_cast<size_t>(flat)] = 1;
                g.node_class[static_cast<size_t>(flat)] = NodeClass::Interior;
                break;
            }
        }
    }
    return g;
}

ReachableSet reachable_set(const Grid& grid, int level0, int node0) {
    if (level0 < 1 || level0 > grid.nt)
        throw Error("reachable_set: time level outside (0, T]");
    const auto cls = grid.node_class[static_cast<size_t>(node0)];
    if (cls == NodeClass::Dirichlet)
        throw Error("reachable_set: base point lies on the non-degenerate boundary");
    if (cls == NodeClass::Inactive)
        throw Error("reachable_set: base point outside the active region");

    const int total = grid.num_nodes();
    auto passable = [&](int flat) {
        const auto c = grid.node_class[static_cast<size_t>(flat)];
        return c == NodeClass::Interior || c == NodeClass::Degenerate;
    };

    // neighbors: +-1 along each axis within the same time level
    auto forEachNeighbor = [&](int flat, auto&& fn) {
        const auto multi = grid.multi_index(flat);
        for (size_t ax = 0; ax < multi.size(); ++ax) {
            for (int step : {-1, 1}) {
                auto m = multi;
                m[ax] += step;
                if (m[ax] < 0 || m[ax] >= grid.n[ax]) continue;
                const int nb = grid.index(m);
                if (passable(nb)) fn(nb);
            }
        }
    };

    ReachableSet out;
    out.level0 = level0;
    out.node0 = node0;
    out.in_s.assign(static_cast<size_t>(level0) + 1,
                    std::vector<char>(static_cast<size_t>(total), 0));
    out.slice.assign(static_cast<size_t>(total), 0);

    // S(P0): flood fill over (level, node) with spatial edges and
    // backward-time edges, levels restricted to (0, level0].
    std::deque<std::pair<int, int>> queue;
    out.in_s[static_cast<size_t>(level0)][static_cast<size_t>(node0)] = 1;
    queue.emplace_back(level0, node0);
    while (!queue.empty()) {
        const auto [lvl, node] = queue.front();
        queue.pop_front();
        forEachNeighbor(node, [&](int nb) {
            if (!out.in_s[static_cast<size_t>(lvl)][static_cast<size_t>(nb)]) {
                out.in_s[static_cast<size_t>(lvl)][static_cast<size_t>(nb)] = 1;
                queue.emplace_back(lvl, nb);
            }
        });
        if (lvl > 1 && !out.in_s[static_cast<size_t>(lvl) - 1][static_cast<size_t>(node)]) {
            out.in_s[static_cast<size_t>(lvl) - 1][static_cast<size_t>(node)] = 1;
            queue.emplace_back(lvl - 1, node);
        }
    }

    // C(P0): connected component within the t = t0 slice.
    std::deque<int> sliceQueue;
    out.slice[static_cast<size_t>(node0)] = 1;
    sliceQueue.push_back(node0);
    while (!sliceQueue.empty()) {
        const int node = sliceQueue.front();
        sliceQueue.pop_front();
        forEachNeighbor(node, [&](int nb) {
            if (!out.slice[static_cast<size_t>(nb)]) {
                out.slice[static_cast<size_t>(nb)] = 1;
                sliceQueue.push_back(nb);
            }
        });
    }
    return out;
}

} // namespace degenpde
