#include "rgc/detection.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

namespace rgc {

namespace {

struct UnionFind {
    std::vector<int> parent;

    explicit UnionFind(int n) : parent(n)
    {
        std::iota(parent.begin(), parent.end(), 0);
    }

    int find(int x)
    {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }

    void unite(int a, int b)
    {
        a = find(a);
        b = find(b);
        if (a != b)
            parent[std::max(a, b)] = std::min(a, b);
    }
};

ComponentDecomposition decompose(const GeometricComplex& G, const Box* window,
                                 double margin)
{
    const int n = G.points.size();
    ComponentDecomposition out;
    out.component_of.assign(n, -1);
    if (n == 0)
        return out;

    UnionFind uf(n);
    for (const Face& e : G.complex.faces(1))
        uf.unite(e[0], e[1]);

    // Component ids in order of smallest vertex label.
    std::vector<int> id_of_root(n, -1);
    for (int v = 0; v < n; ++v) {
        int root = uf.find(v);
        if (id_of_root[root] < 0) {
            id_of_root[root] = static_cast<int>(out.components.size());
            Component comp;
            comp.id = id_of_root[root];
            comp.induced = SimplicialComplex(G.complex.dim_cap());
            out.components.push_back(std::move(comp));
        }
        int id = id_of_root[root];
        out.component_of[v] = id;
        out.components[id].vertices.push_back(v);
    }

    for (int k = 0; k <= G.complex.dimension(); ++k)
        for (const Face& f : G.complex.faces(k))
            out.components[out.component_of[f[0]]].induced.add_face_unchecked(f);

    for (Component& comp : out.components) {
        const Matrix& pts = G.points.data();
        Vector lo = pts.row(comp.vertices.front());
        Vector hi = lo;
        bool interior = window != nullptr;
        for (int v : comp.vertices) {
            lo = lo.cwiseMin(pts.row(v).transpose());
            hi = hi.cwiseMax(pts.row(v).transpose());
            if (window && window->boundary_distance(pts.row(v).transpose()) < margin)
                interior = false;
        }
        comp.bounding_box.lo = lo;
        comp.bounding_box.hi = hi;
        comp.interior_certified = interior;
    }
    return out;
}

} // namespace

ComponentDecomposition connected_components(const GeometricComplex& G)
{
    return decompose(G, nullptr, G.rho);
}

ComponentDecomposition connected_components(const GeometricComplex& G, const Box& window)
{
    return decompose(G, &window, G.rho);
}

std::vector<OccurrenceReport> find_isolated_occurrences(const GeometricComplex& G,
                                                        const SimplicialComplex& target,
                                                        const Box& window, double rho)
{
    ComponentDecomposition decomp = decompose(G, &window, rho);
    std::vector<OccurrenceReport> reports;
    const int target_vertices = target.vertex_count();

    for (const Component& comp : decomp.components) {
        if (!comp.interior_certified)
            continue;
        if (static_cast<int>(comp.vertices.size()) != target_vertices)
            continue; // decidedly inequivalent
        OccurrenceReport report;
        report.kind = OccurrenceKind::Isolated;
        report.component_id = comp.id;
        report.interior_certified = true;
        try {
            EquivalenceResult eq = combinatorially_equivalent(target, comp.induced);
            if (!eq.equivalent)
                continue;
            report.witness = std::move(eq.witness);
        } catch (const EquivalenceCapExceeded&) {
            report.undecided = true;
        }
        reports.push_back(std::move(report));
    }
    return reports;
}

std::vector<std::pair<int, int>> bridge_edges(const std::vector<std::vector<int>>& adj)
{
    const int n = static_cast<int>(adj.size());
    std::vector<int> disc(n, -1), low(n, 0), parent(n, -1), next_child(n, 0);
    std::vector<std::pair<int, int>> bridges;
    int timer = 0;

    for (int start = 0; start < n; ++start) {
        if (disc[start] >= 0)
            continue;
        std::vector<int> stack{start};
        disc[start] = low[start] = timer++;
        while (!stack.empty()) {
            int v = stack.back();
            if (next_child[v] < static_cast<int>(adj[v].size())) {
                int u = adj[v][next_child[v]++];
                if (disc[u] < 0) {
                    parent[u] = v;
                    disc[u] = low[u] = timer++;
                    stack.push_back(u);
                } else if (u != parent[v]) {
                    low[v] = std::min(low[v], disc[u]);
                }
            } else {
                stack.pop_back();
                int p = parent[v];
                if (p >= 0) {
                    low[p] = std::min(low[p], low[v]);
                    if (low[v] > disc[p])
                        bridges.emplace_back(std::min(p, v), std::max(p, v));
                }
            }
        }
    }
    std::sort(bridges.begin(), bridges.end());
    return bridges;
}

std::vector<OccurrenceReport> find_pendant_occurrences(const GeometricComplex& G,
                                                       const SimplicialComplex& target,
                                                       int host_component)
{
    ComponentDecomposition decomp = decompose(G, nullptr, G.rho);
    if (host_component < 0 ||
        host_component >= static_cast<int>(decomp.components.size()))
        throw std::invalid_argument("find_pendant_occurrences: invalid host id");
    const Component& host = decomp.components[host_component];

    const int n = G.points.size();
    std::vector<std::vector<int>> adj(n);
    for (const Face& e : G.complex.faces(1)) {
        if (decomp.component_of[e[0]] != host_component)
            continue;
        adj[e[0]].push_back(e[1]);
        adj[e[1]].push_back(e[0]);
    }

    std::vector<std::pair<int, int>> bridges;
    for (auto [u, v] : bridge_edges(adj))
        if (decomp.component_of[u] == host_component)
            bridges.emplace_back(u, v);

    const int target_vertices = target.vertex_count();
    std::vector<OccurrenceReport> reports;

    auto side_vertices = [&](int from, int blocked_a, int blocked_b) {
        std::vector<int> side;
        std::vector<char> seen(n, 0);
        std::vector<int> queue{from};
        seen[from] = 1;
        while (!queue.empty()) {
            int v = queue.back();
            queue.pop_back();
            side.push_back(v);
            for (int u : adj[v]) {
                if (seen[u])
                    continue;
                if ((v == blocked_a && u == blocked_b) ||
                    (v == blocked_b && u == blocked_a))
                    continue;
                seen[u] = 1;
                queue.push_back(u);
            }
        }
        std::sort(side.begin(), side.end());
        return side;
    };

    auto try_side = [&](const std::vector<int>& side, std::pair<int, int> bridge) {
        if (static_cast<int>(side.size()) != target_vertices)
            return;
        std::unordered_set<int> members(side.begin(), side.end());
        SimplicialComplex induced(G.complex.dim_cap());
        for (int k = 0; k <= G.complex.dimension(); ++k) {
            for (const Face& f : G.complex.faces(k)) {
                bool inside = true;
                for (int v : f)
                    if (!members.count(v)) {
                        inside = false;
                        break;
                    }
                if (inside)
                    induced.add_face_unchecked(f);
            }
        }
        OccurrenceReport report;
        report.kind = OccurrenceKind::Pendant;
        report.component_id = host_component;
        report.bridge = bridge;
        try {
            EquivalenceResult eq = combinatorially_equivalent(target, induced);
            if (!eq.equivalent)
                return;
            report.witness = std::move(eq.witness);
        } catch (const EquivalenceCapExceeded&) {
            report.undecided = true;
        }
        reports.push_back(std::move(report));
    };

    for (auto [u, v] : bridges) {
        std::vector<int> side_v = side_vertices(v, u, v);
        std::vector<int> side_u;
        // The two sides partition the host.
        {
            std::unordered_set<int> in_v(side_v.begin(), side_v.end());
            for (int w : host.vertices)
                if (!in_v.count(w))
                    side_u.push_back(w);
        }
        if (side_v.size() < side_u.size()) {
            try_side(side_v, {u, v});
        } else if (side_u.size() < side_v.size()) {
            try_side(side_u, {u, v});
        } else {
            try_side(side_v, {u, v});
            try_side(side_u, {u, v});
        }
    }
    return reports;
}

std::optional<int> crossing_component(const GeometricComplex& G, const Box& window,
                                      int axis)
{
    if (axis < 0 || axis >= window.dim())
        throw std::invalid_argument("crossing_component: axis out of range");
    ComponentDecomposition decomp = decompose(G, nullptr, G.rho);
    const Matrix& pts = G.points.data();
    for (const Component& comp : decomp.components) {
        bool touches_lo = false, touches_hi = false;
        for (int v : comp.vertices) {
            double x = pts(v, axis);
            touches_lo = touches_lo || (x - window.lo(axis) <= G.rho);
            touches_hi = touches_hi || (window.hi(axis) - x <= G.rho);
            if (touches_lo && touches_hi)
                return comp.id;
        }
    }
    return std::nullopt;
}

} // namespace rgc
