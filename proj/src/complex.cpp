#include "rgc/complex.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>
#include <unordered_map>

namespace rgc {

const char* to_string(Flavor f)
{
    return f == Flavor::Rips ? "rips" : "cech";
}

Flavor flavor_from_string(const std::string& s)
{
    if (s == "rips" || s == "RIPS")
        return Flavor::Rips;
    if (s == "cech" || s == "CECH")
        return Flavor::Cech;
    throw std::invalid_argument("unknown flavor: " + s);
}

Face SimplicialComplex::normalized(Face face)
{
    std::sort(face.begin(), face.end());
    if (std::adjacent_find(face.begin(), face.end()) != face.end())
        throw std::invalid_argument("face has repeated vertices");
    return face;
}

void SimplicialComplex::insert(Face face)
{
    if (face.empty())
        throw std::invalid_argument("cannot insert an empty face");
    int k = static_cast<int>(face.size()) - 1;
    if (k > dim_cap_)
        return;
    if (lookup_.insert(face).second) {
        if (static_cast<std::size_t>(k) >= by_dim_.size())
            by_dim_.resize(k + 1);
        by_dim_[k].push_back(std::move(face));
        sorted_ = false;
    }
}

void SimplicialComplex::add_vertex(int v)
{
    insert(Face{v});
}

void SimplicialComplex::add_face(const Face& face)
{
    Face f = normalized(face);
    const int n = static_cast<int>(f.size());
    if (n > 25)
        throw std::invalid_argument("add_face: face too large to expand");
    // All nonempty subsets, clipped to the dimension cap.
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        int size = __builtin_popcount(mask);
        if (size > dim_cap_ + 1)
            continue;
        Face sub;
        sub.reserve(size);
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i))
                sub.push_back(f[i]);
        insert(std::move(sub));
    }
}

void SimplicialComplex::add_face_unchecked(Face face)
{
    insert(std::move(face));
}

SimplicialComplex SimplicialComplex::from_maximal_faces(const std::vector<Face>& maximal,
                                                        int dim_cap)
{
    if (dim_cap < 0) {
        std::size_t top = 1;
        for (const Face& f : maximal)
            top = std::max(top, f.size());
        dim_cap = static_cast<int>(top);
    }
    SimplicialComplex K(dim_cap);
    for (const Face& f : maximal)
        K.add_face(f);
    return K;
}

const std::vector<Face>& SimplicialComplex::faces(int k) const
{
    static const std::vector<Face> kEmpty;
    if (k < 0 || static_cast<std::size_t>(k) >= by_dim_.size())
        return kEmpty;
    if (!sorted_) {
        for (auto& v : by_dim_)
            std::sort(v.begin(), v.end());
        sorted_ = true;
    }
    return by_dim_[k];
}

long SimplicialComplex::face_count(int k) const
{
    if (k < 0 || static_cast<std::size_t>(k) >= by_dim_.size())
        return 0;
    return static_cast<long>(by_dim_[k].size());
}

long SimplicialComplex::total_face_count() const
{
    long n = 0;
    for (const auto& v : by_dim_)
        n += static_cast<long>(v.size());
    return n;
}

std::vector<long> SimplicialComplex::f_vector() const
{
    std::vector<long> f(by_dim_.size());
    for (std::size_t k = 0; k < by_dim_.size(); ++k)
        f[k] = static_cast<long>(by_dim_[k].size());
    return f;
}

std::vector<int> SimplicialComplex::vertices() const
{
    std::vector<int> out;
    for (const Face& f : faces(0))
        out.push_back(f[0]);
    return out;
}

int SimplicialComplex::vertex_count() const
{
    return static_cast<int>(face_count(0));
}

std::vector<Face> SimplicialComplex::maximal_faces() const
{
    std::vector<Face> out;
    const std::vector<int> verts = vertices();
    for (int k = 0; k <= dimension(); ++k) {
        for (const Face& f : faces(k)) {
            bool maximal = true;
            // f is maximal iff no stored face extends it by one vertex.
            if (k + 1 <= dimension()) {
                for (int v : verts) {
                    if (std::binary_search(f.begin(), f.end(), v))
                        continue;
                    Face g = f;
                    g.insert(std::lower_bound(g.begin(), g.end(), v), v);
                    if (has_face(g)) {
                        maximal = false;
                        break;
                    }
                }
            }
            if (maximal)
                out.push_back(f);
        }
    }
    return out;
}

SimplicialComplex SimplicialComplex::skeleton(int k) const
{
    if (k < 0)
        throw std::invalid_argument("skeleton: k must be >= 0");
    SimplicialComplex out(k < dim_cap_ ? k + 1 : dim_cap_);
    for (int j = 0; j <= std::min(k, dimension()); ++j)
        for (const Face& f : faces(j))
            out.add_face_unchecked(f);
    return out;
}

bool SimplicialComplex::operator==(const SimplicialComplex& other) const
{
    // Equality of stored face families; the caps may differ.
    if (total_face_count() != other.total_face_count())
        return false;
    for (const auto& dim_faces : by_dim_)
        for (const Face& f : dim_faces)
            if (!other.has_face(f))
                return false;
    return true;
}

SimplicialComplex wedge_sum(const SimplicialComplex& K, int k_base,
                            const SimplicialComplex& L, int l_base)
{
    if (!K.has_vertex(k_base))
        throw std::invalid_argument("wedge_sum: k_base is not a vertex of K");
    if (!L.has_vertex(l_base))
        throw std::invalid_argument("wedge_sum: l_base is not a vertex of L");

    SimplicialComplex out(std::max(K.dim_cap(), L.dim_cap()));
    for (int k = 0; k <= K.dimension(); ++k)
        for (const Face& f : K.faces(k))
            out.add_face_unchecked(f);

    std::vector<int> kv = K.vertices();
    int next = kv.empty() ? 0 : kv.back() + 1;
    std::map<int, int> relabel;
    relabel[l_base] = k_base;
    for (int v : L.vertices())
        if (v != l_base)
            relabel[v] = next++;

    for (int k = 0; k <= L.dimension(); ++k) {
        for (const Face& f : L.faces(k)) {
            Face g;
            g.reserve(f.size());
            for (int v : f)
                g.push_back(relabel[v]);
            std::sort(g.begin(), g.end());
            out.add_face_unchecked(std::move(g));
        }
    }
    return out;
}

SimplicialComplex disjoint_union(const SimplicialComplex& K, const SimplicialComplex& L)
{
    SimplicialComplex out(std::max(K.dim_cap(), L.dim_cap()));
    for (int k = 0; k <= K.dimension(); ++k)
        for (const Face& f : K.faces(k))
            out.add_face_unchecked(f);
    std::vector<int> kv = K.vertices();
    int shift = kv.empty() ? 0 : kv.back() + 1;
    std::vector<int> lv = L.vertices();
    int lo = lv.empty() ? 0 : lv.front();
    for (int k = 0; k <= L.dimension(); ++k) {
        for (const Face& f : L.faces(k)) {
            Face g;
            g.reserve(f.size());
            for (int v : f)
                g.push_back(v - lo + shift);
            out.add_face_unchecked(std::move(g));
        }
    }
    return out;
}

// ---------------------------------------------------------------------
// Geometric builders
// ---------------------------------------------------------------------

namespace {

// Sorted neighbor lists of the rho-proximity graph (closed test under
// the shared tolerance). Uses a lattice bucket grid when the input is
// large, a direct scan otherwise.
std::vector<std::vector<int>> proximity_adjacency(const PointSet& X, double rho)
{
    const int n = X.size();
    std::vector<std::vector<int>> adj(n);
    auto add_edge = [&](int i, int j) {
        adj[i].push_back(j);
        adj[j].push_back(i);
    };

    if (n <= 128) {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (approx_leq(X.distance(i, j), rho))
                    add_edge(i, j);
    } else {
        const int d = X.dim();
        const Matrix& pts = X.data();
        Vector lo = pts.colwise().minCoeff();
        auto cell_of = [&](int i) {
            std::vector<long> c(d);
            for (int a = 0; a < d; ++a)
                c[a] = static_cast<long>(std::floor((pts(i, a) - lo(a)) / rho));
            return c;
        };
        struct CellHash {
            std::size_t operator()(const std::vector<long>& c) const
            {
                std::uint64_t h = 1469598103934665603ULL;
                for (long v : c) {
                    h ^= static_cast<std::uint64_t>(v);
                    h *= 1099511628211ULL;
                }
                return static_cast<std::size_t>(h);
            }
        };
        std::unordered_map<std::vector<long>, std::vector<int>, CellHash> grid;
        for (int i = 0; i < n; ++i)
            grid[cell_of(i)].push_back(i);

        // Odometer over the 3^d neighborhood of each occupied cell.
        std::vector<long> offset(d, -1);
        for (int i = 0; i < n; ++i) {
            std::vector<long> base = cell_of(i);
            std::fill(offset.begin(), offset.end(), -1L);
            while (true) {
                std::vector<long> cell(d);
                for (int a = 0; a < d; ++a)
                    cell[a] = base[a] + offset[a];
                auto it = grid.find(cell);
                if (it != grid.end()) {
                    for (int j : it->second)
                        if (j > i && approx_leq(X.distance(i, j), rho))
                            add_edge(i, j);
                }
                int a = 0;
                while (a < d && offset[a] == 1)
                    offset[a++] = -1;
                if (a == d)
                    break;
                ++offset[a];
            }
        }
    }
    for (auto& nb : adj)
        std::sort(nb.begin(), nb.end());
    return adj;
}

// Expands cliques in increasing label order. `accept` vetoes a candidate
// face; a vetoed face is neither stored nor expanded (sound for
// downward-closed face families).
template <typename Accept>
void expand_cliques(SimplicialComplex& K, const std::vector<std::vector<int>>& adj,
                    int max_size, Face& face, std::vector<int>& cands, Accept&& accept)
{
    for (std::size_t ci = 0; ci < cands.size(); ++ci) {
        int v = cands[ci];
        face.push_back(v);
        if (accept(face)) {
            K.add_face_unchecked(face);
            if (static_cast<int>(face.size()) < max_size) {
                std::vector<int> next;
                const auto& nb = adj[v];
                for (std::size_t cj = ci + 1; cj < cands.size(); ++cj)
                    if (std::binary_search(nb.begin(), nb.end(), cands[cj]))
                        next.push_back(cands[cj]);
                if (!next.empty())
                    expand_cliques(K, adj, max_size, face, next,
                                   std::forward<Accept>(accept));
            }
        }
        face.pop_back();
    }
}

template <typename Accept>
SimplicialComplex build_clique_complex(const PointSet& X, double rho, int dim_cap,
                                       Accept&& accept)
{
    SimplicialComplex K(dim_cap);
    const int n = X.size();
    auto adj = proximity_adjacency(X, rho);
    Face face;
    for (int v = 0; v < n; ++v) {
        K.add_vertex(v);
        face.assign(1, v);
        std::vector<int> cands;
        for (int u : adj[v])
            if (u > v)
                cands.push_back(u);
        if (!cands.empty() && dim_cap >= 1)
            expand_cliques(K, adj, dim_cap + 1, face, cands,
                           std::forward<Accept>(accept));
    }
    return K;
}

// Resolves the cap: defaults clamp to |X|-1 (never below 1 so tiny
// inputs still build), explicit values must be >= 1.
int resolve_dim_cap(const PointSet& X, double rho, int dim_cap, int default_cap)
{
    if (!(rho > 0.0))
        throw std::invalid_argument("builder: rho must be positive");
    int natural = std::max(X.size() - 1, 1);
    if (dim_cap < 0)
        return std::min(natural, default_cap);
    if (dim_cap < 1)
        throw std::invalid_argument("builder: dim_cap must be >= 1");
    return std::min(dim_cap, natural);
}

} // namespace

GeometricComplex rips_complex(const PointSet& X, double rho, int dim_cap)
{
    dim_cap = resolve_dim_cap(X, rho, dim_cap, 8);
    SimplicialComplex K =
        build_clique_complex(X, rho, dim_cap, [](const Face&) { return true; });
    return GeometricComplex{std::move(K), X, rho, Flavor::Rips};
}

GeometricComplex cech_complex(const PointSet& X, double rho, int dim_cap)
{
    dim_cap = resolve_dim_cap(X, rho, dim_cap, X.dim() + 1);

    const double tau = rho / 2.0;
    const Matrix& pts = X.data();
    auto accept = [&](const Face& face) {
        if (face.size() <= 2)
            return true; // edges agree with the Rips test exactly
        Ball b = minimal_enclosing_ball(pts, face);
        return approx_leq(b.radius, tau);
    };
    SimplicialComplex K = build_clique_complex(X, rho, dim_cap, accept);
    return GeometricComplex{std::move(K), X, rho, Flavor::Cech};
}

bool membership_consistent(const GeometricComplex& G)
{
    const SimplicialComplex& K = G.complex;
    const Matrix& pts = G.points.data();
    auto passes = [&](const Face& f) {
        if (f.size() == 1)
            return true;
        if (G.flavor == Flavor::Rips) {
            for (std::size_t i = 0; i < f.size(); ++i)
                for (std::size_t j = i + 1; j < f.size(); ++j)
                    if (!approx_leq((pts.row(f[i]) - pts.row(f[j])).norm(), G.rho))
                        return false;
            return true;
        }
        return approx_leq(minimal_enclosing_ball(pts, f).radius, G.rho / 2.0);
    };

    for (int k = 0; k <= K.dimension(); ++k)
        for (const Face& f : K.faces(k))
            if (!passes(f))
                return false;

    // Fringe candidates: supersets by one vertex of a stored face, all of
    // whose codimension-one subsets are stored, but which are absent.
    std::vector<int> verts = K.vertices();
    for (int k = 0; k <= K.dimension(); ++k) {
        if (k + 1 > K.dim_cap())
            break;
        for (const Face& f : K.faces(k)) {
            for (int v : verts) {
                if (std::binary_search(f.begin(), f.end(), v))
                    continue;
                Face g = f;
                g.insert(std::lower_bound(g.begin(), g.end(), v), v);
                if (K.has_face(g))
                    continue;
                bool closed_below = true;
                for (std::size_t drop = 0; drop < g.size() && closed_below; ++drop) {
                    Face sub;
                    for (std::size_t i = 0; i < g.size(); ++i)
                        if (i != drop)
                            sub.push_back(g[i]);
                    closed_below = K.has_face(sub);
                }
                if (closed_below && passes(g))
                    return false;
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------------
// Combinatorial equivalence
// ---------------------------------------------------------------------

namespace {

// Per-vertex invariant: number of incident faces of each size.
std::vector<std::vector<long>> vertex_signatures(const SimplicialComplex& K,
                                                 const std::vector<int>& verts)
{
    std::unordered_map<int, int> index;
    for (std::size_t i = 0; i < verts.size(); ++i)
        index[verts[i]] = static_cast<int>(i);
    std::vector<std::vector<long>> sig(verts.size(),
                                       std::vector<long>(K.dimension() + 2, 0));
    for (int k = 0; k <= K.dimension(); ++k)
        for (const Face& f : K.faces(k))
            for (int v : f)
                ++sig[index.at(v)][f.size()];
    return sig;
}

bool verify_witness(const SimplicialComplex& K, const SimplicialComplex& L,
                    const std::vector<std::pair<int, int>>& witness)
{
    std::unordered_map<int, int> fwd, bwd;
    for (auto [a, b] : witness) {
        fwd[a] = b;
        bwd[b] = a;
    }
    if (fwd.size() != witness.size() || bwd.size() != witness.size())
        return false;
    auto maps_faces = [](const SimplicialComplex& A, const SimplicialComplex& B,
                         const std::unordered_map<int, int>& m) {
        for (int k = 0; k <= A.dimension(); ++k) {
            for (const Face& f : A.faces(k)) {
                Face g;
                g.reserve(f.size());
                for (int v : f) {
                    auto it = m.find(v);
                    if (it == m.end())
                        return false;
                    g.push_back(it->second);
                }
                std::sort(g.begin(), g.end());
                if (!B.has_face(g))
                    return false;
            }
        }
        return true;
    };
    return maps_faces(K, L, fwd) && maps_faces(L, K, bwd);
}

} // namespace

EquivalenceResult combinatorially_equivalent(const SimplicialComplex& K,
                                             const SimplicialComplex& L,
                                             int search_cap)
{
    const int n = K.vertex_count();
    if (n != L.vertex_count())
        return {};
    if (n > search_cap || L.vertex_count() > search_cap)
        throw EquivalenceCapExceeded(n, search_cap);
    if (K.f_vector() != L.f_vector())
        return {};
    if (n == 0)
        return {true, {}};

    std::vector<int> kv = K.vertices();
    std::vector<int> lv = L.vertices();
    auto ksig = vertex_signatures(K, kv);
    auto lsig = vertex_signatures(L, lv);

    // Candidate targets share the incident-face-size histogram.
    std::vector<std::vector<int>> candidates(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
            if (ksig[i] == lsig[j])
                candidates[i].push_back(j);
        if (candidates[i].empty())
            return {};
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (candidates[a].size() != candidates[b].size())
            return candidates[a].size() < candidates[b].size();
        return kv[a] < kv[b];
    });
    std::vector<int> rank(n);
    for (int pos = 0; pos < n; ++pos)
        rank[order[pos]] = pos;

    // Faces indexed by K-vertex positions; each face is checked as soon as
    // its last vertex (in assignment order) is placed.
    std::unordered_map<int, int> kindex;
    for (int i = 0; i < n; ++i)
        kindex[kv[i]] = i;
    std::vector<std::vector<std::vector<int>>> trigger(n);
    for (int k = 1; k <= K.dimension(); ++k) {
        for (const Face& f : K.faces(k)) {
            std::vector<int> idx;
            idx.reserve(f.size());
            int last = 0;
            for (int v : f) {
                int i = kindex.at(v);
                idx.push_back(i);
                last = std::max(last, rank[i]);
            }
            trigger[last].push_back(std::move(idx));
        }
    }

    std::vector<int> assign(n, -1);
    std::vector<char> used(n, 0);

    auto backtrack = [&](auto&& self, int pos) -> bool {
        if (pos == n)
            return true;
        int u = order[pos];
        for (int w : candidates[u]) {
            if (used[w])
                continue;
            assign[u] = w;
            used[w] = 1;
            bool ok = true;
            Face g;
            for (const auto& idx : trigger[pos]) {
                g.clear();
                for (int i : idx)
                    g.push_back(lv[assign[i]]);
                std::sort(g.begin(), g.end());
                if (!L.has_face(g)) {
                    ok = false;
                    break;
                }
            }
            if (ok && self(self, pos + 1))
                return true;
            assign[u] = -1;
            used[w] = 0;
        }
        return false;
    };

    if (!backtrack(backtrack, 0))
        return {};

    EquivalenceResult result;
    result.equivalent = true;
    for (int i = 0; i < n; ++i)
        result.witness.emplace_back(kv[i], lv[assign[i]]);
    if (!verify_witness(K, L, result.witness))
        throw std::logic_error("equivalence witness failed verification");
    return result;
}

} // namespace rgc
