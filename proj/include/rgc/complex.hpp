#ifndef RGC_COMPLEX_HPP
#define RGC_COMPLEX_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <unordered_set>
#include <utility>
#include <vector>

#include "rgc/geometry.hpp"

namespace rgc {

/** A face: sorted, strictly increasing vertex labels. */
using Face = std::vector<int>;

struct FaceHash {
    std::size_t operator()(const Face& f) const
    {
        std::uint64_t h = 0x9E3779B97F4A7C15ULL;
        for (int v : f) {
            h ^= static_cast<std::uint64_t>(v) + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

enum class Flavor { Rips, Cech };

const char* to_string(Flavor f);
Flavor flavor_from_string(const std::string& s);

/**
 * Abstract simplicial complex on integer vertex labels. Faces are stored
 * explicitly up to the dimension cap and the stored family is closed
 * under taking nonempty subsets. Every vertex appears as a 0-face.
 */
class SimplicialComplex {
public:
    SimplicialComplex() : dim_cap_(0) {}

    explicit SimplicialComplex(int dim_cap) : dim_cap_(dim_cap)
    {
        if (dim_cap < 0)
            throw std::invalid_argument("SimplicialComplex: dim_cap must be >= 0");
    }

    /**
     * Build from maximal faces, expanding the downward closure. With
     * dim_cap < 0 the cap defaults to the largest face size, so faces one
     * dimension above the complex are known to be absent and homology is
     * exact in every degree of the complex.
     */
    static SimplicialComplex from_maximal_faces(const std::vector<Face>& maximal,
                                                int dim_cap = -1);

    int dim_cap() const { return dim_cap_; }

    /** Largest stored face dimension; -1 when empty. */
    int dimension() const { return static_cast<int>(by_dim_.size()) - 1; }

    bool empty() const { return by_dim_.empty(); }

    void add_vertex(int v);

    /** Insert a face together with all of its nonempty subsets. */
    void add_face(const Face& face);

    /** Insert one face whose proper subsets are already present. */
    void add_face_unchecked(Face face);

    bool has_face(const Face& face) const { return lookup_.count(face) > 0; }

    /** k-dimensional faces in lexicographic order. */
    const std::vector<Face>& faces(int k) const;

    long face_count(int k) const;
    long total_face_count() const;
    std::vector<long> f_vector() const;

    std::vector<int> vertices() const;
    int vertex_count() const;
    bool has_vertex(int v) const { return lookup_.count(Face{v}) > 0; }

    std::vector<Face> maximal_faces() const;

    SimplicialComplex skeleton(int k) const;

    bool operator==(const SimplicialComplex& other) const;

private:
    void insert(Face face);
    static Face normalized(Face face);

    int dim_cap_;
    std::unordered_set<Face, FaceHash> lookup_;
    mutable std::vector<std::vector<Face>> by_dim_;
    mutable bool sorted_ = true;
};

/** One-point union of K and L at the given basepoints. */
SimplicialComplex wedge_sum(const SimplicialComplex& K, int k_base,
                            const SimplicialComplex& L, int l_base);

/** Disjoint union with L's labels shifted past K's. */
SimplicialComplex disjoint_union(const SimplicialComplex& K, const SimplicialComplex& L);

/**
 * A simplicial complex whose vertex i sits at the i-th point of a point
 * set, produced by one of the geometric builders at scale parameter rho.
 */
struct GeometricComplex {
    SimplicialComplex complex;
    PointSet points;
    double rho = 0.0;
    Flavor flavor = Flavor::Rips;
};

/**
 * Vietoris-Rips complex: faces are the cliques of size <= dim_cap+1 of
 * the graph joining points at distance <= rho (closed inequality under
 * the shared tolerance). dim_cap < 0 defaults to min(|X|-1, 8).
 */
GeometricComplex rips_complex(const PointSet& X, double rho, int dim_cap = -1);

/**
 * Čech complex: faces are the subsets whose minimal enclosing ball has
 * radius <= rho/2 (closed inequality). Candidates are Rips cliques,
 * filtered by the ball test; the 1-skeleton therefore coincides with the
 * Vietoris-Rips 1-skeleton by construction. dim_cap < 0 defaults to
 * min(|X|-1, d+1).
 */
GeometricComplex cech_complex(const PointSet& X, double rho, int dim_cap = -1);

/** Re-runs the flavor's face test on every stored face and every fringe
 *  candidate; used by tests to validate builder output. */
bool membership_consistent(const GeometricComplex& G);

class EquivalenceCapExceeded : public std::runtime_error {
public:
    explicit EquivalenceCapExceeded(int vertices, int cap)
        : std::runtime_error("combinatorial equivalence search cap exceeded: " +
                             std::to_string(vertices) + " vertices > cap " +
                             std::to_string(cap))
    {
    }
};

struct EquivalenceResult {
    bool equivalent = false;
    /** Vertex bijection K -> L, only meaningful when equivalent. */
    std::vector<std::pair<int, int>> witness;
};

/**
 * Decides whether a vertex bijection mapping faces to faces bijectively
 * exists, by backtracking over vertex assignments pruned with f-vector
 * equality and per-vertex face-size histograms. A found witness is
 * re-verified in both directions before being returned. Throws
 * EquivalenceCapExceeded when either complex has more vertices than the
 * search cap.
 */
EquivalenceResult combinatorially_equivalent(const SimplicialComplex& K,
                                             const SimplicialComplex& L,
                                             int search_cap = 32);

} // namespace rgc

#endif
