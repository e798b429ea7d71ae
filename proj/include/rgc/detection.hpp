#ifndef RGC_DETECTION_HPP
#define RGC_DETECTION_HPP

#include <optional>

#include "rgc/complex.hpp"
#include "rgc/poisson.hpp"

namespace rgc {

/** One connected component of a geometric complex's 1-skeleton. */
struct Component {
    int id = 0;
    std::vector<int> vertices; // sorted
    SimplicialComplex induced; // faces whose vertices all lie here
    Box bounding_box;
    /** Every vertex at distance >= rho from the window boundary, so no
     *  unobserved exterior point could attach to this component. Only
     *  meaningful when a window was supplied. */
    bool interior_certified = false;
};

struct ComponentDecomposition {
    std::vector<Component> components; // ordered by smallest vertex label
    std::vector<int> component_of;     // vertex -> component id
};

ComponentDecomposition connected_components(const GeometricComplex& G);
ComponentDecomposition connected_components(const GeometricComplex& G, const Box& window);

enum class OccurrenceKind { Isolated, Pendant };

struct OccurrenceReport {
    OccurrenceKind kind = OccurrenceKind::Isolated;
    int component_id = 0;
    std::vector<std::pair<int, int>> witness; // target vertex -> sample vertex
    std::optional<std::pair<int, int>> bridge; // pendant only
    bool interior_certified = false;
    /** Equivalence search hit its cap; the component was not decided. */
    bool undecided = false;
};

/**
 * One ISOLATED report per connected component that is combinatorially
 * equivalent to the target and interior-certified at range rho. A
 * component whose equivalence search exceeds the cap is reported with
 * undecided=true rather than silently skipped.
 */
std::vector<OccurrenceReport> find_isolated_occurrences(const GeometricComplex& G,
                                                        const SimplicialComplex& target,
                                                        const Box& window, double rho);

/**
 * Pendant occurrences on a host component: for every bridge edge of the
 * host's 1-skeleton, the smaller side's induced subcomplex is tested for
 * equivalence with the target. A bridge lies in no triangle, so a hit is
 * attached to the rest of the host by exactly that one edge.
 */
std::vector<OccurrenceReport> find_pendant_occurrences(const GeometricComplex& G,
                                                       const SimplicialComplex& target,
                                                       int host_component);

/**
 * Component touching (within rho) both window faces orthogonal to
 * `axis`, if any; the standard finite-window percolation surrogate.
 */
std::optional<int> crossing_component(const GeometricComplex& G, const Box& window,
                                      int axis);

/** Bridge edges (u < v) of an undirected graph given as adjacency lists. */
std::vector<std::pair<int, int>> bridge_edges(const std::vector<std::vector<int>>& adj);

} // namespace rgc

#endif
