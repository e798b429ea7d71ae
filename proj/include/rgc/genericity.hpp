#ifndef RGC_GENERICITY_HPP
#define RGC_GENERICITY_HPP

#include <cstdint>
#include <optional>

#include "rgc/complex.hpp"

namespace rgc {

/**
 * Claims that building `flavor` on `representation` at `rho` yields a
 * complex combinatorially equivalent to `target` via `witness`, and that
 * the equivalence class is stable under any perturbation of bottleneck
 * distance < margin (when margin > 0).
 */
struct RepresentationCertificate {
    SimplicialComplex target;
    PointSet representation;
    double rho = 0.0;
    Flavor flavor = Flavor::Cech;
    double margin = 0.0;
    std::vector<std::pair<int, int>> witness;
};

/** Builds the flavor complex of X at rho and tests equivalence with K. */
EquivalenceResult is_representation(const PointSet& X, double rho,
                                    const SimplicialComplex& K, Flavor flavor,
                                    int dim_cap = -1);

/**
 * Distance of the configuration from combinatorial change.
 *
 * Čech: min over subsets A (sizes 1..d+2; larger supports cannot realize
 * new ball radii) of |r_A - rho/2|. Rips: min over point pairs of
 * |dist - rho|. Returns 0 when a subset sits at the threshold within the
 * shared tolerance, +infinity when no subset constrains the complex.
 */
double genericity_margin(const PointSet& X, double rho, Flavor flavor);

struct MakeGenericResult {
    PointSet points;
    bool rescaled = false;
    double scale = 1.0;
    double margin = 0.0; // margin of the returned points
};

/**
 * Returns X unchanged when its margin is positive. Otherwise rescales X
 * about the origin by tau / (tau + 0.9 * delta'), where tau is the face
 * threshold (rho/2 for Čech, rho for Rips) and delta' is the smallest
 * excess of a non-face over the threshold (tau when no non-face exists),
 * which preserves the combinatorial type and makes the margin positive.
 */
MakeGenericResult make_generic(const PointSet& X, double rho, Flavor flavor,
                               bool force_rescale = false);

struct VerifyGenericResult {
    bool ok = false;
    int trials_run = 0;
    std::optional<PointSet> counterexample;
};

/**
 * Randomized falsification of a genericity claim: each trial displaces
 * every point independently and uniformly in the open delta-ball (so the
 * bottleneck distance to X stays below delta) and rebuilds the complex.
 * `ok` means every rebuilt complex was combinatorially equivalent to the
 * original; a failure carries the witness configuration.
 */
VerifyGenericResult verify_generic(const PointSet& X, double rho, double delta,
                                   Flavor flavor, int trials, std::uint64_t seed);

/** Certificate for X as a representation of its own complex. */
RepresentationCertificate certify(const PointSet& X, double rho, Flavor flavor,
                                  int dim_cap = -1);

} // namespace rgc

#endif
