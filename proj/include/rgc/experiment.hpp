#ifndef RGC_EXPERIMENT_HPP
#define RGC_EXPERIMENT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rgc/complex.hpp"
#include "rgc/detection.hpp"
#include "rgc/genericity.hpp"
#include "rgc/homology.hpp"
#include "rgc/poisson.hpp"

namespace rgc {

using json = nlohmann::ordered_json;

/**
 * Lower bound for the probability that every delta-ball around the
 * n_vertices target vertices catches exactly one sample point and the
 * rest of the inner region stays empty:
 * (t kappa_d delta^d)^n_vertices * exp(-t vol_WI).
 */
double predict_cA(double t, int d, double delta, int n_vertices, double vol_WI);

/** Probability that the shell between the outer and inner regions is
 *  empty: exp(-t (vol_WO - vol_WI)). */
double predict_cB(double t, double vol_WO, double vol_WI);

/**
 * Exact volume of an axis-aligned box dilated by a radius-r ball
 * (Minkowski sum), via the Steiner decomposition
 * sum_k sigma_{d-k}(sides) kappa_k r^k. Degenerate (zero-width) sides
 * are allowed.
 */
double dilated_box_volume(const Box& box, double r);

/** Pool-adjacent-violators fit: nondecreasing least squares. */
std::vector<double> isotonic_fit(const std::vector<double>& y,
                                 const std::vector<double>& weights);

/** Thread count: explicit request, else RGC_THREADS, else hardware. */
int resolve_threads(int requested);

/**
 * Structured record of a Monte Carlo run. Serialization is a pure
 * function of (config, seed); wall-clock time is carried for diagnostics
 * but deliberately excluded from to_json so reruns are byte-identical.
 */
struct ExperimentReport {
    int schema_version = 1;
    std::string kind;
    json config;
    long trials = 0;
    json results;
    double wall_seconds = 0.0;
};

json to_json(const ExperimentReport& report);

struct EventProbabilityParams {
    PointSet representation;
    std::optional<SimplicialComplex> target; // default: built from representation
    double rho = 1.0;
    Flavor flavor = Flavor::Cech;
    int dim_cap = -1;
    double delta = 0.1;
    double intensity = 1.0;
    long trials = 1000;
    std::uint64_t seed = 0;
    int threads = 0;
};

/**
 * Samples the outer region around the representation and measures the
 * empirical frequencies of the one-point-per-ball event, the empty-shell
 * event and the built-complex-equivalent event against their closed
 * forms. Requires delta <= genericity margin and delta <= half the
 * minimum inter-vertex distance.
 */
ExperimentReport estimate_event_probabilities(const EventProbabilityParams& params);

struct IsolationParams {
    PointSet representation;
    std::optional<SimplicialComplex> target;
    double rho = 1.0;
    Flavor flavor = Flavor::Cech;
    int dim_cap = -1;
    double intensity = 1.0;
    Box window;
    SamplingMode mode = SamplingMode::Direct;
    long trials = 1000;
    std::uint64_t seed = 0;
    int threads = 0;
};

/**
 * Counts interior-certified isolated occurrences of the target per
 * sampled window and reports the per-cell rate against the c_A * c_B
 * lower bound. The window must fit at least one lattice cell of side
 * gamma = beta + 2 (delta + rho).
 */
ExperimentReport run_isolation_experiment(const IsolationParams& params);

struct PendantParams {
    PointSet representation;
    std::optional<SimplicialComplex> target;
    double rho = 1.0;
    Flavor flavor = Flavor::Rips;
    int dim_cap = -1;
    double intensity = 1.0;
    Box window;
    SamplingMode mode = SamplingMode::Direct;
    int axis = 0;
    long trials = 200;
    std::uint64_t seed = 0;
    int threads = 0;
};

/**
 * Per trial: sample, build, pick the crossing component as the host
 * (falling back to the largest component, flagged) and count pendant
 * occurrences of the target hanging off it by a single bridge.
 */
ExperimentReport run_pendant_experiment(const PendantParams& params);

struct PercolationParams {
    double rho = 1.0;
    std::vector<double> t_values;
    std::vector<double> window_sizes;
    int dim = 2;
    int axis = 0;
    long trials = 200;
    std::uint64_t seed = 0;
    int threads = 0;
};

/**
 * Crossing-probability curves over (t, window) with isotonic smoothing,
 * an interpolated t at which the largest window's smoothed curve passes
 * 1/2, and a bootstrap confidence interval for it.
 */
ExperimentReport percolation_probe(const PercolationParams& params);

} // namespace rgc

#endif
