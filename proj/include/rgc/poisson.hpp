#ifndef RGC_POISSON_HPP
#define RGC_POISSON_HPP

#include <cstdint>
#include <string>

#include "rgc/geometry.hpp"

namespace rgc {

/** Axis-aligned box: the product of closed intervals [lo_i, hi_i]. */
struct Box {
    Vector lo;
    Vector hi;

    Box() = default;
    Box(Vector lo_, Vector hi_);

    static Box cube(int d, double lo, double hi);

    int dim() const { return static_cast<int>(lo.size()); }
    double volume() const { return (hi - lo).prod(); }

    bool contains(const Eigen::Ref<const Vector>& p) const
    {
        return (p.array() >= lo.array()).all() && (p.array() <= hi.array()).all();
    }

    /** Smallest per-axis distance from an interior point to the boundary. */
    double boundary_distance(const Eigen::Ref<const Vector>& p) const
    {
        return std::min((p - lo).minCoeff(), (hi - p).minCoeff());
    }

    /** Euclidean distance from p to the box (0 inside). */
    double exterior_distance(const Eigen::Ref<const Vector>& p) const
    {
        Vector excess = (lo - p).cwiseMax(p - hi).cwiseMax(0.0);
        return excess.norm();
    }

    /** Bounding box of this box dilated by a radius-r ball. */
    Box axis_dilated(double r) const
    {
        return Box(lo.array() - r, hi.array() + r);
    }

    /** Bounding box of a point set (degenerate extents allowed). */
    static Box bounding(const PointSet& X);
};

enum class SamplingMode { Direct, Cube };

const char* to_string(SamplingMode m);
SamplingMode sampling_mode_from_string(const std::string& s);

struct PoissonConfig {
    double intensity = 1.0; // points per unit volume
    Box window;
    std::uint64_t seed = 0;
    SamplingMode mode = SamplingMode::Direct;
};

/**
 * Counter-based random stream: the state is a SplitMix64 walk whose
 * start is keyed by (seed, key...). Streams with distinct keys are
 * independent for practical purposes, so sampling is order-independent
 * over cubes, points and trials.
 */
class RandomStream {
public:
    using result_type = std::uint64_t;

    explicit RandomStream(std::uint64_t seed) : state_(mix(seed + kGamma)) {}

    template <typename... Keys>
    RandomStream(std::uint64_t seed, Keys... keys) : RandomStream(seed)
    {
        (feed(static_cast<std::uint64_t>(keys)), ...);
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }

    result_type operator()()
    {
        state_ += kGamma;
        return mix(state_);
    }

    /** Uniform double in [0, 1). */
    double uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /** Uniform double in (0, 1]. */
    double uniform01_pos()
    {
        return static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53;
    }

    double uniform(double a, double b) { return a + uniform01() * (b - a); }

    /** Standard normal via Box-Muller. */
    double normal();

    /** Uniform point in the open ball of the given radius about 0. */
    Vector uniform_in_ball(int d, double radius);

    /**
     * Poisson(lambda) count by the exponential-race method: the number
     * of unit-exponential arrivals inside [0, lambda]. Exact and fully
     * deterministic across platforms; O(lambda) draws.
     */
    long poisson(double lambda);

private:
    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

    static std::uint64_t mix(std::uint64_t z)
    {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ULL;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBULL;
        z ^= z >> 31;
        return z;
    }

    void feed(std::uint64_t key) { state_ = mix(state_ ^ mix(key + kGamma)); }

    std::uint64_t state_;
};

/** Derives a child seed for keyed parallel substreams. */
template <typename... Keys>
std::uint64_t derive_seed(std::uint64_t seed, Keys... keys)
{
    RandomStream s(seed, keys...);
    return s();
}

/**
 * Poisson sample by the direct recipe: N ~ Poisson(t * volume), then N
 * i.i.d. uniform points in the window. Deterministic given the seed;
 * intensity 0 yields the empty configuration.
 */
PointSet sample_direct(const PoissonConfig& cfg);

/**
 * Poisson sample via the unit-cube construction: the window is covered
 * by unit lattice cubes anchored at its lower corner, each cube receives
 * an independent Poisson(t) number of uniform points, and points falling
 * outside the window are discarded. Per-cube streams are keyed by
 * (seed, cube), so the result does not depend on cube iteration order.
 */
PointSet sample_cube_construction(const PoissonConfig& cfg);

/** Dispatch on cfg.mode. */
PointSet sample(const PoissonConfig& cfg);

} // namespace rgc

#endif
