#ifndef RGC_TOLERANCE_HPP
#define RGC_TOLERANCE_HPP

#include <algorithm>
#include <cmath>

namespace rgc {

// Shared floating tolerance model for every geometric comparison in the
// library: relative 1e-9 with an absolute floor of 1e-12. Face tests,
// ball containment and threshold-degeneracy detection all go through
// these helpers so the builders and the genericity margins agree on
// what "equal" means.
inline constexpr double kRelTol = 1e-9;
inline constexpr double kAbsTol = 1e-12;

inline double tolerance_at(double scale)
{
    return std::max(kAbsTol, kRelTol * std::abs(scale));
}

inline double tolerance_at(double a, double b)
{
    return std::max(kAbsTol, kRelTol * std::max(std::abs(a), std::abs(b)));
}

/** a <= b up to the shared tolerance. */
inline bool approx_leq(double a, double b)
{
    return a <= b + tolerance_at(a, b);
}

/** a == b up to the shared tolerance. */
inline bool approx_eq(double a, double b)
{
    return std::abs(a - b) <= tolerance_at(a, b);
}

/** a < b by more than the shared tolerance. */
inline bool definitely_less(double a, double b)
{
    return a < b - tolerance_at(a, b);
}

/** a > b by more than the shared tolerance. */
inline bool definitely_greater(double a, double b)
{
    return a > b + tolerance_at(a, b);
}

} // namespace rgc

#endif
