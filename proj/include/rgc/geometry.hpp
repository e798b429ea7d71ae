#ifndef RGC_GEOMETRY_HPP
#define RGC_GEOMETRY_HPP

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

#include "rgc/tolerance.hpp"

namespace rgc {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/**
 * A finite list of d-dimensional points, stored as the rows of a dense
 * matrix. All points share the same dimension and every coordinate must
 * be finite. Duplicate points are rejected unless explicitly allowed
 * (random samples may keep them; file input defaults to rejecting them).
 */
class PointSet {
public:
    PointSet() : points_(0, 0), allow_duplicates_(false) {}

    explicit PointSet(int dim, bool allow_duplicates = false)
        : points_(0, dim), allow_duplicates_(allow_duplicates)
    {
        if (dim < 0)
            throw std::invalid_argument("PointSet: dimension must be >= 0");
    }

    explicit PointSet(Matrix points, bool allow_duplicates = false);

    static PointSet from_points(const std::vector<Vector>& points,
                                bool allow_duplicates = false);

    int dim() const { return static_cast<int>(points_.cols()); }
    int size() const { return static_cast<int>(points_.rows()); }
    bool empty() const { return points_.rows() == 0; }
    bool allows_duplicates() const { return allow_duplicates_; }

    /** Row view of the i-th point. */
    Eigen::MatrixXd::ConstRowXpr point(int i) const { return points_.row(i); }

    const Matrix& data() const { return points_; }

    /** Distance between points i and j of this set. */
    double distance(int i, int j) const
    {
        return (points_.row(i) - points_.row(j)).norm();
    }

    PointSet translated(const Vector& shift) const;
    PointSet scaled(double factor) const;

    /** Smallest pairwise distance; +infinity for fewer than two points. */
    double min_pairwise_distance() const;

private:
    void validate() const;

    Matrix points_;
    bool allow_duplicates_;
};

/** Center and radius of a ball, as produced by minimal enclosing ball queries. */
struct Ball {
    Vector center;
    double radius = 0.0;

    bool contains(const Eigen::Ref<const Vector>& p) const
    {
        return approx_leq((p - center).norm(), radius);
    }
};

/** Euclidean distance between two points of equal dimension. */
template <typename DerivedA, typename DerivedB>
double euclidean_distance(const Eigen::MatrixBase<DerivedA>& a,
                          const Eigen::MatrixBase<DerivedB>& b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("euclidean_distance: dimension mismatch");
    return (a.derived().template cast<double>() -
            b.derived().template cast<double>())
        .norm();
}

/**
 * Minimal enclosing ball of a nonempty point set, by Welzl's randomized
 * incremental algorithm with move-to-front and exact solves on support
 * sets of at most d+1 points. The internal shuffle is seeded with a
 * fixed constant, so the result is deterministic for a fixed input
 * ordering.
 */
Ball minimal_enclosing_ball(const PointSet& A);

/** Same, restricted to the given row indices of a point matrix. */
Ball minimal_enclosing_ball(const Matrix& points, const std::vector<int>& subset);

/**
 * Smallest ball having all of `boundary` on its sphere, with center in
 * their affine hull. Returns radius < 0 when the points are affinely
 * dependent and no such ball is determined.
 */
Ball circumscribed_ball(const Matrix& points, const std::vector<int>& boundary);

/** Classical Hausdorff distance between two nonempty point sets. */
double hausdorff_distance(const PointSet& X, const PointSet& Y);

/**
 * Bottleneck distance between point sets: the minimum over bijections
 * of the largest matched-pair distance, +infinity when the cardinalities
 * differ. Exact: binary search over the sorted pairwise distances with a
 * bipartite perfect-matching feasibility test at each threshold.
 */
double bottleneck_set_distance(const PointSet& X, const PointSet& Y);

/** Volume of the d-dimensional unit ball, pi^(d/2) / Gamma(d/2 + 1). */
double unit_ball_volume(int d);

} // namespace rgc

#endif
