#include "rgc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>
#include <numeric>
#include <string>
#include <unordered_set>

namespace rgc {

namespace {

// SplitMix64 step, used for the deterministic Welzl shuffle.
std::uint64_t mix64(std::uint64_t z)
{
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

std::string row_key(const Eigen::Ref<const Eigen::RowVectorXd>& row)
{
    std::string key(sizeof(double) * row.size(), '\0');
    for (int i = 0; i < row.size(); ++i) {
        double v = row(i) + 0.0; // normalize -0.0
        std::memcpy(key.data() + i * sizeof(double), &v, sizeof(double));
    }
    return key;
}

} // namespace

PointSet::PointSet(Matrix points, bool allow_duplicates)
    : points_(std::move(points)), allow_duplicates_(allow_duplicates)
{
    validate();
}

PointSet PointSet::from_points(const std::vector<Vector>& points, bool allow_duplicates)
{
    if (points.empty())
        return PointSet(0, allow_duplicates);
    Matrix m(static_cast<int>(points.size()), points.front().size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].size() != m.cols())
            throw std::invalid_argument("PointSet: inconsistent point dimensions");
        m.row(static_cast<int>(i)) = points[i].transpose();
    }
    return PointSet(std::move(m), allow_duplicates);
}

void PointSet::validate() const
{
    if (!points_.allFinite())
        throw std::invalid_argument("PointSet: coordinates must be finite");
    if (points_.rows() > 0 && points_.cols() < 1)
        throw std::invalid_argument("PointSet: dimension must be >= 1");
    if (!allow_duplicates_) {
        std::unordered_set<std::string> seen;
        seen.reserve(static_cast<std::size_t>(points_.rows()));
        for (int i = 0; i < points_.rows(); ++i) {
            if (!seen.insert(row_key(points_.row(i))).second)
                throw std::invalid_argument("PointSet: duplicate point at row " +
                                            std::to_string(i));
        }
    }
}

PointSet PointSet::translated(const Vector& shift) const
{
    if (shift.size() != dim())
        throw std::invalid_argument("PointSet::translated: dimension mismatch");
    Matrix m = points_;
    m.rowwise() += shift.transpose();
    return PointSet(std::move(m), allow_duplicates_);
}

PointSet PointSet::scaled(double factor) const
{
    return PointSet(Matrix(points_ * factor), allow_duplicates_);
}

double PointSet::min_pairwise_distance() const
{
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < size(); ++i)
        for (int j = i + 1; j < size(); ++j)
            best = std::min(best, distance(i, j));
    return best;
}

Ball circumscribed_ball(const Matrix& points, const std::vector<int>& boundary)
{
    const int d = static_cast<int>(points.cols());
    const int k = static_cast<int>(boundary.size());
    Ball ball;
    if (k == 0) {
        ball.center = Vector::Zero(d);
        ball.radius = -1.0; // contains nothing
        return ball;
    }
    Vector p0 = points.row(boundary[0]).transpose();
    if (k == 1) {
        ball.center = p0;
        ball.radius = 0.0;
        return ball;
    }

    // Solve 2 u_i . (c - p0) = |u_i|^2 with u_i = p_i - p0, c in the
    // affine hull of the boundary points.
    Matrix u(k - 1, d);
    Vector rhs(k - 1);
    for (int i = 1; i < k; ++i) {
        u.row(i - 1) = points.row(boundary[i]) - p0.transpose();
        rhs(i - 1) = u.row(i - 1).squaredNorm();
    }
    Matrix gram = 2.0 * u * u.transpose();
    Eigen::FullPivLU<Matrix> lu(gram);
    if (lu.rank() < k - 1) {
        ball.center = Vector::Zero(d);
        ball.radius = -1.0; // affinely dependent support
        return ball;
    }
    Vector lambda = lu.solve(rhs);
    Vector offset = u.transpose() * lambda;
    ball.center = p0 + offset;
    ball.radius = offset.norm();
    return ball;
}

namespace {

Ball welzl_recurse(const Matrix& points, std::vector<int>& work, int n,
                   std::vector<int>& support, int max_support)
{
    if (n == 0 || static_cast<int>(support.size()) == max_support)
        return circumscribed_ball(points, support);

    int idx = work[n - 1];
    Ball ball = welzl_recurse(points, work, n - 1, support, max_support);
    if (ball.radius >= 0.0 && ball.contains(points.row(idx).transpose()))
        return ball;

    support.push_back(idx);
    ball = welzl_recurse(points, work, n - 1, support, max_support);
    support.pop_back();

    // Move-to-front: keep influential points near the end of the prefix.
    std::rotate(work.begin(), work.begin() + (n - 1), work.begin() + n);
    return ball;
}

} // namespace

Ball minimal_enclosing_ball(const Matrix& points, const std::vector<int>& subset)
{
    if (subset.empty())
        throw std::invalid_argument("minimal_enclosing_ball: empty input");
    const int d = static_cast<int>(points.cols());

    std::vector<int> work = subset;
    // Deterministic Fisher-Yates shuffle with a fixed SplitMix64 stream.
    std::uint64_t h = 0x9E3779B97F4A7C15ULL;
    for (std::size_t i = work.size(); i > 1; --i) {
        h += 0x9E3779B97F4A7C15ULL;
        std::uint64_t r = mix64(h);
        std::swap(work[i - 1], work[r % i]);
    }

    std::vector<int> support;
    support.reserve(static_cast<std::size_t>(d) + 1);
    Ball ball = welzl_recurse(points, work, static_cast<int>(work.size()), support, d + 1);
    if (ball.radius < 0.0) {
        // All candidate supports degenerate: duplicate-only input.
        ball.center = points.row(subset[0]).transpose();
        ball.radius = 0.0;
        for (int idx : subset)
            ball.radius = std::max(ball.radius, (points.row(idx).transpose() - ball.center).norm());
    }
    return ball;
}

Ball minimal_enclosing_ball(const PointSet& A)
{
    if (A.empty())
        throw std::invalid_argument("minimal_enclosing_ball: empty input");
    std::vector<int> all(A.size());
    std::iota(all.begin(), all.end(), 0);
    return minimal_enclosing_ball(A.data(), all);
}

double hausdorff_distance(const PointSet& X, const PointSet& Y)
{
    if (X.empty() || Y.empty())
        throw std::invalid_argument("hausdorff_distance: empty input");
    if (X.dim() != Y.dim())
        throw std::invalid_argument("hausdorff_distance: dimension mismatch");

    auto directed = [](const PointSet& A, const PointSet& B) {
        double sup = 0.0;
        for (int i = 0; i < A.size(); ++i) {
            double inf = std::numeric_limits<double>::infinity();
            for (int j = 0; j < B.size(); ++j)
                inf = std::min(inf, (A.point(i) - B.point(j)).norm());
            sup = std::max(sup, inf);
        }
        return sup;
    };
    return std::max(directed(X, Y), directed(Y, X));
}

namespace {

// Maximum bipartite matching by augmenting paths on the threshold graph
// dist(i,j) <= c. Returns true when a perfect matching exists.
bool perfect_matching_at(const Matrix& dists, double c)
{
    const int n = static_cast<int>(dists.rows());
    std::vector<int> match_right(n, -1);
    std::vector<char> visited(n, 0);

    std::vector<std::vector<int>> adj(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (dists(i, j) <= c)
                adj[i].push_back(j);

    auto augment = [&](auto&& self, int i) -> bool {
        for (int j : adj[i]) {
            if (visited[j])
                continue;
            visited[j] = 1;
            if (match_right[j] < 0 || self(self, match_right[j])) {
                match_right[j] = i;
                return true;
            }
        }
        return false;
    };

    for (int i = 0; i < n; ++i) {
        std::fill(visited.begin(), visited.end(), 0);
        if (!augment(augment, i))
            return false;
    }
    return true;
}

} // namespace

double bottleneck_set_distance(const PointSet& X, const PointSet& Y)
{
    if (X.dim() != Y.dim() && !X.empty() && !Y.empty())
        throw std::invalid_argument("bottleneck_set_distance: dimension mismatch");
    if (X.size() != Y.size())
        return std::numeric_limits<double>::infinity();
    const int n = X.size();
    if (n == 0)
        return 0.0;

    Matrix dists(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            dists(i, j) = (X.point(i) - Y.point(j)).norm();

    std::vector<double> candidates(dists.data(), dists.data() + n * n);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    // The optimum is attained at one of the pairwise distances.
    int lo = 0, hi = static_cast<int>(candidates.size()) - 1;
    while (lo < hi) {
        int mid = lo + (hi - lo) / 2;
        if (perfect_matching_at(dists, candidates[mid]))
            hi = mid;
        else
            lo = mid + 1;
    }
    return candidates[lo];
}

double unit_ball_volume(int d)
{
    if (d < 1)
        throw std::invalid_argument("unit_ball_volume: dimension must be >= 1");
    return std::pow(M_PI, d / 2.0) / std::tgamma(d / 2.0 + 1.0);
}

} // namespace rgc
