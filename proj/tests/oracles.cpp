#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "rgc/tolerance.hpp"

namespace rgc::oracle {

namespace {

// Equal-distance solve written independently of the library's version:
// least-squares on the doubled system A c = b with A_i = 2 (p_i - p_0),
// b_i = |p_i|^2 - |p_0|^2, restricted to the affine hull via the
// pseudoinverse.
Ball ball_through(const Matrix& points, const std::vector<int>& boundary)
{
    Ball ball;
    const int k = static_cast<int>(boundary.size());
    const int d = static_cast<int>(points.cols());
    if (k == 1) {
        ball.center = points.row(boundary[0]).transpose();
        ball.radius = 0.0;
        return ball;
    }
    Matrix A(k - 1, d);
    Vector b(k - 1);
    Vector p0 = points.row(boundary[0]).transpose();
    for (int i = 1; i < k; ++i) {
        Vector pi = points.row(boundary[i]).transpose();
        A.row(i - 1) = 2.0 * (pi - p0).transpose();
        b(i - 1) = (pi - p0).squaredNorm();
    }
    Eigen::JacobiSVD<Matrix> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(1e-10);
    if (svd.rank() < k - 1) {
        ball.radius = -1.0;
        return ball;
    }
    // Minimum-norm offset lies in span(p_i - p0): the circumcenter of the
    // boundary points within their affine hull.
    Vector offset = svd.solve(b);
    ball.center = p0 + offset;
    ball.radius = offset.norm();
    // Reject inconsistent systems: all boundary points must be equidistant
    // from the minimum-norm center (itself the circumcenter in the hull).
    for (int i = 1; i < k; ++i) {
        double ri = (ball.center - points.row(boundary[i]).transpose()).norm();
        if (std::abs(ri - ball.radius) > 1e-6 * std::max(1.0, ball.radius)) {
            ball.radius = -1.0;
            return ball;
        }
    }
    return ball;
}

void subsets_up_to(int n, int max_size,
                   const std::function<void(const std::vector<int>&)>& fn)
{
    std::vector<int> subset;
    auto recurse = [&](auto&& self, int start) -> void {
        for (int i = start; i < n; ++i) {
            subset.push_back(i);
            fn(subset);
            if (static_cast<int>(subset.size()) < max_size)
                self(self, i + 1);
            subset.pop_back();
        }
    };
    recurse(recurse, 0);
}

} // namespace

Ball meb_bruteforce(const Matrix& points, const std::vector<int>& subset)
{
    const int d = static_cast<int>(points.cols());
    Ball best;
    best.radius = std::numeric_limits<double>::infinity();

    const int n = static_cast<int>(subset.size());
    subsets_up_to(n, d + 1, [&](const std::vector<int>& local) {
        std::vector<int> boundary;
        boundary.reserve(local.size());
        for (int i : local)
            boundary.push_back(subset[i]);
        Ball cand = ball_through(points, boundary);
        if (cand.radius < 0.0 || cand.radius >= best.radius)
            return;
        for (int idx : subset) {
            if (!cand.contains(points.row(idx).transpose()))
                return;
        }
        best = cand;
    });
    return best;
}

Ball meb_bruteforce(const PointSet& A)
{
    std::vector<int> all(A.size());
    std::iota(all.begin(), all.end(), 0);
    return meb_bruteforce(A.data(), all);
}

double bottleneck_bruteforce(const PointSet& X, const PointSet& Y)
{
    if (X.size() != Y.size())
        return std::numeric_limits<double>::infinity();
    const int n = X.size();
    if (n == 0)
        return 0.0;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
        double worst = 0.0;
        for (int i = 0; i < n; ++i)
            worst = std::max(worst, (X.point(i) - Y.point(perm[i])).norm());
        best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

namespace {

template <typename Predicate>
SimplicialComplex subsets_complex(const PointSet& X, int dim_cap, Predicate&& is_face)
{
    SimplicialComplex K(dim_cap);
    subsets_up_to(X.size(), dim_cap + 1, [&](const std::vector<int>& subset) {
        if (is_face(subset))
            K.add_face_unchecked(Face(subset.begin(), subset.end()));
    });
    return K;
}

} // namespace

SimplicialComplex rips_bruteforce(const PointSet& X, double rho, int dim_cap)
{
    return subsets_complex(X, dim_cap, [&](const std::vector<int>& subset) {
        for (std::size_t i = 0; i < subset.size(); ++i)
            for (std::size_t j = i + 1; j < subset.size(); ++j)
                if (!approx_leq(X.distance(subset[i], subset[j]), rho))
                    return false;
        return true;
    });
}

SimplicialComplex cech_bruteforce(const PointSet& X, double rho, int dim_cap)
{
    return subsets_complex(X, dim_cap, [&](const std::vector<int>& subset) {
        return approx_leq(meb_bruteforce(X.data(), subset).radius, rho / 2.0);
    });
}

bool equivalent_bruteforce(const SimplicialComplex& K, const SimplicialComplex& L)
{
    std::vector<int> kv = K.vertices();
    std::vector<int> lv = L.vertices();
    if (kv.size() != lv.size())
        return false;
    if (K.f_vector() != L.f_vector())
        return false;
    if (kv.empty())
        return true;

    std::vector<int> perm(lv.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (int k = 0; k <= K.dimension() && ok; ++k) {
            for (const Face& f : K.faces(k)) {
                Face g;
                g.reserve(f.size());
                for (int v : f) {
                    auto it = std::lower_bound(kv.begin(), kv.end(), v);
                    g.push_back(lv[perm[it - kv.begin()]]);
                }
                std::sort(g.begin(), g.end());
                if (!L.has_face(g)) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok)
            return true; // equal f-vectors make the face map bijective
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

double margin_bruteforce(const PointSet& X, double rho, Flavor flavor)
{
    double margin = std::numeric_limits<double>::infinity();
    if (flavor == Flavor::Rips) {
        for (int i = 0; i < X.size(); ++i)
            for (int j = i + 1; j < X.size(); ++j)
                margin = std::min(margin, std::abs(X.distance(i, j) - rho));
        return margin;
    }
    const double tau = rho / 2.0;
    subsets_up_to(X.size(), X.size(), [&](const std::vector<int>& subset) {
        margin = std::min(
            margin, std::abs(meb_bruteforce(X.data(), subset).radius - tau));
    });
    return margin;
}

PointSet random_points(RandomStream& stream, int n, const Box& box)
{
    Matrix pts(n, box.dim());
    for (int i = 0; i < n; ++i)
        for (int a = 0; a < box.dim(); ++a)
            pts(i, a) = stream.uniform(box.lo(a), box.hi(a));
    return PointSet(std::move(pts), true);
}

long isolated_edge_count_naive(const PointSet& X, double rho, const Box& window)
{
    const int n = X.size();
    long count = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (!approx_leq(X.distance(i, j), rho))
                continue;
            if (window.boundary_distance(X.point(i).transpose()) < rho ||
                window.boundary_distance(X.point(j).transpose()) < rho)
                continue;
            bool lonely = true;
            for (int k = 0; k < n && lonely; ++k) {
                if (k == i || k == j)
                    continue;
                if (approx_leq(X.distance(i, k), rho) || approx_leq(X.distance(j, k), rho))
                    lonely = false;
            }
            if (lonely)
                ++count;
        }
    }
    return count;
}

} // namespace rgc::oracle
