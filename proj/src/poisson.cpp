#include "rgc/poisson.hpp"

#include <cmath>
#include <stdexcept>

namespace rgc {

Box::Box(Vector lo_, Vector hi_) : lo(std::move(lo_)), hi(std::move(hi_))
{
    if (lo.size() != hi.size() || lo.size() == 0)
        throw std::invalid_argument("Box: intervals must be nonempty and consistent");
    if (!((lo.array() < hi.array()).all()))
        throw std::invalid_argument("Box: each interval needs lo < hi");
}

Box Box::cube(int d, double lo, double hi)
{
    return Box(Vector::Constant(d, lo), Vector::Constant(d, hi));
}

Box Box::bounding(const PointSet& X)
{
    if (X.empty())
        throw std::invalid_argument("Box::bounding: empty point set");
    Box b;
    b.lo = X.data().colwise().minCoeff();
    b.hi = X.data().colwise().maxCoeff();
    return b;
}

const char* to_string(SamplingMode m)
{
    return m == SamplingMode::Direct ? "direct" : "cube";
}

SamplingMode sampling_mode_from_string(const std::string& s)
{
    if (s == "direct" || s == "DIRECT")
        return SamplingMode::Direct;
    if (s == "cube" || s == "CUBE")
        return SamplingMode::Cube;
    throw std::invalid_argument("unknown sampling mode: " + s);
}

double RandomStream::normal()
{
    double u = uniform01_pos();
    double v = uniform01();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * M_PI * v);
}

Vector RandomStream::uniform_in_ball(int d, double radius)
{
    Vector dir(d);
    double norm = 0.0;
    do {
        for (int i = 0; i < d; ++i)
            dir(i) = normal();
        norm = dir.norm();
    } while (norm < 1e-300);
    double r = radius * std::pow(uniform01(), 1.0 / d);
    return dir * (r / norm);
}

long RandomStream::poisson(double lambda)
{
    if (lambda < 0.0 || !std::isfinite(lambda))
        throw std::invalid_argument("poisson: lambda must be finite and >= 0");
    long count = 0;
    double acc = -std::log(uniform01_pos());
    while (acc <= lambda) {
        ++count;
        acc += -std::log(uniform01_pos());
    }
    return count;
}

namespace {

void check_config(const PoissonConfig& cfg)
{
    if (cfg.intensity < 0.0 || !std::isfinite(cfg.intensity))
        throw std::invalid_argument("PoissonConfig: intensity must be finite and >= 0");
    if (cfg.window.dim() == 0)
        throw std::invalid_argument("PoissonConfig: window required");
}

// Stream key tags keep count draws and point draws on disjoint streams.
constexpr std::uint64_t kDirectCount = 1;
constexpr std::uint64_t kDirectPoint = 2;
constexpr std::uint64_t kCubeCount = 3;
constexpr std::uint64_t kCubePoint = 4;

} // namespace

PointSet sample_direct(const PoissonConfig& cfg)
{
    check_config(cfg);
    const int d = cfg.window.dim();
    RandomStream count_stream(cfg.seed, kDirectCount);
    long n = count_stream.poisson(cfg.intensity * cfg.window.volume());

    Matrix pts(n, d);
    for (long j = 0; j < n; ++j) {
        RandomStream ps(cfg.seed, kDirectPoint, static_cast<std::uint64_t>(j));
        for (int a = 0; a < d; ++a)
            pts(j, a) = ps.uniform(cfg.window.lo(a), cfg.window.hi(a));
    }
    return PointSet(std::move(pts), /*allow_duplicates=*/true);
}

PointSet sample_cube_construction(const PoissonConfig& cfg)
{
    check_config(cfg);
    const int d = cfg.window.dim();
    const Box& w = cfg.window;

    // Unit lattice anchored at the window's lower corner; cubes overlapping
    // the boundary are sampled in full and clipped afterwards.
    std::vector<long> cells(d);
    for (int a = 0; a < d; ++a)
        cells[a] = static_cast<long>(std::ceil(w.hi(a) - w.lo(a)));

    std::vector<Vector> kept;
    std::vector<long> v(d, 0);
    while (true) {
        // Key the cube by its lattice coordinates.
        std::uint64_t cube_key = 0;
        for (int a = 0; a < d; ++a)
            cube_key = cube_key * 0x100000001B3ULL + static_cast<std::uint64_t>(v[a] + 1);
        RandomStream cube_count(cfg.seed, kCubeCount, cube_key);
        long p_v = cube_count.poisson(cfg.intensity);
        for (long j = 0; j < p_v; ++j) {
            RandomStream ps(cfg.seed, kCubePoint, cube_key, static_cast<std::uint64_t>(j));
            Vector x(d);
            for (int a = 0; a < d; ++a)
                x(a) = w.lo(a) + static_cast<double>(v[a]) + ps.uniform01();
            if (w.contains(x))
                kept.push_back(std::move(x));
        }

        int a = 0;
        while (a < d && v[a] == cells[a] - 1)
            v[a++] = 0;
        if (a == d)
            break;
        ++v[a];
    }

    Matrix pts(static_cast<long>(kept.size()), d);
    for (std::size_t i = 0; i < kept.size(); ++i)
        pts.row(static_cast<long>(i)) = kept[i].transpose();
    return PointSet(std::move(pts), /*allow_duplicates=*/true);
}

PointSet sample(const PoissonConfig& cfg)
{
    return cfg.mode == SamplingMode::Direct ? sample_direct(cfg)
                                            : sample_cube_construction(cfg);
}

} // namespace rgc
