#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "oracles.hpp"
#include "rgc/genericity.hpp"
#include "rgc/poisson.hpp"

using namespace rgc;

namespace {

PointSet make_points(std::initializer_list<std::initializer_list<double>> rows)
{
    std::vector<Vector> points;
    for (const auto& row : rows) {
        Vector p(static_cast<int>(row.size()));
        int i = 0;
        for (double x : row)
            p(i++) = x;
        points.push_back(std::move(p));
    }
    return PointSet::from_points(points);
}

PointSet seven_points()
{
    return make_points({{-1, 2}, {-2, 0}, {0, 0}, {2, 3}, {0, 3}, {1.2, 2.2}, {1.5, 1.5}});
}

} // namespace

TEST_CASE("is_representation")
{
    PointSet X = seven_points();
    GeometricComplex G = cech_complex(X, 2.4);

    SECTION("self representation, relabeled")
    {
        SimplicialComplex relabeled = SimplicialComplex::from_maximal_faces(
            [&] {
                std::vector<Face> shifted;
                for (const Face& f : G.complex.maximal_faces()) {
                    Face g;
                    for (int v : f)
                        g.push_back(v + 100);
                    shifted.push_back(g);
                }
                return shifted;
            }(),
            G.complex.dim_cap());
        CHECK(is_representation(X, 2.4, relabeled, Flavor::Cech).equivalent);
    }
    SECTION("wrong target")
    {
        PointSet square = make_points({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
        SimplicialComplex triangle =
            SimplicialComplex::from_maximal_faces({{0, 1}, {1, 2}, {0, 2}});
        CHECK_FALSE(is_representation(square, 1.0, triangle, Flavor::Rips).equivalent);
    }
    SECTION("similarity invariance")
    {
        SimplicialComplex target = G.complex;
        PointSet half = X.scaled(0.5);
        CHECK(is_representation(half, 1.2, target, Flavor::Cech).equivalent);
    }
}

TEST_CASE("genericity margin examples")
{
    SECTION("two points, cech")
    {
        PointSet X = make_points({{0, 0}, {1, 0}});
        // Subsets: singletons (|0 - 1.2|) and the pair (|0.5 - 1.2|).
        CHECK(genericity_margin(X, 2.4, Flavor::Cech) == Catch::Approx(0.7));
    }
    SECTION("pair at exactly the threshold")
    {
        PointSet X = make_points({{0, 0}, {2, 0}});
        CHECK(genericity_margin(X, 2.0, Flavor::Cech) == 0.0);
        CHECK(genericity_margin(X, 2.0, Flavor::Rips) == 0.0);
    }
    SECTION("rips margin over pairs")
    {
        PointSet X = make_points({{0, 0}, {1, 0}, {0, 2.5}});
        // Pair distances 1, 2.5, sqrt(1 + 6.25); rho = 2.
        double expected = std::min({std::abs(1.0 - 2.0), std::abs(2.5 - 2.0),
                                    std::abs(std::sqrt(7.25) - 2.0)});
        CHECK(genericity_margin(X, 2.0, Flavor::Rips) == Catch::Approx(expected));
    }
    SECTION("seven points against the all-subsets oracle")
    {
        PointSet X = seven_points();
        double margin = genericity_margin(X, 2.4, Flavor::Cech);
        CHECK(margin <= 0.05 + 1e-9); // |1.25 - 1.2| from the fat triangle
        CHECK(margin == Catch::Approx(oracle::margin_bruteforce(X, 2.4, Flavor::Cech))
                            .margin(1e-9));
    }
}

TEST_CASE("genericity margin matches the oracle on random sets")
{
    RandomStream stream(7117);
    for (int trial = 0; trial < 60; ++trial) {
        int d = 2 + static_cast<int>(stream() % 2);
        int n = 1 + static_cast<int>(stream() % 7);
        PointSet X = oracle::random_points(stream, n, Box::cube(d, 0.0, 1.0));
        double rho = stream.uniform(0.2, 1.0);
        for (Flavor flavor : {Flavor::Rips, Flavor::Cech}) {
            double fast = genericity_margin(X, rho, flavor);
            double slow = oracle::margin_bruteforce(X, rho, flavor);
            INFO("trial " << trial << " flavor " << to_string(flavor));
            if (std::isinf(slow))
                CHECK(std::isinf(fast));
            else
                CHECK(fast == Catch::Approx(slow).margin(1e-9));
        }
    }
}

TEST_CASE("make_generic leaves generic inputs alone")
{
    PointSet X = make_points({{0, 0}, {1, 0}});
    MakeGenericResult r = make_generic(X, 2.4, Flavor::Cech);
    CHECK_FALSE(r.rescaled);
    CHECK(r.margin == Catch::Approx(0.7));
    CHECK((r.points.data() - X.data()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("make_generic rescales the collinear threshold fixture")
{
    // Distances 2 tau, 2 tau, 4 tau at tau = 1: the far pair and the
    // triple are non-faces with radius 2 tau, so delta' = tau.
    PointSet X = make_points({{0, 0}, {2, 0}, {4, 0}});
    const double rho = 2.0;
    CHECK(genericity_margin(X, rho, Flavor::Cech) == 0.0);

    MakeGenericResult r = make_generic(X, rho, Flavor::Cech);
    CHECK(r.rescaled);
    CHECK(r.scale == Catch::Approx(10.0 / 19.0));
    CHECK(r.margin > 0.0);

    SimplicialComplex before = cech_complex(X, rho).complex;
    SimplicialComplex after = cech_complex(r.points, rho).complex;
    CHECK(combinatorially_equivalent(before, after).equivalent);
    CHECK(oracle::equivalent_bruteforce(before, after));

    // Idempotent: the rescaled set is already generic.
    MakeGenericResult again = make_generic(r.points, rho, Flavor::Cech);
    CHECK_FALSE(again.rescaled);
    CHECK((again.points.data() - r.points.data()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("make_generic complete-complex fallback")
{
    // Both subsets are faces (pair exactly at threshold): no non-face
    // exists, delta' falls back to tau and the shrink keeps everything.
    PointSet X = make_points({{0, 0}, {2, 0}});
    MakeGenericResult r = make_generic(X, 2.0, Flavor::Cech);
    CHECK(r.rescaled);
    CHECK(r.scale == Catch::Approx(1.0 / 1.9));
    CHECK(r.margin > 0.0);
    SimplicialComplex before = cech_complex(X, 2.0).complex;
    SimplicialComplex after = cech_complex(r.points, 2.0).complex;
    CHECK(combinatorially_equivalent(before, after).equivalent);

    // Fewer than two points: nothing to separate.
    PointSet one = make_points({{5, 5}});
    CHECK_FALSE(make_generic(one, 1.0, Flavor::Cech).rescaled);
}

TEST_CASE("verify_generic")
{
    SECTION("margin/2 perturbations always pass")
    {
        PointSet X = seven_points();
        double m = genericity_margin(X, 2.4, Flavor::Cech);
        REQUIRE(m > 0.0);
        VerifyGenericResult r = verify_generic(X, 2.4, m / 2.0, Flavor::Cech, 100, 3);
        CHECK(r.ok);
        CHECK(r.trials_run == 100);
    }
    SECTION("threshold pair fails quickly")
    {
        PointSet X = make_points({{0, 0}, {2, 0}});
        VerifyGenericResult r = verify_generic(X, 2.0, 0.05, Flavor::Cech, 200, 4);
        CHECK_FALSE(r.ok);
        REQUIRE(r.counterexample.has_value());
        SimplicialComplex base = cech_complex(X, 2.0).complex;
        SimplicialComplex broken = cech_complex(*r.counterexample, 2.0).complex;
        CHECK_FALSE(combinatorially_equivalent(base, broken).equivalent);
    }
    SECTION("delta far beyond the margin fails with a witness")
    {
        PointSet X = make_points({{0, 0}, {1.0, 0}, {0.5, 0.9}});
        double m = genericity_margin(X, 1.2, Flavor::Rips);
        REQUIRE(m > 0.0);
        VerifyGenericResult r =
            verify_generic(X, 1.2, 10.0 * m + 0.5, Flavor::Rips, 300, 5);
        CHECK_FALSE(r.ok);
        CHECK(r.counterexample.has_value());
    }
}

TEST_CASE("case-1 stability under bottleneck m/2")
{
    RandomStream stream(90210);
    int done = 0;
    while (done < 40) {
        int d = 2 + static_cast<int>(stream() % 2);
        int n = 2 + static_cast<int>(stream() % 6);
        PointSet X = oracle::random_points(stream, n, Box::cube(d, 0.0, 1.0));
        double rho = stream.uniform(0.2, 0.9);
        for (Flavor flavor : {Flavor::Rips, Flavor::Cech}) {
            double m = genericity_margin(X, rho, flavor);
            if (!(m > 0.0) || std::isinf(m))
                continue;
            SimplicialComplex base = flavor == Flavor::Rips
                                         ? rips_complex(X, rho).complex
                                         : cech_complex(X, rho).complex;
            Matrix moved = X.data();
            for (int i = 0; i < n; ++i)
                moved.row(i) += stream.uniform_in_ball(d, m / 2.0).transpose();
            PointSet Y(moved, true);
            CHECK(bottleneck_set_distance(X, Y) <= m / 2.0 + 1e-12);
            SimplicialComplex rebuilt = flavor == Flavor::Rips
                                            ? rips_complex(Y, rho).complex
                                            : cech_complex(Y, rho).complex;
            // The matching bijection is the identity on labels.
            CHECK(base == rebuilt);
            ++done;
        }
    }
}

TEST_CASE("scale consistency of both face tests")
{
    RandomStream stream(808);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 2 + static_cast<int>(stream() % 6);
        PointSet X = oracle::random_points(stream, n, Box::cube(2, 0.0, 1.0));
        double rho = stream.uniform(0.2, 0.9);
        double c = stream.uniform(0.3, 2.5);
        for (Flavor flavor : {Flavor::Rips, Flavor::Cech}) {
            SimplicialComplex a = flavor == Flavor::Rips
                                      ? rips_complex(X, rho).complex
                                      : cech_complex(X, rho).complex;
            PointSet Xc = X.scaled(c);
            SimplicialComplex b = flavor == Flavor::Rips
                                      ? rips_complex(Xc, c * rho).complex
                                      : cech_complex(Xc, c * rho).complex;
            CHECK(combinatorially_equivalent(a, b).equivalent);
        }
    }
}

TEST_CASE("certificate carries margin and witness")
{
    PointSet X = seven_points();
    RepresentationCertificate cert = certify(X, 2.4, Flavor::Cech);
    CHECK(cert.margin == Catch::Approx(genericity_margin(X, 2.4, Flavor::Cech)));
    CHECK(cert.witness.size() == 7);
    CHECK(is_representation(X, 2.4, cert.target, Flavor::Cech).equivalent);
}
