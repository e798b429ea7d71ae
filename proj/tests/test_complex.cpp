#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "oracles.hpp"
#include "rgc/complex.hpp"
#include "rgc/io.hpp"
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

// The 7-point plane configuration with two filled triangles, a connecting
// path and a dense 4-point cluster; stressed throughout these tests.
PointSet seven_points()
{
    return make_points({{-1, 2}, {-2, 0}, {0, 0}, {2, 3}, {0, 3}, {1.2, 2.2}, {1.5, 1.5}});
}

std::vector<Face> all_faces(const SimplicialComplex& K)
{
    std::vector<Face> out;
    for (int k = 0; k <= K.dimension(); ++k)
        for (const Face& f : K.faces(k))
            out.push_back(f);
    return out;
}

bool subcomplex_of(const SimplicialComplex& A, const SimplicialComplex& B)
{
    for (const Face& f : all_faces(A))
        if (!B.has_face(f))
            return false;
    return true;
}

} // namespace

TEST_CASE("rips complex on the unit square")
{
    PointSet X = make_points({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    GeometricComplex G = rips_complex(X, 1.0, 2);
    CHECK(G.complex.face_count(0) == 4);
    CHECK(G.complex.face_count(1) == 4); // diagonals sqrt(2) > 1
    CHECK(G.complex.face_count(2) == 0);
    CHECK(membership_consistent(G));
}

TEST_CASE("rips complex on the seven-point configuration")
{
    GeometricComplex G = rips_complex(seven_points(), 2.4);
    CHECK(G.complex.f_vector() == std::vector<long>{7, 12, 6, 1});
    CHECK(G.complex.has_face(Face{0, 1, 2}));
    CHECK(membership_consistent(G));
}

TEST_CASE("two points beyond rho stay disconnected")
{
    PointSet X = make_points({{0, 0}, {1.0 + 1e-6, 0}});
    GeometricComplex G = rips_complex(X, 1.0);
    CHECK(G.complex.face_count(0) == 2);
    CHECK(G.complex.face_count(1) == 0);
}

TEST_CASE("cech complex drops the fat triangle")
{
    GeometricComplex G = cech_complex(seven_points(), 2.4);
    CHECK(G.complex.f_vector() == std::vector<long>{7, 12, 5, 1});
    CHECK_FALSE(G.complex.has_face(Face{0, 1, 2}));
    CHECK(G.complex.has_face(Face{0, 1}));
    CHECK(G.complex.has_face(Face{0, 2}));
    CHECK(G.complex.has_face(Face{1, 2}));
    CHECK(membership_consistent(G));
}

TEST_CASE("cech edge at exactly rho is closed")
{
    PointSet X = make_points({{0, 0}, {2, 0}});
    GeometricComplex G = cech_complex(X, 2.0);
    CHECK(G.complex.has_face(Face{0, 1}));
}

TEST_CASE("rips and cech share their 1-skeleton")
{
    RandomStream stream(99);
    for (int trial = 0; trial < 40; ++trial) {
        int d = 2 + static_cast<int>(stream() % 2);
        int n = 2 + static_cast<int>(stream() % 14);
        PointSet X = oracle::random_points(stream, n, Box::cube(d, 0.0, 1.0));
        double rho = stream.uniform(0.1, 0.8);
        GeometricComplex R = rips_complex(X, rho, d + 1);
        GeometricComplex C = cech_complex(X, rho, d + 1);
        CHECK(R.complex.skeleton(1) == C.complex.skeleton(1));
    }
}

TEST_CASE("sandwich: cech(rho) inside rips(rho) inside cech(2 rho)")
{
    RandomStream stream(1234);
    for (int trial = 0; trial < 60; ++trial) {
        int d = 2 + static_cast<int>(stream() % 2);
        int n = 2 + static_cast<int>(stream() % 14);
        PointSet X = oracle::random_points(stream, n, Box::cube(d, 0.0, 1.0));
        double rho = stream.uniform(0.1, 0.6);
        int cap = d + 1;
        GeometricComplex C1 = cech_complex(X, rho, cap);
        GeometricComplex R = rips_complex(X, rho, cap);
        GeometricComplex C2 = cech_complex(X, 2.0 * rho, cap);
        CHECK(subcomplex_of(C1.complex, R.complex));
        CHECK(subcomplex_of(R.complex, C2.complex));
    }
}

TEST_CASE("rips equals the clique complex of its 1-skeleton")
{
    RandomStream stream(4321);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 2 + static_cast<int>(stream() % 9);
        PointSet X = oracle::random_points(stream, n, Box::cube(2, 0.0, 1.0));
        double rho = stream.uniform(0.2, 0.9);
        GeometricComplex R = rips_complex(X, rho, n - 1);

        // Every pairwise-connected subset must be a face.
        SimplicialComplex clique = oracle::rips_bruteforce(X, rho, n - 1);
        CHECK(R.complex == clique);
    }
}

TEST_CASE("builders agree with the all-subsets oracle")
{
    RandomStream stream(20199);
    for (int trial = 0; trial < 100; ++trial) {
        int d = 2 + static_cast<int>(stream() % 2);
        int n = 1 + static_cast<int>(stream() % 8);
        PointSet X = oracle::random_points(stream, n, Box::cube(d, 0.0, 1.0));
        double rho = stream.uniform(0.1, 1.0);
        int cap = std::max(n - 1, 1);
        CHECK(rips_complex(X, rho, cap).complex == oracle::rips_bruteforce(X, rho, cap));
        CHECK(cech_complex(X, rho, cap).complex == oracle::cech_bruteforce(X, rho, cap));
    }
}

TEST_CASE("combinatorial equivalence: relabeling")
{
    SimplicialComplex K = SimplicialComplex::from_maximal_faces({{0, 1, 2}, {2, 3}});
    SimplicialComplex L = SimplicialComplex::from_maximal_faces({{7, 4, 9}, {9, 11}});
    EquivalenceResult eq = combinatorially_equivalent(K, L);
    CHECK(eq.equivalent);
    CHECK(eq.witness.size() == 4);
    CHECK(oracle::equivalent_bruteforce(K, L));
}

TEST_CASE("combinatorial equivalence: path vs triangle boundary")
{
    SimplicialComplex path = SimplicialComplex::from_maximal_faces({{0, 1}, {1, 2}});
    SimplicialComplex triangle =
        SimplicialComplex::from_maximal_faces({{0, 1}, {1, 2}, {0, 2}});
    CHECK_FALSE(combinatorially_equivalent(path, triangle).equivalent);
    CHECK_FALSE(oracle::equivalent_bruteforce(path, triangle));
}

TEST_CASE("combinatorial equivalence: two 4-cycles")
{
    SimplicialComplex K =
        SimplicialComplex::from_maximal_faces({{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    SimplicialComplex L =
        SimplicialComplex::from_maximal_faces({{0, 2}, {1, 2}, {1, 3}, {0, 3}});
    EquivalenceResult eq = combinatorially_equivalent(K, L);
    CHECK(eq.equivalent);
    CHECK(oracle::equivalent_bruteforce(K, L));

    // Verify the witness maps edges to edges by hand.
    std::map<int, int> f(eq.witness.begin(), eq.witness.end());
    for (const Face& e : K.faces(1)) {
        Face g{f.at(e[0]), f.at(e[1])};
        std::sort(g.begin(), g.end());
        CHECK(L.has_face(g));
    }
}

TEST_CASE("combinatorial equivalence is an equivalence relation")
{
    RandomStream stream(555);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 2 + static_cast<int>(stream() % 6);
        PointSet X = oracle::random_points(stream, n, Box::cube(2, 0.0, 1.0));
        PointSet Y = oracle::random_points(stream, n, Box::cube(2, 0.0, 1.0));
        double rho = stream.uniform(0.3, 0.9);
        SimplicialComplex A = rips_complex(X, rho, n - 1).complex;
        SimplicialComplex B = rips_complex(Y, rho, n - 1).complex;

        CHECK(combinatorially_equivalent(A, A).equivalent); // reflexive
        EquivalenceResult ab = combinatorially_equivalent(A, B);
        EquivalenceResult ba = combinatorially_equivalent(B, A);
        CHECK(ab.equivalent == ba.equivalent); // symmetric
        CHECK(ab.equivalent == oracle::equivalent_bruteforce(A, B));
    }
}

TEST_CASE("combinatorial equivalence search cap")
{
    std::vector<Face> faces;
    for (int i = 0; i < 40; ++i)
        faces.push_back(Face{i});
    SimplicialComplex big = SimplicialComplex::from_maximal_faces(faces);
    CHECK_THROWS_AS(combinatorially_equivalent(big, big), EquivalenceCapExceeded);
}

TEST_CASE("skeleton")
{
    SimplicialComplex filled = SimplicialComplex::from_maximal_faces({{0, 1, 2}});
    SimplicialComplex boundary =
        SimplicialComplex::from_maximal_faces({{0, 1}, {1, 2}, {0, 2}});
    CHECK(filled.skeleton(1) == boundary);
    CHECK(filled.skeleton(2) == filled);

    SimplicialComplex solid = SimplicialComplex::from_maximal_faces({{0, 1, 2, 3}});
    SimplicialComplex k4 = solid.skeleton(1);
    CHECK(k4.face_count(1) == 6);
    CHECK(k4.face_count(2) == 0);
}

TEST_CASE("wedge sum")
{
    SimplicialComplex tri = SimplicialComplex::from_maximal_faces({{0, 1}, {1, 2}, {0, 2}});
    SimplicialComplex wedge = wedge_sum(tri, 0, tri, 0);
    CHECK(wedge.face_count(0) == 5);
    CHECK(wedge.face_count(1) == 6);

    SimplicialComplex dot = SimplicialComplex::from_maximal_faces({{0}});
    SimplicialComplex same = wedge_sum(tri, 1, dot, 0);
    CHECK(combinatorially_equivalent(same, tri).equivalent);

    CHECK_THROWS_AS(wedge_sum(tri, 9, tri, 0), std::invalid_argument);
}

TEST_CASE("complex json round trip")
{
    GeometricComplex G = cech_complex(seven_points(), 2.4);
    auto j = complex_to_json(G.complex);
    SimplicialComplex back = complex_from_json(j);
    CHECK(back == G.complex);
    CHECK(back.dim_cap() == G.complex.dim_cap());

    // Loader rejects garbage.
    nlohmann::ordered_json bad = {{"dim_cap", 1},
                                  {"vertices", {0, 1}},
                                  {"maximal_faces", {{0, 1, 2}}}};
    CHECK_THROWS_AS(complex_from_json(bad), std::invalid_argument);
}
