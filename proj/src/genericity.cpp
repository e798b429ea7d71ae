#include "rgc/genericity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rgc/poisson.hpp"
#include "rgc/tolerance.hpp"

namespace rgc {

EquivalenceResult is_representation(const PointSet& X, double rho,
                                    const SimplicialComplex& K, Flavor flavor,
                                    int dim_cap)
{
    GeometricComplex G = flavor == Flavor::Rips ? rips_complex(X, rho, dim_cap)
                                                : cech_complex(X, rho, dim_cap);
    return combinatorially_equivalent(G.complex, K);
}

namespace {

// Applies fn to every index subset of size 1..max_size.
template <typename Fn>
void for_each_subset(int n, int max_size, Fn&& fn)
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

double genericity_margin(const PointSet& X, double rho, Flavor flavor)
{
    if (!(rho > 0.0))
        throw std::invalid_argument("genericity_margin: rho must be positive");
    if (X.empty())
        throw std::invalid_argument("genericity_margin: empty point set");

    double margin = std::numeric_limits<double>::infinity();
    if (flavor == Flavor::Rips) {
        for (int i = 0; i < X.size(); ++i)
            for (int j = i + 1; j < X.size(); ++j)
                margin = std::min(margin, std::abs(X.distance(i, j) - rho));
    } else {
        const double tau = rho / 2.0;
        // Ball radii are realized on supports of at most d+1 points; the
        // d+2 bound leaves slack and is validated against a full subset
        // enumeration in the tests.
        const int max_size = std::min(X.size(), X.dim() + 2);
        for_each_subset(X.size(), max_size, [&](const std::vector<int>& subset) {
            Ball b = minimal_enclosing_ball(X.data(), subset);
            margin = std::min(margin, std::abs(b.radius - tau));
        });
    }
    if (std::isfinite(margin) && approx_eq(margin, 0.0))
        return 0.0;
    return margin;
}

MakeGenericResult make_generic(const PointSet& X, double rho, Flavor flavor,
                               bool force_rescale)
{
    if (!(rho > 0.0))
        throw std::invalid_argument("make_generic: rho must be positive");
    if (X.size() < 2) {
        double m = X.empty() ? std::numeric_limits<double>::infinity()
                             : genericity_margin(X, rho, flavor);
        return MakeGenericResult{X, false, 1.0, m};
    }

    double margin = genericity_margin(X, rho, flavor);
    if (margin > 0.0 && !force_rescale)
        return MakeGenericResult{X, false, 1.0, margin};

    const double tau = flavor == Flavor::Cech ? rho / 2.0 : rho;

    // Smallest excess of a non-face over the threshold.
    double excess = std::numeric_limits<double>::infinity();
    if (flavor == Flavor::Rips) {
        for (int i = 0; i < X.size(); ++i)
            for (int j = i + 1; j < X.size(); ++j) {
                double dist = X.distance(i, j);
                if (definitely_greater(dist, tau))
                    excess = std::min(excess, dist - tau);
            }
    } else {
        const int max_size = std::min(X.size(), X.dim() + 2);
        for_each_subset(X.size(), max_size, [&](const std::vector<int>& subset) {
            double r = minimal_enclosing_ball(X.data(), subset).radius;
            if (definitely_greater(r, tau))
                excess = std::min(excess, r - tau);
        });
    }
    if (!std::isfinite(excess))
        excess = tau; // complete complex: any strict shrink preserves it

    const double scale = tau / (tau + 0.9 * excess);
    PointSet scaled = X.scaled(scale);
    return MakeGenericResult{scaled, true, scale,
                             genericity_margin(scaled, rho, flavor)};
}

VerifyGenericResult verify_generic(const PointSet& X, double rho, double delta,
                                   Flavor flavor, int trials, std::uint64_t seed)
{
    if (!(delta > 0.0))
        throw std::invalid_argument("verify_generic: delta must be positive");

    GeometricComplex base = flavor == Flavor::Rips ? rips_complex(X, rho)
                                                   : cech_complex(X, rho);
    VerifyGenericResult result;
    const int d = X.dim();
    for (int trial = 0; trial < trials; ++trial) {
        RandomStream stream(seed, 0x67656EULL, static_cast<std::uint64_t>(trial));
        Matrix perturbed = X.data();
        for (int i = 0; i < X.size(); ++i)
            perturbed.row(i) += stream.uniform_in_ball(d, delta).transpose();
        PointSet Y(std::move(perturbed), /*allow_duplicates=*/true);
        GeometricComplex rebuilt = flavor == Flavor::Rips
                                       ? rips_complex(Y, rho)
                                       : cech_complex(Y, rho);
        result.trials_run = trial + 1;
        if (!combinatorially_equivalent(base.complex, rebuilt.complex).equivalent) {
            result.ok = false;
            result.counterexample = std::move(Y);
            return result;
        }
    }
    result.ok = true;
    return result;
}

RepresentationCertificate certify(const PointSet& X, double rho, Flavor flavor,
                                  int dim_cap)
{
    GeometricComplex G = flavor == Flavor::Rips ? rips_complex(X, rho, dim_cap)
                                                : cech_complex(X, rho, dim_cap);
    RepresentationCertificate cert;
    cert.target = G.complex;
    cert.representation = X;
    cert.rho = rho;
    cert.flavor = flavor;
    cert.margin = genericity_margin(X, rho, flavor);
    for (int v : G.complex.vertices())
        cert.witness.emplace_back(v, v);
    return cert;
}

} // namespace rgc
