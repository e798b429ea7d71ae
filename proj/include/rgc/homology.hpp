#ifndef RGC_HOMOLOGY_HPP
#define RGC_HOMOLOGY_HPP

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

#include "rgc/complex.hpp"

namespace rgc {

enum class Field { GF2, Rational };

const char* to_string(Field f);
Field field_from_string(const std::string& s);

/**
 * Simplicial boundary homomorphism from k-chains to (k-1)-chains. Rows
 * and columns are indexed by lexicographically ordered faces; entries
 * are the alternating signs over the rationals and their parities over
 * GF2 (stored signed either way).
 */
struct BoundaryMatrix {
    int degree = 0;
    Field field = Field::Rational;
    std::vector<Face> rows; // (k-1)-faces
    std::vector<Face> cols; // k-faces
    Eigen::MatrixXi entries;
};

/** Requested degree exceeds what the complex's dim_cap can certify. */
class TruncatedComplexError : public std::runtime_error {
public:
    explicit TruncatedComplexError(const std::string& what) : std::runtime_error(what) {}
};

struct BettiVector {
    Field field = Field::Rational;
    std::vector<long> betti; // degrees 0..betti.size()-1

    bool operator==(const BettiVector&) const = default;
};

BoundaryMatrix boundary_matrix(const SimplicialComplex& K, int k, Field field);

/** Exact rank over the matrix's field: bit-packed elimination for GF2,
 *  big-fraction Gaussian elimination for the rationals. */
long rank(const BoundaryMatrix& m);

/**
 * Betti numbers b_0..b_up_to via b_k = #k-faces - rank d_k - rank d_{k+1}.
 * Degree k is exact only when faces of dimension k+1 are fully stored,
 * i.e. k <= dim_cap - 1; higher requests throw TruncatedComplexError.
 * With up_to < 0 the range defaults to min(dimension, dim_cap - 1).
 */
BettiVector betti_numbers(const SimplicialComplex& K, Field field, int up_to = -1);

/** Alternating sum of stored face counts. */
long euler_characteristic(const SimplicialComplex& K);

} // namespace rgc

#endif
