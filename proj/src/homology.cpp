#include "rgc/homology.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <unordered_map>

namespace rgc {

using Rational = boost::multiprecision::cpp_rational;

const char* to_string(Field f)
{
    return f == Field::GF2 ? "gf2" : "rational";
}

Field field_from_string(const std::string& s)
{
    if (s == "gf2" || s == "GF2")
        return Field::GF2;
    if (s == "rational" || s == "RATIONAL")
        return Field::Rational;
    throw std::invalid_argument("unknown field: " + s);
}

BoundaryMatrix boundary_matrix(const SimplicialComplex& K, int k, Field field)
{
    // Degrees above the dimension but certifiably empty give empty
    // matrices; only degrees the cap cannot speak about are errors.
    if (k < 1 || (k > K.dim_cap() && k > K.dimension()))
        throw std::invalid_argument("boundary_matrix: degree out of range");

    BoundaryMatrix m;
    m.degree = k;
    m.field = field;
    m.rows = K.faces(k - 1);
    m.cols = K.faces(k);

    std::unordered_map<Face, int, FaceHash> row_index;
    row_index.reserve(m.rows.size());
    for (std::size_t i = 0; i < m.rows.size(); ++i)
        row_index[m.rows[i]] = static_cast<int>(i);

    m.entries = Eigen::MatrixXi::Zero(static_cast<int>(m.rows.size()),
                                      static_cast<int>(m.cols.size()));
    for (std::size_t j = 0; j < m.cols.size(); ++j) {
        const Face& f = m.cols[j];
        for (std::size_t drop = 0; drop < f.size(); ++drop) {
            Face sub;
            sub.reserve(f.size() - 1);
            for (std::size_t i = 0; i < f.size(); ++i)
                if (i != drop)
                    sub.push_back(f[i]);
            int sign = (drop % 2 == 0) ? 1 : -1;
            m.entries(row_index.at(sub), static_cast<int>(j)) =
                field == Field::GF2 ? 1 : sign;
        }
    }
    return m;
}

namespace {

long rank_gf2(const Eigen::MatrixXi& m)
{
    const int rows = static_cast<int>(m.rows());
    const int cols = static_cast<int>(m.cols());
    if (rows == 0 || cols == 0)
        return 0;
    const int words = (cols + 63) / 64;
    std::vector<std::vector<std::uint64_t>> bits(rows,
                                                 std::vector<std::uint64_t>(words, 0));
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            if (m(i, j) % 2 != 0)
                bits[i][j / 64] |= (1ULL << (j % 64));

    long rank = 0;
    int row = 0;
    for (int col = 0; col < cols && row < rows; ++col) {
        int pivot = -1;
        for (int i = row; i < rows; ++i) {
            if (bits[i][col / 64] & (1ULL << (col % 64))) {
                pivot = i;
                break;
            }
        }
        if (pivot < 0)
            continue;
        std::swap(bits[row], bits[pivot]);
        for (int i = row + 1; i < rows; ++i) {
            if (bits[i][col / 64] & (1ULL << (col % 64))) {
                for (int w = 0; w < words; ++w)
                    bits[i][w] ^= bits[row][w];
            }
        }
        ++row;
        ++rank;
    }
    return rank;
}

long rank_rational(const Eigen::MatrixXi& m)
{
    const int rows = static_cast<int>(m.rows());
    const int cols = static_cast<int>(m.cols());
    if (rows == 0 || cols == 0)
        return 0;
    std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(cols));
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            a[i][j] = m(i, j);

    long rank = 0;
    int row = 0;
    for (int col = 0; col < cols && row < rows; ++col) {
        int pivot = -1;
        for (int i = row; i < rows; ++i) {
            if (a[i][col] != 0) {
                pivot = i;
                break;
            }
        }
        if (pivot < 0)
            continue;
        std::swap(a[row], a[pivot]);
        for (int i = row + 1; i < rows; ++i) {
            if (a[i][col] == 0)
                continue;
            Rational factor = a[i][col] / a[row][col];
            for (int j = col; j < cols; ++j)
                a[i][j] -= factor * a[row][j];
        }
        ++row;
        ++rank;
    }
    return rank;
}

} // namespace

long rank(const BoundaryMatrix& m)
{
    return m.field == Field::GF2 ? rank_gf2(m.entries) : rank_rational(m.entries);
}

BettiVector betti_numbers(const SimplicialComplex& K, Field field, int up_to)
{
    BettiVector out;
    out.field = field;
    if (K.empty())
        return out;

    // When the dimension sits strictly below the cap, the stored family is
    // the whole complex (downward closure forbids hidden higher faces), so
    // every degree is certifiable; otherwise only degrees < dim_cap are.
    const bool complete = K.dimension() < K.dim_cap();
    if (up_to < 0)
        up_to = complete ? K.dimension() : K.dim_cap() - 1;
    if (up_to < 0 || (!complete && up_to > K.dim_cap() - 1))
        throw TruncatedComplexError(
            "betti_numbers: degree " + std::to_string(up_to) +
            " truncated at dim_cap " + std::to_string(K.dim_cap()));

    std::vector<long> ranks(up_to + 2, 0);
    for (int k = 1; k <= up_to + 1 && k <= K.dimension(); ++k)
        ranks[k] = rank(boundary_matrix(K, k, field));

    for (int k = 0; k <= up_to; ++k) {
        long faces_k = K.face_count(k);
        long next_rank = ranks[k + 1];
        out.betti.push_back(faces_k - ranks[k] - next_rank);
    }
    return out;
}

long euler_characteristic(const SimplicialComplex& K)
{
    long chi = 0;
    for (int k = 0; k <= K.dimension(); ++k)
        chi += (k % 2 == 0 ? 1 : -1) * K.face_count(k);
    return chi;
}

} // namespace rgc
