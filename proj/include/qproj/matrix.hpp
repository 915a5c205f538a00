#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <string>
#include <vector>

#include "qproj/error.hpp"

namespace qproj {

// All arithmetic in this project is exact. Entries of seed matrices and
// C-matrices grow along mutation paths, so a fixed-width integer is a
// correctness bug, not an optimization concern.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline int sign_of(const Int& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }
inline Int positive_part(const Int& x) { return x > 0 ? x : Int(0); }

// Dense integer matrix, row-major.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool operator==(const IntMatrix&) const = default;

    IntMatrix transposed() const;
    IntMatrix operator*(const IntMatrix& rhs) const;
    IntMatrix operator-() const;

    std::vector<Int> row(std::size_t i) const;
    std::vector<Int> col(std::size_t j) const;
    void set_row(std::size_t i, const std::vector<Int>& r);

    // Removes row i and column i (square restriction).
    IntMatrix without_index(std::size_t i) const;

    bool is_skew_symmetric() const;

    std::string to_string() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Int> data_;
};

// Entry-wise [a]_+ = max(a, 0).
IntMatrix plus_part(const IntMatrix& a);

// Identity with entry (k,k) replaced by -1.
IntMatrix jk_matrix(std::size_t n, std::size_t k);

// Exact determinant by fraction-free (Bareiss) elimination.
Int bareiss_determinant(IntMatrix m);

// Exact integer inverse of a unimodular matrix. Throws not_unimodular_error
// if |det| != 1.
IntMatrix unimodular_inverse(const IntMatrix& m);

// row vector times matrix
std::vector<Int> row_times_matrix(const std::vector<Int>& v, const IntMatrix& m);

// A mutation-dynamical state: a skew-symmetric exchange matrix with vertex
// labels. Vertex indices are 0-based internally, 1-based in all I/O.
struct Seed {
    IntMatrix B;
    std::vector<std::string> labels;

    explicit Seed(IntMatrix b, std::vector<std::string> names = {});
    std::size_t size() const { return B.rows(); }
};

// Fomin-Zelevinsky matrix mutation at vertex k.
Seed mutate_B(const Seed& seed, std::size_t k);

// Sandwich form (J_k + [sign*B]_+^{k.})^T B (J_k + [sign*B]_+^{k.});
// either sign choice gives mutate_B, which the tests assert.
IntMatrix mutate_B_sandwich(const IntMatrix& B, std::size_t k, int sign_choice);

} // namespace qproj
