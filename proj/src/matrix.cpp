#include "qproj/matrix.hpp"

#include <sstream>

namespace qproj {

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Int>>& rows) {
    if (rows.empty()) return IntMatrix();
    IntMatrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows[0].size())
            throw dimension_error("from_rows: ragged row lengths");
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    }
    return m;
}

IntMatrix IntMatrix::transposed() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
    if (cols_ != rhs.rows_)
        throw dimension_error("matrix product: " + std::to_string(rows_) + "x" + std::to_string(cols_) +
                              " times " + std::to_string(rhs.rows_) + "x" + std::to_string(rhs.cols_));
    IntMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& a = (*this)(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
        }
    return out;
}

IntMatrix IntMatrix::operator-() const {
    IntMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < rows_ * cols_; ++i) out.data_[i] = -data_[i];
    return out;
}

std::vector<Int> IntMatrix::row(std::size_t i) const {
    if (i >= rows_) throw index_error("row index out of range");
    return std::vector<Int>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                            data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

std::vector<Int> IntMatrix::col(std::size_t j) const {
    if (j >= cols_) throw index_error("column index out of range");
    std::vector<Int> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
}

void IntMatrix::set_row(std::size_t i, const std::vector<Int>& r) {
    if (i >= rows_ || r.size() != cols_) throw dimension_error("set_row: bad shape");
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = r[j];
}

IntMatrix IntMatrix::without_index(std::size_t idx) const {
    if (rows_ != cols_) throw dimension_error("without_index needs a square matrix");
    if (idx >= rows_) throw index_error("without_index: index out of range");
    IntMatrix out(rows_ - 1, cols_ - 1);
    for (std::size_t i = 0, oi = 0; i < rows_; ++i) {
        if (i == idx) continue;
        for (std::size_t j = 0, oj = 0; j < cols_; ++j) {
            if (j == idx) continue;
            out(oi, oj) = (*this)(i, j);
            ++oj;
        }
        ++oi;
    }
    return out;
}

bool IntMatrix::is_skew_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i; j < cols_; ++j)
            if ((*this)(i, j) != -(*this)(j, i)) return false;
    return true;
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j);
        os << "]";
    }
    os << "]";
    return os.str();
}

IntMatrix plus_part(const IntMatrix& a) {
    IntMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = positive_part(a(i, j));
    return out;
}

IntMatrix jk_matrix(std::size_t n, std::size_t k) {
    if (k >= n) throw index_error("jk_matrix: k out of range");
    IntMatrix m = IntMatrix::identity(n);
    m(k, k) = -1;
    return m;
}

Int bareiss_determinant(IntMatrix m) {
    if (m.rows() != m.cols()) throw dimension_error("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t piv = k + 1;
            while (piv < n && m(piv, k) == 0) ++piv;
            if (piv == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

IntMatrix unimodular_inverse(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw dimension_error("inverse of a non-square matrix");
    const Int det = bareiss_determinant(m);
    if (det != 1 && det != -1)
        throw not_unimodular_error("matrix is not unimodular (det = " + det.str() + ")");
    const std::size_t n = m.rows();
    // exact rational Gauss-Jordan; integrality is guaranteed by |det| = 1
    std::vector<std::vector<Rat>> a(n, std::vector<Rat>(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] = Rat(m(i, j));
        a[i][n + i] = 1;
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && a[piv][c] == 0) ++piv;
        if (piv == n) throw not_unimodular_error("singular matrix in inverse");
        std::swap(a[c], a[piv]);
        const Rat p = a[c][c];
        for (auto& x : a[c]) x /= p;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a[r][c] == 0) continue;
            const Rat f = a[r][c];
            for (std::size_t j = 0; j < 2 * n; ++j) a[r][j] -= f * a[c][j];
        }
    }
    IntMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Rat& x = a[i][n + j];
            if (denominator(x) != 1)
                throw not_unimodular_error("non-integer inverse entry");
            out(i, j) = numerator(x);
        }
    return out;
}

std::vector<Int> row_times_matrix(const std::vector<Int>& v, const IntMatrix& m) {
    if (v.size() != m.rows()) throw dimension_error("row_times_matrix: length mismatch");
    std::vector<Int> out(m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (v[i] == 0) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) out[j] += v[i] * m(i, j);
    }
    return out;
}

Seed::Seed(IntMatrix b, std::vector<std::string> names) : B(std::move(b)), labels(std::move(names)) {
    if (!B.is_skew_symmetric())
        throw invalid_frame_error("seed matrix is not skew-symmetric");
    if (labels.empty()) {
        labels.reserve(B.rows());
        for (std::size_t i = 0; i < B.rows(); ++i) labels.push_back(std::to_string(i + 1));
    }
    if (labels.size() != B.rows()) throw dimension_error("seed label count != n");
}

Seed mutate_B(const Seed& seed, std::size_t k) {
    const std::size_t n = seed.size();
    if (k >= n) throw index_error("mutate_B: vertex out of range");
    const IntMatrix& B = seed.B;
    IntMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == k || j == k)
                out(i, j) = -B(i, j);
            else
                out(i, j) = B(i, j) + positive_part(B(i, k)) * positive_part(B(k, j)) -
                            positive_part(-B(i, k)) * positive_part(-B(k, j));
        }
    return Seed(std::move(out), seed.labels);
}

IntMatrix mutate_B_sandwich(const IntMatrix& B, std::size_t k, int sign_choice) {
    const std::size_t n = B.rows();
    if (k >= n) throw index_error("mutate_B_sandwich: vertex out of range");
    IntMatrix e = jk_matrix(n, k);
    for (std::size_t j = 0; j < n; ++j)
        if (j != k) e(k, j) += positive_part(Int(sign_choice) * B(k, j));
    return e.transposed() * B * e;
}

} // namespace qproj
