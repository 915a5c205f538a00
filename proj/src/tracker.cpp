#include "qproj/tracker.hpp"

namespace qproj {

DeltaVector mutate_delta(const Seed& seed, const DeltaVector& d, std::size_t k) {
    const std::size_t n = seed.size();
    if (k >= n) throw index_error("mutate_delta: vertex out of range");
    if (d.size() != n) throw dimension_error("mutate_delta: delta length mismatch");
    DeltaVector out(n);
    out[k] = -d[k];
    const int s = sign_of(-d[k]);
    for (std::size_t i = 0; i < n; ++i) {
        if (i == k) continue;
        out[i] = d[i] + positive_part(Int(s) * seed.B(i, k)) * d[k];
    }
    return out;
}

int column_sign(const IntMatrix& m, std::size_t k) {
    if (k >= m.cols()) throw index_error("column_sign: column out of range");
    bool pos = false, neg = false;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (m(i, k) > 0) pos = true;
        if (m(i, k) < 0) neg = true;
    }
    if (pos && neg) throw mixed_signs_error("column " + std::to_string(k + 1) + " has mixed signs");
    if (!pos && !neg) throw zero_column_error("column " + std::to_string(k + 1) + " is zero");
    return pos ? 1 : -1;
}

ClusterFrame::ClusterFrame(IntMatrix delta, IntMatrix c) : delta_(std::move(delta)), c_(std::move(c)) {
    const std::size_t n = delta_.rows();
    if (delta_.cols() != n || c_.rows() != n || c_.cols() != n)
        throw dimension_error("cluster frame matrices must be square of equal size");
    if (delta_ * c_ != IntMatrix::identity(n))
        throw invalid_frame_error("Delta * C != I");
    for (std::size_t j = 0; j < n; ++j) {
        column_sign(delta_, j); // throws on incoherent / zero columns
        column_sign(c_, j);
    }
}

ClusterFrame ClusterFrame::signed_identity(std::size_t n, int sign) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = sign;
    return ClusterFrame(m, m);
}

IntMatrix frame_mutation_factor(const Seed& seed, const IntMatrix& delta, std::size_t k) {
    const std::size_t n = seed.size();
    if (k >= n) throw index_error("frame mutation: vertex out of range");
    const int s = column_sign(delta, k);
    IntMatrix f = jk_matrix(n, k);
    for (std::size_t j = 0; j < n; ++j)
        if (j != k) f(k, j) += positive_part(Int(s) * seed.B(k, j));
    return f;
}

ClusterFrame mutate_frame(const Seed& seed, const ClusterFrame& fr, std::size_t k) {
    const IntMatrix f = frame_mutation_factor(seed, fr.delta(), k);
    return ClusterFrame(fr.delta() * f, f * fr.c());
}

ClusterFrame exchange_frame(const Seed& seed, const ClusterFrame& fr, std::size_t j) {
    const std::size_t n = seed.size();
    if (j >= n) throw index_error("exchange_frame: index out of range");
    const int sh = column_sign(fr.c(), j);
    const IntMatrix g = fr.c().transposed() * seed.B * fr.c();
    IntMatrix f = jk_matrix(n, j);
    for (std::size_t l = 0; l < n; ++l)
        if (l != j) f(j, l) += positive_part(Int(-sh) * g(j, l));
    return ClusterFrame(f * fr.delta(), fr.c() * f);
}

} // namespace qproj
