#include "qproj/complement.hpp"

#include <algorithm>

namespace qproj {

namespace {

bool is_signed_unit(const DeltaVector& v, int sign, std::size_t* where = nullptr) {
    std::size_t nz = 0, pos = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] != 0) {
            ++nz;
            pos = i;
        }
    }
    if (nz != 1 || v[pos] != sign) return false;
    if (where) *where = pos;
    return true;
}

Int dot(const std::vector<Int>& a, const std::vector<Int>& b) {
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

} // namespace

ComplementFrame::ComplementFrame(ClusterFrame f, std::size_t row, int s)
    : frame(std::move(f)), eps_row(row), sign(s) {
    if (eps_row >= frame.size()) throw index_error("complement frame: eps_row out of range");
    if (sign != 1 && sign != -1) throw invalid_frame_error("complement frame: sign must be +1 or -1");
}

bool bongartz_certificate(const ComplementFrame& cf) {
    const std::size_t n = cf.size();
    const IntMatrix& c = cf.frame.c();
    for (std::size_t j = 0; j < n; ++j) {
        if (j == cf.eps_row) continue;
        for (std::size_t i = 0; i < n; ++i)
            if (Int(cf.sign) * c(i, j) < 0) return false;
    }
    // eps column: -sign * column must be nonnegative, except in the
    // degenerate case eps = sign * e_v where the column equals eps itself.
    bool ok = true;
    for (std::size_t i = 0; i < n; ++i)
        if (Int(-cf.sign) * c(i, cf.eps_row) < 0) ok = false;
    if (ok) return true;
    const DeltaVector eps = cf.eps();
    std::size_t v = 0;
    if (!is_signed_unit(eps, cf.sign, &v)) return false;
    const std::vector<Int> col = c.col(cf.eps_row);
    for (std::size_t i = 0; i < n; ++i)
        if (col[i] != (i == v ? Int(cf.sign) : Int(0))) return false;
    return true;
}

std::size_t find_exchange_index(const ComplementFrame& cf, std::size_t k) {
    const std::size_t n = cf.size();
    if (k >= n) throw index_error("find_exchange_index: vertex out of range");
    const IntMatrix& delta = cf.frame.delta();
    if (delta(cf.eps_row, k) != 0)
        throw precondition_error("find_exchange_index requires eps(k) = 0");
    std::size_t j = n;
    for (std::size_t r = 0; r < n; ++r) {
        if (delta(r, k) == 0) continue;
        if (j != n || delta(r, k) != cf.sign)
            throw not_unit_column_error("column " + std::to_string(k + 1) +
                                        " of Delta is not the signed unit vector of a completion");
        j = r;
    }
    if (j == n) throw not_unit_column_error("column of Delta is zero");
    // cross-check the dual side: column j of sign*C is e_k
    for (std::size_t i = 0; i < n; ++i) {
        const Int want = (i == k) ? Int(1) : Int(0);
        if (Int(cf.sign) * cf.frame.c()(i, j) != want)
            throw not_unit_column_error("column " + std::to_string(j + 1) + " of C is not the matching unit");
    }
    return j;
}

ComplementFrame mutate_complement(const Seed& seed, const ComplementFrame& cf, std::size_t k) {
    const DeltaVector eps = cf.eps();
    if (k >= cf.size()) throw index_error("mutate_complement: vertex out of range");
    ComplementFrame out = [&] {
        if (eps[k] != 0)
            return ComplementFrame(mutate_frame(seed, cf.frame, k), cf.eps_row, cf.sign);
        const std::size_t j = find_exchange_index(cf, k);
        const ClusterFrame mutated = mutate_frame(seed, cf.frame, k);
        return ComplementFrame(exchange_frame(mutate_B(seed, k), mutated, j), cf.eps_row, cf.sign);
    }();
    if (!bongartz_certificate(out))
        throw invalid_frame_error("mutate_complement: sign certificate failed (non-rigid weight?)");
    return out;
}

ComplementFrame mutate_simples(const Seed& seed, const ComplementFrame& cf, std::size_t k) {
    const std::size_t n = cf.size();
    if (k >= n) throw index_error("mutate_simples: vertex out of range");
    const DeltaVector eps = cf.eps();
    const IntMatrix& c = cf.frame.c();
    const std::vector<Int> bk = seed.B.row(k);

    std::vector<Int> bk_pos(n), bk_neg(n);
    for (std::size_t l = 0; l < n; ++l) {
        bk_pos[l] = positive_part(bk[l]);
        bk_neg[l] = positive_part(-bk[l]);
    }

    IntMatrix cnew = c;
    if (eps[k] != 0) {
        const int s = sign_of(eps[k]);
        const std::vector<Int>& b = (s > 0) ? bk_pos : bk_neg;
        for (std::size_t i = 0; i < n; ++i)
            cnew(k, i) = dot(b, c.col(i)) - c(k, i);
    } else {
        const std::size_t j = find_exchange_index(cf, k);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == j) {
                cnew(k, i) = cf.sign;
                continue;
            }
            const std::vector<Int> col = c.col(i);
            const Int a = dot(bk_neg, col);
            const Int b = dot(bk_pos, col);
            const Int m = (cf.sign < 0) ? std::max(a, b) : std::min(a, b);
            cnew(k, i) = m - c(k, i);
        }
    }
    ComplementFrame out(ClusterFrame(unimodular_inverse(cnew), cnew), cf.eps_row, cf.sign);
    if (!bongartz_certificate(out))
        throw invalid_frame_error("mutate_simples: sign certificate failed (non-rigid weight?)");
    return out;
}

GammaVector mutate_gamma(const Seed& seed, const DeltaVector& eps, const GammaVector& g, std::size_t k,
                         int gamma_sign) {
    const std::size_t n = seed.size();
    if (k >= n) throw index_error("mutate_gamma: vertex out of range");
    if (eps.size() != n || g.size() != n) throw dimension_error("mutate_gamma: length mismatch");
    const std::vector<Int> bk = seed.B.row(k);
    std::vector<Int> bk_pos(n), bk_neg(n);
    for (std::size_t l = 0; l < n; ++l) {
        bk_pos[l] = positive_part(bk[l]);
        bk_neg[l] = positive_part(-bk[l]);
    }
    GammaVector out = g;
    if (eps[k] != 0) {
        const std::vector<Int>& b = (eps[k] > 0) ? bk_pos : bk_neg;
        out[k] = dot(b, g) - g[k];
    } else {
        const Int a = dot(bk_neg, g);
        const Int b = dot(bk_pos, g);
        out[k] = (gamma_sign > 0 ? std::max(a, b) : std::min(a, b)) - g[k];
    }
    return out;
}

IntMatrix extract_Ceperp(const ComplementFrame& cf) {
    const std::size_t n = cf.size();
    IntMatrix out(n, n - 1);
    std::size_t oj = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (j == cf.eps_row) continue;
        for (std::size_t i = 0; i < n; ++i) out(i, oj) = Int(cf.sign) * cf.frame.c()(i, j);
        ++oj;
    }
    return out;
}

} // namespace qproj
