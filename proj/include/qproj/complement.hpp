#pragma once

#include <cstddef>
#include <vector>

#include "qproj/tracker.hpp"

namespace qproj {

// Nonnegative dimension vector of a module (gamma-vectors of the Schur
// reductions live here).
using GammaVector = std::vector<Int>;

// A cluster frame together with the designated row of the projected weight
// and the completion sign: sign = +1 for e+ = e (+) e_c^+, -1 for e^-.
// eps_row is carried explicitly; placing eps last is a display convention
// only.
struct ComplementFrame {
    ClusterFrame frame;
    std::size_t eps_row;
    int sign;

    ComplementFrame(ClusterFrame f, std::size_t row, int s);

    std::size_t size() const { return frame.size(); }
    DeltaVector eps() const { return frame.delta().row(eps_row); }

    bool operator==(const ComplementFrame&) const = default;
};

// Sign invariant of a completion frame:
//   sign = +1: every column of C except column eps_row is nonnegative, and
//              column eps_row of -C is nonnegative (it is gamma_-(tau e));
//   sign = -1: every column of -C except column eps_row is nonnegative, and
//              column eps_row of C is nonnegative (it is gamma_+(e)).
// When eps is itself sign*unit, the eps column of C equals eps (degenerate
// Schur vector, gamma_{+-}(-e_i) = -e_i) and is accepted as such.
bool bongartz_certificate(const ComplementFrame& cf);

// For eps(k) = 0: the unique j != eps_row with column k of Delta equal to
// sign * e_j; additionally column j of sign*C must equal e_k.
std::size_t find_exchange_index(const ComplementFrame& cf, std::size_t k);

// Mutation of completions (complement-side rule): plain frame mutation when
// eps(k) != 0, otherwise frame mutation followed by the j-th exchange at the
// mutated seed. The sign certificate is asserted on the result.
ComplementFrame mutate_complement(const Seed& seed, const ComplementFrame& cf, std::size_t k);

// Mutation of the simples matrix (C-side rule): only row k of C changes,
//   eps(k) != 0:            C'(k,i) = [sgn(eps(k)) b_k]_+ c_i - C(k,i)
//   eps(k) == 0, i != j:    C'(k,i) = maxop([-b_k]_+ c_i, [b_k]_+ c_i) - C(k,i)
//   eps(k) == 0, i == j:    C'(k,j) = sign
// with maxop = max for sign = -1 and min for sign = +1; Delta is recomputed
// as the exact inverse. Equals mutate_complement exactly.
ComplementFrame mutate_simples(const Seed& seed, const ComplementFrame& cf, std::size_t k);

// One-coordinate mutation of a Schur-reduction vector.  gamma_sign = +1
// transports gamma_+(e) (the eps column of C_{e^-}), -1 transports
// gamma_-(tau e); the 0-branch uses max for +1 and min for -1.
GammaVector mutate_gamma(const Seed& seed, const DeltaVector& eps, const GammaVector& g, std::size_t k,
                         int gamma_sign);

// Columns of sign*C except the eps_row column: the dimension vectors of the
// simple modules of the projected algebra, n x (n-1), nonnegative.
IntMatrix extract_Ceperp(const ComplementFrame& cf);

} // namespace qproj
