#pragma once

#include <vector>

#include "qproj/matrix.hpp"

namespace qproj {

// Weight (delta-) vector of a presentation relative to a seed; the negative
// of the g-vector.
using DeltaVector = std::vector<Int>;

// delta-vector mutation at vertex k (initial-seed rule):
//   mu_k(d)(k) = -d(k)
//   mu_k(d)(i) = d(i) + [sgn(-d(k)) B(i,k)]_+ d(k)   for i != k
// B is the matrix of the seed d currently lives at; the result is a weight
// at mutate_B(seed, k).
DeltaVector mutate_delta(const Seed& seed, const DeltaVector& d, std::size_t k);

// Coherent sign of column k: +1 if >= 0 with a positive entry, -1 dually.
// Throws mixed_signs_error / zero_column_error otherwise.
int column_sign(const IntMatrix& m, std::size_t k);

// Paired Delta-matrix (rows = delta-vectors of an ordered cluster) and its
// exact inverse C, mutated in lockstep. Degenerate input is rejected at
// construction, never repaired.
class ClusterFrame {
public:
    ClusterFrame(IntMatrix delta, IntMatrix c);

    static ClusterFrame signed_identity(std::size_t n, int sign);

    const IntMatrix& delta() const { return delta_; }
    const IntMatrix& c() const { return c_; }
    std::size_t size() const { return delta_.rows(); }

    bool operator==(const ClusterFrame&) const = default;

private:
    IntMatrix delta_;
    IntMatrix c_;
};

// J_k + [sgn(k, Delta) B]_+^{k.} -- the shared one-row mutation factor:
// Delta' = Delta F, C' = F C.
IntMatrix frame_mutation_factor(const Seed& seed, const IntMatrix& delta, std::size_t k);

// Lockstep mutation of the frame at vertex k; Delta C = I is reasserted.
ClusterFrame mutate_frame(const Seed& seed, const ClusterFrame& f, std::size_t k);

// j-th exchange: replaces the j-th cluster element by its unique other
// complement.  With G = C^T B C and sh = column_sign(C, j),
//   F = J_j + [-sh G]_+^{j.},  Delta' = F Delta,  C' = C F.
// Only row j of Delta changes; column j of C flips sign and other columns
// may pick up multiples of it.
ClusterFrame exchange_frame(const Seed& seed, const ClusterFrame& f, std::size_t j);

} // namespace qproj
