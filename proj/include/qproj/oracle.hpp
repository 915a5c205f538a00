#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qproj/projector.hpp"

namespace qproj {

// ---------------------------------------------------------------- quivers

struct Quiver {
    std::size_t n = 0;
    std::vector<std::pair<std::size_t, std::size_t>> arrows; // (source, target)
};

// Which reading of B(Q) the path algebra uses. "forward" means
// B(i,j) = #arrows(i->j) - #arrows(j->i); calibration locks this one.
enum class ArrowConvention { forward, reverse };

std::string to_string(ArrowConvention c);

// Acyclic realization of a skew-symmetric matrix: B(i,j) > 0 contributes
// B(i,j) arrows i->j under the forward convention.
Quiver quiver_from_matrix(const IntMatrix& B, ArrowConvention conv = ArrowConvention::forward);

// Path algebra of an acyclic quiver without loops: full path enumeration,
// grouped by (source, target). Hom(P_i, P_j) has the paths j -> i as basis.
class PathAlgebra {
public:
    explicit PathAlgebra(Quiver q); // throws cyclic_quiver_error

    const Quiver& quiver() const { return quiver_; }
    std::size_t vertex_count() const { return quiver_.n; }
    std::size_t path_count() const { return path_count_; }

    // arrow-index sequences of all paths s -> t (the trivial path is {})
    const std::vector<std::vector<std::uint32_t>>& paths(std::size_t s, std::size_t t) const {
        return paths_[s * quiver_.n + t];
    }
    std::optional<std::size_t> path_index(std::size_t s, std::size_t t,
                                          const std::vector<std::uint32_t>& p) const;

    // dim P_i(v) = #paths(i -> v)
    std::vector<Int> projective_dims(std::size_t i) const;

    IntMatrix b_matrix(ArrowConvention conv) const;

private:
    Quiver quiver_;
    std::vector<std::vector<std::vector<std::uint32_t>>> paths_;
    std::vector<std::map<std::vector<std::uint32_t>, std::size_t>> path_index_;
    std::size_t path_count_ = 0;
};

// ---------------------------------------------------------------- sampling

struct OracleOptions {
    std::int64_t prime = 32003;
    int trials = 7;
    std::uint64_t master_seed = 0;
    bool use_rational = false; // exact-arithmetic escape hatch for disputes
    std::size_t max_vertices = 6;
    long max_multiplicity = 12; // per-side cap on total projective multiplicity
};

// A sampled presentation P(beta_-) -> P(beta_+) with one coefficient per
// (plus summand, minus summand, path) in the path basis. Coefficients are
// residues mod the oracle prime; they double as exact integers for the
// rational fallback.
struct PresentationSample {
    const PathAlgebra* algebra = nullptr;
    DeltaVector delta;
    std::vector<long> beta_plus, beta_minus;
    std::vector<std::size_t> plus_vertex, minus_vertex; // flattened summands
    // coeff[a][b][q] over paths(plus_vertex[a] -> minus_vertex[b])
    std::vector<std::vector<std::vector<std::int64_t>>> coeff;
};

// padding adds equal projective multiplicities to both sides (a neutral
// summand in the homotopy class); generic values are invariant under it.
PresentationSample sample_presentation(const PathAlgebra& pa, const DeltaVector& delta,
                                       std::uint64_t rng_seed, const OracleOptions& opts = {},
                                       const std::vector<long>& padding = {});

struct HomEDims {
    long hom = 0;
    long e = 0;
    std::vector<long> dim_N; // dimension vector of coker(d2)
};

// Kernel/cokernel dimensions of Hom(P_+, N) -> Hom(P_-, N) with
// N = coker(d2). The identity hom - e = delta . dim N is asserted on every
// call (the oracle's self-check).
HomEDims hom_e_dims(const PresentationSample& d1, const PresentationSample& d2,
                    const OracleOptions& opts = {});

// min over trials of hom_e_dims(..).e on independent samples; sub-seeds are
// derived from (master_seed, trial) so parallel and serial runs agree.
long generic_e(const PathAlgebra& pa, const DeltaVector& d1, const DeltaVector& d2,
               const OracleOptions& opts = {});

// e(delta_i, delta_j) = 0 for all ordered pairs, including i = j.
bool is_rigid_family(const PathAlgebra& pa, const std::vector<DeltaVector>& deltas,
                     const OracleOptions& opts = {});

// ---------------------------------------------------------------- reports

struct VerifyReport {
    std::string convention;
    bool rigid_family = false;
    bool unimodular = false;
    bool sign_pattern = false;
    bool plus_certificate_exact = false; // +: conjunction above is an iff-certificate
    bool plus_minus_agree = false;       // -: cross-check against the + run
    bool hom_e_identity_ok = false;                // hom - e = delta . dim N on probe samples
    std::vector<std::string> notes;
    std::map<std::string, std::vector<long>> trial_values; // per-pair e values, auditable

    bool passed() const;
};

// Representation-theoretic certification of a projection result on an
// acyclic seed. Throws convention_mismatch_error when the algebra's
// B-matrix does not reproduce the seed.
VerifyReport verify_projection(const PathAlgebra& pa, const Seed& seed, const DeltaVector& eps,
                               const ProjectionResult& result, const SearchOptions& search_opts = {},
                               const OracleOptions& opts = {});

// Least a in [0, a_max] with e(lift_a, eps) = e(eps, lift_a) = 0; throws
// not_found_error past the cap.
long minimal_lift_a(const PathAlgebra& pa, const ComplementFrame& cf, const DeltaVector& d_perp,
                    long a_max, const OracleOptions& opts = {});

// Probes both conventions on a built-in A_2 and returns the one whose
// projections the oracle certifies; exactly one must pass.
ArrowConvention calibrate_convention(const OracleOptions& opts = {});

} // namespace qproj
