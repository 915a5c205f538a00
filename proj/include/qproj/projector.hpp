#pragma once

#include <optional>
#include <vector>

#include "qproj/complement.hpp"

namespace qproj {

struct MutationSequence {
    std::vector<std::size_t> steps;

    bool operator==(const MutationSequence&) const = default;
};

enum class SearchTarget { negative, positive, both };

struct SearchOptions {
    std::size_t max_depth = 24;
    std::size_t max_states = 2'000'000;
    SearchTarget target = SearchTarget::both;
    unsigned jobs = 1;
};

struct SearchOutcome {
    MutationSequence sequence;
    int sign = 0;              // sign of the terminal unit multiple
    std::size_t vertex = 0;    // terminal vertex
    Int multiplicity = 1;      // m in delta -> sign * m * e_vertex
    std::size_t explored = 0;  // states visited
};

// BFS over (seed, delta) states for a shortest sequence transporting eps to
// a positive multiple of a signed unit vector. Deterministic: frontier is
// expanded in FIFO order with vertices ascending, immediate backtracking
// pruned. Throws not_reachable_error with the explored-state count.
SearchOutcome search_to_sign(const Seed& seed, const DeltaVector& eps, const SearchOptions& opts = {});

struct ProjectionResult {
    IntMatrix B_proj;          // (n-1) x (n-1)
    IntMatrix C_eperp;         // n x (n-1); columns follow complement rows in frame order
    MutationSequence sequence; // witness making eps a signed unit multiple
    int terminal_sign = 0;
    std::size_t terminal_vertex = 0;
    ComplementFrame complement; // at the original seed
    GammaVector gamma;          // Schur vector: gamma_+ for a - completion, gamma_- for a + one
    std::vector<std::string> warnings;

    // full (Algorithm-7.3) mode only:
    std::optional<MutationSequence> full_sequence;    // takes the whole completion to +-units
    std::optional<IntMatrix> B_terminal;              // seed after full_sequence, vertex order
    std::optional<IntMatrix> B_terminal_eps_last;     // same, re-indexed by completion rows, eps last
    std::optional<std::size_t> deleted_vertex;        // terminal vertex of eps in full mode
};

// Algorithm "find the simples matrix directly": search, then transport the
// terminal +-identity completion back along the reversed witness via
// mutate_simples; extract C_eperp and form B_proj = C^T B C.
ProjectionResult project_simple(const Seed& seed, const DeltaVector& eps, const SearchOptions& opts = {});

// Same, but along a caller-supplied witness sequence (used by golden tests
// and for reproducing printed traces). The sequence must transport eps to a
// signed unit multiple.
ProjectionResult project_along(const Seed& seed, const DeltaVector& eps, const MutationSequence& witness);

// Algorithm "mutate the whole completion": compute the completion at the
// original seed, search for a sequence making every completion row a signed
// unit, mutate B along it and delete eps' terminal vertex. Agrees with
// project_simple up to simultaneous permutation.
ProjectionResult project_full(const Seed& seed, const DeltaVector& eps, const SearchOptions& opts = {});

// Iterated projection by a compatible family: project by the first weight,
// push the remaining weights through C_eperp, recurse. Total C_eperp is the
// product of the stage matrices.
ProjectionResult project_multi(const Seed& seed, const std::vector<DeltaVector>& eps_list,
                               const SearchOptions& opts = {});

// d * C_eperp (length n-1).
DeltaVector pushforward_delta(const DeltaVector& d, const IntMatrix& c_eperp);

// C^T B C.
IntMatrix pushforward_B(const IntMatrix& B, const IntMatrix& C);

// Affine family of lifts of a projected weight: delta'_a = base + a * eps
// with base = sign * d_perp * Delta_complement. Selecting the minimal valid
// a needs the generic-vanishing test (oracle, acyclic case).
struct LiftFamily {
    DeltaVector base;
    DeltaVector eps;

    DeltaVector at(const Int& a) const {
        DeltaVector out(base.size());
        for (std::size_t i = 0; i < base.size(); ++i) out[i] = base[i] + a * eps[i];
        return out;
    }
};

LiftFamily lift_delta_candidates(const ComplementFrame& cf, const DeltaVector& d_perp);

// Canonical comparison per the ordering convention: sort the columns of
// C_eperp lexicographically and permute B_proj rows/columns in step; two
// projections of the same weight agree exactly after this normalization.
struct CanonicalProjection {
    IntMatrix C_eperp;
    IntMatrix B_proj;

    bool operator==(const CanonicalProjection&) const = default;
};

CanonicalProjection canonicalize(const IntMatrix& c_eperp, const IntMatrix& b_proj);
bool agree_up_to_permutation(const ProjectionResult& a, const ProjectionResult& b);

} // namespace qproj
