#include "qproj/projector.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>
#include <thread>
#include <unordered_set>

namespace qproj {

namespace {

std::optional<std::pair<std::size_t, int>> unit_multiple(const DeltaVector& d, Int* mult = nullptr) {
    std::size_t nz = 0, pos = 0;
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i] != 0) {
            ++nz;
            pos = i;
        }
    if (nz != 1) return std::nullopt;
    if (mult) *mult = abs(d[pos]);
    return std::make_pair(pos, sign_of(d[pos]));
}

bool sign_wanted(int s, SearchTarget t) {
    return t == SearchTarget::both || (t == SearchTarget::negative && s < 0) ||
           (t == SearchTarget::positive && s > 0);
}

void append_key(std::ostringstream& os, const IntMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) os << m(i, j) << ',';
}

// Generic deterministic level-synchronous BFS. State must provide
// key(), expand(k) and the caller checks goals; immediate backtracking at
// the same vertex is pruned (mutations are involutions).
template <class State, class GoalFn>
struct Bfs {
    std::size_t n;
    const SearchOptions& opts;
    GoalFn is_goal;

    struct Node {
        State state;
        MutationSequence seq;
    };

    // returns (node, explored) of the first goal in deterministic order
    std::pair<Node, std::size_t> run(State start) {
        std::unordered_set<std::string> visited;
        visited.insert(start.key());
        Node root{std::move(start), {}};
        if (is_goal(root.state)) return {std::move(root), visited.size()};

        std::vector<Node> frontier;
        frontier.push_back(std::move(root));
        std::size_t depth = 0;
        while (!frontier.empty() && depth < opts.max_depth) {
            ++depth;
            // expand this level; workers write private buffers that are
            // merged in block order, reproducing the serial insertion order
            const unsigned jobs = std::max(1u, opts.jobs);
            std::vector<std::vector<Node>> buffers(jobs);
            auto expand_block = [&](unsigned w) {
                const std::size_t lo = frontier.size() * w / jobs;
                const std::size_t hi = frontier.size() * (w + 1) / jobs;
                for (std::size_t idx = lo; idx < hi; ++idx) {
                    const Node& node = frontier[idx];
                    for (std::size_t k = 0; k < n; ++k) {
                        if (!node.seq.steps.empty() && node.seq.steps.back() == k) continue;
                        Node next{node.state.expand(k), node.seq};
                        next.seq.steps.push_back(k);
                        buffers[w].push_back(std::move(next));
                    }
                }
            };
            if (jobs == 1) {
                expand_block(0);
            } else {
                std::vector<std::thread> pool;
                for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(expand_block, w);
                for (auto& t : pool) t.join();
            }
            std::vector<Node> next_frontier;
            for (auto& buf : buffers) {
                for (auto& node : buf) {
                    if (!visited.insert(node.state.key()).second) continue;
                    if (visited.size() > opts.max_states)
                        throw not_reachable_error("state cap exceeded before reaching a target",
                                                  visited.size(), depth);
                    if (is_goal(node.state)) return {std::move(node), visited.size()};
                    next_frontier.push_back(std::move(node));
                }
            }
            frontier = std::move(next_frontier);
        }
        throw not_reachable_error("target not reachable within depth " + std::to_string(opts.max_depth),
                                  visited.size(), opts.max_depth);
    }
};

struct DeltaState {
    Seed seed;
    DeltaVector d;

    std::string key() const {
        std::ostringstream os;
        append_key(os, seed.B);
        os << '|';
        for (const auto& x : d) os << x << ',';
        return os.str();
    }
    DeltaState expand(std::size_t k) const { return {mutate_B(seed, k), mutate_delta(seed, d, k)}; }
};

struct FrameState {
    Seed seed;
    IntMatrix delta; // all completion rows, mutated row-wise

    std::string key() const {
        std::ostringstream os;
        append_key(os, seed.B);
        os << '|';
        append_key(os, delta);
        return os.str();
    }
    FrameState expand(std::size_t k) const {
        IntMatrix next(delta.rows(), delta.cols());
        for (std::size_t r = 0; r < delta.rows(); ++r)
            next.set_row(r, mutate_delta(seed, delta.row(r), k));
        return {mutate_B(seed, k), std::move(next)};
    }
};

std::vector<Seed> seeds_along(const Seed& seed, const MutationSequence& seq) {
    std::vector<Seed> seeds{seed};
    for (std::size_t k : seq.steps) seeds.push_back(mutate_B(seeds.back(), k));
    return seeds;
}

ProjectionResult build_result(const Seed& seed, const DeltaVector& eps, SearchOutcome out) {
    const std::size_t n = seed.size();
    std::vector<std::string> warnings;
    if (out.multiplicity != 1)
        warnings.push_back("epsilon is " + out.multiplicity.str() +
                           " times a unit at the terminal seed; projecting by the primitive weight");

    const std::vector<Seed> seeds = seeds_along(seed, out.sequence);
    ComplementFrame cf(ClusterFrame::signed_identity(n, out.sign), out.vertex, out.sign);
    for (std::size_t t = out.sequence.steps.size(); t-- > 0;)
        cf = mutate_simples(seeds[t + 1], cf, out.sequence.steps[t]);

    // transported eps row must reproduce the (primitive) input weight
    DeltaVector expected = eps;
    if (out.multiplicity != 1)
        for (auto& x : expected) x /= out.multiplicity;
    if (cf.eps() != expected)
        throw invalid_frame_error("transported eps row does not match the input weight");

    ProjectionResult res{
        /*B_proj=*/IntMatrix(),
        /*C_eperp=*/extract_Ceperp(cf),
        /*sequence=*/std::move(out.sequence),
        /*terminal_sign=*/out.sign,
        /*terminal_vertex=*/out.vertex,
        /*complement=*/std::move(cf),
        /*gamma=*/{},
        /*warnings=*/std::move(warnings),
        /*full_sequence=*/{},
        /*B_terminal=*/{},
        /*B_terminal_eps_last=*/{},
        /*deleted_vertex=*/{},
    };
    res.B_proj = pushforward_B(seed.B, res.C_eperp);
    if (!res.B_proj.is_skew_symmetric())
        throw invalid_frame_error("projected matrix is not skew-symmetric");
    // eps column of C: gamma_+(e) for the negative completion, the negated
    // column is gamma_-(tau e) for the positive one
    res.gamma = res.complement.frame.c().col(res.complement.eps_row);
    if (res.terminal_sign > 0)
        for (auto& x : res.gamma) x = -x;
    return res;
}

} // namespace

SearchOutcome search_to_sign(const Seed& seed, const DeltaVector& eps, const SearchOptions& opts) {
    if (eps.size() != seed.size()) throw dimension_error("search_to_sign: eps length mismatch");
    if (std::all_of(eps.begin(), eps.end(), [](const Int& x) { return x == 0; }))
        throw precondition_error("search_to_sign: eps must be nonzero");

    SearchOutcome out;
    auto goal = [&](const DeltaState& s) {
        Int mult;
        const auto u = unit_multiple(s.d, &mult);
        if (!u || !sign_wanted(u->second, opts.target)) return false;
        out.vertex = u->first;
        out.sign = u->second;
        out.multiplicity = mult;
        return true;
    };
    Bfs<DeltaState, decltype(goal)> bfs{seed.size(), opts, goal};
    auto [node, explored] = bfs.run(DeltaState{seed, eps});
    out.sequence = std::move(node.seq);
    out.explored = explored;
    return out;
}

ProjectionResult project_simple(const Seed& seed, const DeltaVector& eps, const SearchOptions& opts) {
    return build_result(seed, eps, search_to_sign(seed, eps, opts));
}

ProjectionResult project_along(const Seed& seed, const DeltaVector& eps, const MutationSequence& witness) {
    Seed cur = seed;
    DeltaVector d = eps;
    for (std::size_t k : witness.steps) {
        d = mutate_delta(cur, d, k);
        cur = mutate_B(cur, k);
    }
    SearchOutcome out;
    const auto u = unit_multiple(d, &out.multiplicity);
    if (!u) throw precondition_error("project_along: witness does not transport eps to a unit multiple");
    out.vertex = u->first;
    out.sign = u->second;
    out.sequence = witness;
    return build_result(seed, eps, std::move(out));
}

ProjectionResult project_full(const Seed& seed, const DeltaVector& eps, const SearchOptions& opts) {
    ProjectionResult res = project_simple(seed, eps, opts);
    const std::size_t n = seed.size();

    // search for a sequence making every completion row a unit of the
    // completion's own sign (a weight reachable to one side drags its
    // completion along to the same side)
    SearchOptions full_opts = opts;
    full_opts.target = res.terminal_sign < 0 ? SearchTarget::negative : SearchTarget::positive;
    auto goal = [&](const FrameState& s) {
        for (std::size_t r = 0; r < n; ++r) {
            const auto u = unit_multiple(s.delta.row(r));
            if (!u || u->second != res.terminal_sign) return false;
        }
        return true;
    };
    Bfs<FrameState, decltype(goal)> bfs{n, full_opts, goal};
    auto [node, explored] = bfs.run(FrameState{seed, res.complement.frame.delta()});
    (void)explored;

    Seed terminal = seed;
    for (std::size_t k : node.seq.steps) terminal = mutate_B(terminal, k);

    // permutation: completion row r terminates at vertex p(r)
    std::vector<std::size_t> p(n);
    for (std::size_t r = 0; r < n; ++r)
        p[r] = unit_multiple(node.state.delta.row(r))->first;

    // re-index by completion rows with eps last (the display order of the
    // projected quiver: survivors first)
    std::vector<std::size_t> order;
    for (std::size_t r = 0; r < n; ++r)
        if (r != res.complement.eps_row) order.push_back(p[r]);
    order.push_back(p[res.complement.eps_row]);
    IntMatrix eps_last(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) eps_last(i, j) = terminal.B(order[i], order[j]);

    res.full_sequence = std::move(node.seq);
    res.B_terminal = terminal.B;
    res.B_terminal_eps_last = std::move(eps_last);
    res.deleted_vertex = p[res.complement.eps_row];

    // delete eps' terminal vertex from the mutated seed and compare with the
    // simples route under the row correspondence; full_proj is indexed by
    // surviving vertices ascending, res.B_proj by completion rows
    const IntMatrix full_proj = terminal.B.without_index(*res.deleted_vertex);
    std::vector<std::size_t> row_to_pos(n);
    std::size_t pos = 0;
    for (std::size_t v = 0; v < n; ++v)
        if (v != *res.deleted_vertex) row_to_pos[v] = pos++;
    std::vector<std::size_t> comp_pos; // survivor position of each complement row
    for (std::size_t r = 0; r < n; ++r)
        if (r != res.complement.eps_row) comp_pos.push_back(row_to_pos[p[r]]);
    IntMatrix aligned(n - 1, n - 1);
    for (std::size_t a = 0; a < n - 1; ++a)
        for (std::size_t b = 0; b < n - 1; ++b) aligned(a, b) = full_proj(comp_pos[a], comp_pos[b]);
    if (aligned != res.B_proj)
        throw invalid_frame_error("full and simple projections disagree beyond the row correspondence");
    return res;
}

ProjectionResult project_multi(const Seed& seed, const std::vector<DeltaVector>& eps_list,
                               const SearchOptions& opts) {
    if (eps_list.empty()) throw precondition_error("project_multi: empty weight list");
    ProjectionResult res = project_simple(seed, eps_list.front(), opts);
    if (eps_list.size() == 1) return res;

    std::vector<DeltaVector> rest;
    for (std::size_t i = 1; i < eps_list.size(); ++i)
        rest.push_back(pushforward_delta(eps_list[i], res.C_eperp));
    const Seed stage(res.B_proj);
    ProjectionResult tail = project_multi(stage, rest, opts);

    tail.C_eperp = res.C_eperp * tail.C_eperp;
    tail.warnings.insert(tail.warnings.begin(), res.warnings.begin(), res.warnings.end());
    if (tail.B_proj != pushforward_B(seed.B, tail.C_eperp))
        throw invalid_frame_error("project_multi: factorized C matrix does not reproduce B_proj");
    return tail;
}

DeltaVector pushforward_delta(const DeltaVector& d, const IntMatrix& c_eperp) {
    return row_times_matrix(d, c_eperp);
}

IntMatrix pushforward_B(const IntMatrix& B, const IntMatrix& C) {
    return C.transposed() * B * C;
}

LiftFamily lift_delta_candidates(const ComplementFrame& cf, const DeltaVector& d_perp) {
    const std::size_t n = cf.size();
    if (d_perp.size() != n - 1) throw dimension_error("lift_delta_candidates: d_perp must have length n-1");
    IntMatrix delta_c(n - 1, n);
    std::size_t r = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i == cf.eps_row) continue;
        delta_c.set_row(r++, cf.frame.delta().row(i));
    }
    DeltaVector base = row_times_matrix(d_perp, delta_c);
    for (auto& x : base) x *= cf.sign;
    return LiftFamily{std::move(base), cf.eps()};
}

CanonicalProjection canonicalize(const IntMatrix& c_eperp, const IntMatrix& b_proj) {
    const std::size_t m = c_eperp.cols();
    std::vector<std::size_t> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
        for (std::size_t i = 0; i < c_eperp.rows(); ++i) {
            if (c_eperp(i, a) != c_eperp(i, b)) return c_eperp(i, a) < c_eperp(i, b);
        }
        return false;
    });
    CanonicalProjection out{IntMatrix(c_eperp.rows(), m), IntMatrix(m, m)};
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t i = 0; i < c_eperp.rows(); ++i) out.C_eperp(i, j) = c_eperp(i, perm[j]);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) out.B_proj(a, b) = b_proj(perm[a], perm[b]);
    return out;
}

bool agree_up_to_permutation(const ProjectionResult& a, const ProjectionResult& b) {
    return canonicalize(a.C_eperp, a.B_proj) == canonicalize(b.C_eperp, b.B_proj);
}

} // namespace qproj
