#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "qproj/document.hpp"

using namespace qproj;
using nlohmann::json;

namespace {

struct CommonArgs {
    std::string input;
    std::string output; // empty = stdout
};

void emit(const CommonArgs& args, const json& j) {
    const std::string text = dump_canonical(j);
    if (args.output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(args.output);
        if (!out) throw parse_error("cannot write '" + args.output + "'");
        out << text;
    }
}

std::vector<std::size_t> parse_sequence_arg(const std::string& s, std::size_t n) {
    std::vector<std::size_t> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t next = s.find(',', pos);
        if (next == std::string::npos) next = s.size();
        const std::string tok = s.substr(pos, next - pos);
        if (!tok.empty()) {
            long v = 0;
            try {
                v = std::stol(tok);
            } catch (const std::exception&) {
                throw parse_error("sequence entry '" + tok + "' is not an integer");
            }
            if (v < 1 || static_cast<std::size_t>(v) > n)
                throw index_error("sequence vertex " + tok + " out of range (1-based)");
            out.push_back(static_cast<std::size_t>(v - 1));
        }
        pos = next + 1;
    }
    return out;
}

DeltaVector named_delta(const SeedDocument& doc, const std::string& name) {
    const auto it = doc.deltas.find(name);
    if (it == doc.deltas.end()) throw parse_error("document has no delta named '" + name + "'");
    return it->second;
}

SearchTarget parse_target(const std::string& t) {
    if (t == "+") return SearchTarget::positive;
    if (t == "-") return SearchTarget::negative;
    if (t == "both") return SearchTarget::both;
    throw parse_error("target must be '+', '-' or 'both'");
}

PathAlgebra algebra_for(const SeedDocument& doc) {
    if (doc.arrows) {
        PathAlgebra pa(*doc.arrows);
        if (pa.b_matrix(ArrowConvention::forward) != doc.seed.B)
            throw convention_mismatch_error("document arrows do not present B under the locked convention");
        return pa;
    }
    return PathAlgebra(quiver_from_matrix(doc.seed.B));
}

json frame_json(const Seed& seed, const ClusterFrame& f) {
    json j;
    j["B"] = matrix_to_json(seed.B);
    j["Delta"] = matrix_to_json(f.delta());
    j["C"] = matrix_to_json(f.c());
    return j;
}

// ----------------------------------------------------------- subcommands

int cmd_mutate(const CommonArgs& args, const std::string& seq_arg) {
    SeedDocument doc = load_document(args.input);
    std::vector<std::size_t> seq =
        seq_arg.empty() ? doc.sequence.value_or(std::vector<std::size_t>{})
                        : parse_sequence_arg(seq_arg, doc.seed.size());
    Seed cur = doc.seed;
    std::map<std::string, DeltaVector> deltas = doc.deltas;
    for (std::size_t k : seq) {
        for (auto& [name, d] : deltas) d = mutate_delta(cur, d, k);
        cur = mutate_B(cur, k);
    }
    SeedDocument out{cur, std::move(deltas), doc.sequence, doc.arrows, std::nullopt};
    json j = document_to_json(out);
    json applied = json::array();
    for (std::size_t k : seq) applied.push_back(k + 1);
    j["applied_sequence"] = std::move(applied);
    emit(args, j);
    return 0;
}

int cmd_track(const CommonArgs& args, const std::string& seq_arg, const std::string& init, bool trace) {
    SeedDocument doc = load_document(args.input);
    const std::size_t n = doc.seed.size();
    ClusterFrame frame = [&] {
        if (doc.frame) return ClusterFrame(doc.frame->delta, doc.frame->c);
        if (init == "+") return ClusterFrame::signed_identity(n, 1);
        return ClusterFrame::signed_identity(n, -1);
    }();
    const std::vector<std::size_t> seq =
        seq_arg.empty() ? doc.sequence.value_or(std::vector<std::size_t>{})
                        : parse_sequence_arg(seq_arg, n);
    Seed cur = doc.seed;
    json steps = json::array();
    if (trace) steps.push_back(frame_json(cur, frame));
    for (std::size_t k : seq) {
        frame = mutate_frame(cur, frame, k);
        cur = mutate_B(cur, k);
        if (trace) steps.push_back(frame_json(cur, frame));
    }
    json j = frame_json(cur, frame);
    if (trace) j["trace"] = std::move(steps);
    emit(args, j);
    return 0;
}

int cmd_search(const CommonArgs& args, const std::string& eps_name, const std::string& target,
               std::size_t depth, unsigned jobs) {
    SeedDocument doc = load_document(args.input);
    SearchOptions opts;
    opts.target = parse_target(target);
    opts.max_depth = depth;
    opts.jobs = jobs;
    const SearchOutcome out = search_to_sign(doc.seed, named_delta(doc, eps_name), opts);
    json j;
    json seq = json::array();
    for (std::size_t k : out.sequence.steps) seq.push_back(k + 1);
    j["sequence"] = std::move(seq);
    j["sign"] = out.sign > 0 ? "+" : "-";
    j["vertex"] = out.vertex + 1;
    j["multiplicity"] = int_to_json(out.multiplicity);
    j["explored_states"] = out.explored;
    emit(args, j);
    return 0;
}

int cmd_complement(const CommonArgs& args, const std::string& eps_name, const std::string& target,
                   std::size_t depth, unsigned jobs) {
    SeedDocument doc = load_document(args.input);
    SearchOptions opts;
    opts.target = parse_target(target);
    opts.max_depth = depth;
    opts.jobs = jobs;
    const ProjectionResult r = project_simple(doc.seed, named_delta(doc, eps_name), opts);
    json j = projection_to_json(r);
    j["certificate"] = bongartz_certificate(r.complement);
    emit(args, j);
    return 0;
}

int cmd_project(const CommonArgs& args, const std::string& eps_name, const std::string& eps_list,
                const std::string& mode, const std::string& target, std::size_t depth, unsigned jobs,
                bool verify, bool trace, std::int64_t prime, int trials, std::uint64_t rng_seed,
                bool rational) {
    SeedDocument doc = load_document(args.input);
    SearchOptions opts;
    opts.target = parse_target(target);
    opts.max_depth = depth;
    opts.jobs = jobs;
    if (verify && mode == "multi") throw parse_error("--verify supports the simple and full modes only");

    ProjectionResult r = [&] {
        if (mode == "simple") return project_simple(doc.seed, named_delta(doc, eps_name), opts);
        if (mode == "full") return project_full(doc.seed, named_delta(doc, eps_name), opts);
        if (mode == "multi") {
            std::vector<DeltaVector> list;
            std::size_t pos = 0;
            while (pos < eps_list.size()) {
                std::size_t next = eps_list.find(',', pos);
                if (next == std::string::npos) next = eps_list.size();
                list.push_back(named_delta(doc, eps_list.substr(pos, next - pos)));
                pos = next + 1;
            }
            if (list.empty()) throw parse_error("--eps-list must name at least one delta");
            return project_multi(doc.seed, list, opts);
        }
        throw parse_error("mode must be simple, full or multi");
    }();

    json j = projection_to_json(r);
    j["mode"] = mode;
    if (mode == "full") {
        // agreement flag between the two algorithm routes
        const ProjectionResult simple = project_simple(doc.seed, named_delta(doc, eps_name), opts);
        j["full_simple_agree"] = agree_up_to_permutation(r, simple);
    }
    if (trace && mode != "multi") {
        // transported frames at every intermediate seed, terminal first
        json steps = json::array();
        std::vector<Seed> seeds{doc.seed};
        for (std::size_t k : r.sequence.steps) seeds.push_back(mutate_B(seeds.back(), k));
        ComplementFrame cf(ClusterFrame::signed_identity(doc.seed.size(), r.terminal_sign),
                           r.terminal_vertex, r.terminal_sign);
        steps.push_back(frame_json(seeds.back(), cf.frame));
        for (std::size_t t = r.sequence.steps.size(); t-- > 0;) {
            cf = mutate_simples(seeds[t + 1], cf, r.sequence.steps[t]);
            steps.push_back(frame_json(seeds[t], cf.frame));
        }
        j["trace"] = std::move(steps);
    }
    if (verify) {
        OracleOptions oo;
        oo.prime = prime;
        oo.trials = trials;
        oo.master_seed = rng_seed;
        oo.use_rational = rational;
        const PathAlgebra pa = algebra_for(doc);
        const VerifyReport rep =
            verify_projection(pa, doc.seed, named_delta(doc, eps_name), r, opts, oo);
        j["oracle_report"] = report_to_json(rep);
        emit(args, j);
        return rep.passed() ? 0 : 5;
    }
    emit(args, j);
    return 0;
}

int cmd_verify(const CommonArgs& args, std::int64_t prime, int trials, std::uint64_t rng_seed) {
    SeedDocument doc = load_document(args.input);
    const std::size_t n = doc.seed.size();
    json checks = json::object();
    bool all = true;
    auto record = [&](const std::string& name, bool ok) {
        checks[name] = ok;
        all = all && ok;
    };

    record("seed_skew_symmetric", doc.seed.B.is_skew_symmetric());
    if (doc.frame) {
        const IntMatrix& d = doc.frame->delta;
        const IntMatrix& c = doc.frame->c;
        record("delta_c_identity", d.rows() == n && c.rows() == n && d * c == IntMatrix::identity(n));
        bool coherent = true;
        try {
            for (std::size_t j = 0; j < n; ++j) {
                column_sign(d, j);
                column_sign(c, j);
            }
        } catch (const error&) {
            coherent = false;
        }
        record("sign_coherence", coherent);
        Int det = 0;
        try {
            det = bareiss_determinant(d);
        } catch (const error&) {
        }
        record("unimodular", det == 1 || det == -1);
        if (doc.frame->eps_row && doc.frame->sign && checks["delta_c_identity"] == true && coherent) {
            ComplementFrame cf(ClusterFrame(d, c), *doc.frame->eps_row, *doc.frame->sign);
            record("certificate", bongartz_certificate(cf));
        }
    }
    // hom - e identity probes when the seed has an acyclic realization
    try {
        const PathAlgebra pa = algebra_for(doc);
        OracleOptions oo;
        oo.prime = prime;
        oo.trials = trials;
        oo.master_seed = rng_seed;
        bool ok = true;
        int probe = 0;
        for (const auto& [name, dvec] : doc.deltas) {
            if (probe++ >= 3) break;
            try {
                const auto s1 = sample_presentation(pa, dvec, rng_seed + probe, oo);
                const auto s2 = sample_presentation(pa, dvec, rng_seed + 100 + probe, oo);
                (void)hom_e_dims(s1, s2, oo); // throws if the identity fails
            } catch (const precondition_error&) {
                // delta beyond the oracle caps: not probeable, not a failure
            } catch (const invalid_frame_error&) {
                ok = false;
            }
        }
        record("hom_e_identity_probes", ok);
    } catch (const cyclic_quiver_error&) {
        checks["hom_e_identity_probes"] = "skipped (seed has no acyclic realization)";
    }

    json j;
    j["checks"] = std::move(checks);
    j["passed"] = all;
    emit(args, j);
    return all ? 0 : 5;
}

int cmd_oracle_check(const CommonArgs& args, const std::string& eps_name, std::int64_t prime, int trials,
                     std::uint64_t rng_seed, bool rational, std::size_t depth) {
    SeedDocument doc = load_document(args.input);
    OracleOptions oo;
    oo.prime = prime;
    oo.trials = trials;
    oo.master_seed = rng_seed;
    oo.use_rational = rational;
    const ArrowConvention locked = calibrate_convention(oo);
    json j;
    j["locked_convention"] = to_string(locked);
    if (!eps_name.empty()) {
        SearchOptions so;
        so.max_depth = depth;
        const PathAlgebra pa = algebra_for(doc);
        const DeltaVector eps = named_delta(doc, eps_name);
        const ProjectionResult r = project_simple(doc.seed, eps, so);
        const VerifyReport rep = verify_projection(pa, doc.seed, eps, r, so, oo);
        j["oracle_report"] = report_to_json(rep);
        emit(args, j);
        return rep.passed() ? 0 : 5;
    }
    emit(args, j);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact engine for rigid-weight orthogonal projections of quiver seeds"};
    app.require_subcommand(1);

    CommonArgs common;
    std::string seq_arg, eps_name = "eps", eps_list, mode = "simple", target = "both", init = "-";
    std::size_t depth = 24;
    unsigned jobs = 1;
    bool verify = false, trace = false, rational = false;
    std::int64_t prime = 32003;
    int trials = 7;
    std::uint64_t rng_seed = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--in", common.input, "input document (JSON)")->required();
        sub->add_option("--out", common.output, "output file (default: stdout)");
    };

    CLI::App* mutate = app.add_subcommand("mutate", "mutate the seed and transport all deltas");
    add_common(mutate);
    mutate->add_option("--seq", seq_arg, "1-based vertex sequence, comma separated");

    CLI::App* track = app.add_subcommand("track", "transport a cluster frame along a sequence");
    add_common(track);
    track->add_option("--seq", seq_arg, "1-based vertex sequence, comma separated");
    track->add_option("--init", init, "initial frame when none in the document: '-' or '+'");
    track->add_flag("--trace", trace, "emit every intermediate (B, Delta, C)");

    CLI::App* search = app.add_subcommand("search", "find a sequence making a delta a signed unit multiple");
    add_common(search);
    search->add_option("--eps", eps_name, "name of the weight in the document");
    search->add_option("--target", target, "'+', '-' or 'both'");
    search->add_option("--depth", depth, "search depth cap");
    search->add_option("--jobs", jobs, "parallel frontier workers");

    CLI::App* complement = app.add_subcommand("complement", "compute the +- completion frame of a weight");
    add_common(complement);
    complement->add_option("--eps", eps_name, "name of the weight");
    complement->add_option("--target", target, "'+', '-' or 'both'");
    complement->add_option("--depth", depth, "search depth cap");
    complement->add_option("--jobs", jobs, "parallel frontier workers");

    CLI::App* project = app.add_subcommand("project", "project the seed by a rigid weight");
    add_common(project);
    project->add_option("--eps", eps_name, "name of the weight");
    project->add_option("--eps-list", eps_list, "comma-separated names (mode multi)");
    project->add_option("--mode", mode, "simple | full | multi");
    project->add_option("--target", target, "'+', '-' or 'both'");
    project->add_option("--depth", depth, "search depth cap");
    project->add_option("--jobs", jobs, "parallel frontier workers");
    project->add_flag("--verify", verify, "append the oracle report (acyclic seeds)");
    project->add_flag("--trace", trace, "dump every intermediate (B, Delta, C)");
    project->add_option("--prime", prime, "oracle field prime");
    project->add_option("--trials", trials, "oracle trials per generic value");
    project->add_option("--rng-seed", rng_seed, "oracle master seed");
    project->add_flag("--rational", rational, "exact rational oracle arithmetic");

    CLI::App* verify_cmd = app.add_subcommand("verify", "check document invariants");
    add_common(verify_cmd);
    verify_cmd->add_option("--prime", prime, "oracle field prime");
    verify_cmd->add_option("--trials", trials, "oracle trials");
    verify_cmd->add_option("--rng-seed", rng_seed, "oracle master seed");

    CLI::App* oracle_cmd = app.add_subcommand("oracle-check", "calibrate and certify via the oracle");
    add_common(oracle_cmd);
    oracle_cmd->add_option("--eps", eps_name, "weight to project and certify (optional)")->default_val("");
    oracle_cmd->add_option("--prime", prime, "oracle field prime");
    oracle_cmd->add_option("--trials", trials, "oracle trials");
    oracle_cmd->add_option("--rng-seed", rng_seed, "oracle master seed");
    oracle_cmd->add_option("--depth", depth, "search depth cap");
    oracle_cmd->add_flag("--rational", rational, "exact rational oracle arithmetic");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(mutate)) return cmd_mutate(common, seq_arg);
        if (app.got_subcommand(track)) return cmd_track(common, seq_arg, init, trace);
        if (app.got_subcommand(search)) return cmd_search(common, eps_name, target, depth, jobs);
        if (app.got_subcommand(complement)) return cmd_complement(common, eps_name, target, depth, jobs);
        if (app.got_subcommand(project))
            return cmd_project(common, eps_name, eps_list, mode, target, depth, jobs, verify, trace,
                               prime, trials, rng_seed, rational);
        if (app.got_subcommand(verify_cmd)) return cmd_verify(common, prime, trials, rng_seed);
        if (app.got_subcommand(oracle_cmd))
            return cmd_oracle_check(common, eps_name, prime, trials, rng_seed, rational, depth);
    } catch (const error& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return static_cast<int>(ex.code());
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 1;
}
