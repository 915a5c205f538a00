#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "golden.hpp"
#include "qproj/document.hpp"

using namespace qproj;
using nlohmann::json;

namespace {

struct RunResult {
    int exit_code;
    json output;
    bool has_output;
};

std::string tmp_path(const std::string& name) { return "/tmp/qproj_test_" + name; }

RunResult run(const std::string& args, const std::string& out_name) {
    const std::string out = tmp_path(out_name);
    const std::string cmd = std::string(QPROJ_BIN) + " " + args + " --out " + out + " 2>/dev/null";
    const int rc = std::system(cmd.c_str());
    RunResult r{WEXITSTATUS(rc), json(), false};
    std::ifstream in(out);
    if (in) {
        try {
            in >> r.output;
            r.has_output = true;
        } catch (...) {
        }
    }
    return r;
}

void write_example_doc(const std::string& path) {
    SeedDocument doc{Seed(fixtures::example_B0()), {}, std::nullopt, std::nullopt, std::nullopt};
    doc.deltas["eps"] = fixtures::example_eps();
    doc.deltas["unit"] = DeltaVector{0, -1, 0, 0};
    std::ofstream out(path);
    out << dump_canonical(document_to_json(doc));
}

std::string write_a3_doc() {
    const std::string path = tmp_path("a3.json");
    const IntMatrix b = IntMatrix::from_rows({{0, 1, 0}, {-1, 0, 1}, {0, -1, 0}});
    SeedDocument doc{Seed(b), {}, std::nullopt, std::nullopt, std::nullopt};
    doc.deltas["eps"] = DeltaVector{1, 0, -1};
    std::ofstream out(path);
    out << dump_canonical(document_to_json(doc));
    return path;
}

} // namespace

TEST_CASE("documents round-trip through parse and dump") {
    SeedDocument doc{Seed(fixtures::example_B0()), {}, std::nullopt, std::nullopt, std::nullopt};
    doc.deltas["eps"] = fixtures::example_eps();
    doc.sequence = std::vector<std::size_t>{2, 0};
    const json j = document_to_json(doc);
    const SeedDocument back = parse_document(j);
    CHECK(back.seed.B == doc.seed.B);
    CHECK(back.deltas.at("eps") == fixtures::example_eps());
    CHECK(back.sequence == doc.sequence);
    CHECK(document_to_json(back) == j);
}

TEST_CASE("malformed documents are rejected") {
    using nlohmann::json;
    CHECK_THROWS_AS(parse_document(json::parse(R"({"format_version":1,"B":[[0,1],[1,0]]})")),
                    parse_error); // not skew-symmetric
    CHECK_THROWS_AS(parse_document(json::parse(R"({"format_version":1,"B":[[0,1],[-1]]})")),
                    parse_error); // ragged rows
    CHECK_THROWS_AS(
        parse_document(json::parse(R"({"format_version":1,"B":[[0,1],[-1,0]],"delta":{"d":[1]}})")),
        parse_error); // wrong-length delta
    CHECK_THROWS_AS(
        parse_document(json::parse(R"({"format_version":1,"B":[[0,1],[-1,0]],"sequence":[3]})")),
        parse_error); // out-of-range vertex
    CHECK_THROWS_AS(parse_document(json::parse(R"({"format_version":2,"B":[[0]]})")), parse_error);
}

TEST_CASE("big integers survive the document layer") {
    Int big = 1;
    for (int i = 0; i < 5; ++i) big *= 1000000000;
    const json j = int_to_json(big);
    CHECK(j.is_string());
    CHECK(json_to_int(j) == big);
    CHECK(json_to_int(int_to_json(Int(-7))) == -7);
}

TEST_CASE("cmd mutate reproduces the worked-example terminal seed") {
    const std::string in = tmp_path("ex.json");
    write_example_doc(in);
    const RunResult r = run("mutate --in " + in + " --seq 3,1", "mut.json");
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.has_output);
    const IntMatrix terminal = matrix_from_json(r.output["B"]);
    const Seed b0(fixtures::example_B0());
    CHECK(terminal == mutate_B(mutate_B(b0, 2), 0).B);
    // transported eps ends as -e_1
    CHECK(vector_from_json(r.output["delta"]["eps"]) == DeltaVector{-1, 0, 0, 0});

    // round trip: applying the reverse sequence restores the document
    std::ofstream(tmp_path("mut_in.json")) << dump_canonical(r.output);
    const RunResult back = run("mutate --in " + tmp_path("mut_in.json") + " --seq 1,3", "mut2.json");
    REQUIRE(back.exit_code == 0);
    CHECK(matrix_from_json(back.output["B"]) == b0.B);
    CHECK(vector_from_json(back.output["delta"]["eps"]) == fixtures::example_eps());
}

TEST_CASE("cmd project emits the worked-example projection") {
    const std::string in = tmp_path("ex.json");
    write_example_doc(in);
    const RunResult r = run("project --in " + in + " --eps eps --mode simple", "proj.json");
    REQUIRE(r.exit_code == 0);
    // canonical block is witness-independent
    const CanonicalProjection expect =
        canonicalize(fixtures::example_Ceperp(), fixtures::example_Bproj());
    CHECK(matrix_from_json(r.output["canonical"]["B_proj"]) == expect.B_proj);
    CHECK(matrix_from_json(r.output["canonical"]["C_eperp"]) == expect.C_eperp);

    const RunResult full = run("project --in " + in + " --eps eps --mode full", "projf.json");
    REQUIRE(full.exit_code == 0);
    CHECK(full.output["full_simple_agree"] == true);
    CHECK(matrix_from_json(full.output["B_terminal_eps_last"]) == fixtures::example_Bprime());
}

TEST_CASE("cmd project --trace emits one frame per intermediate seed") {
    const std::string in = tmp_path("ex.json");
    write_example_doc(in);
    const RunResult r = run("project --in " + in + " --eps eps --trace", "ptr.json");
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.output.contains("trace"));
    CHECK(r.output["trace"].size() == r.output["sequence"].size() + 1);
    // last trace entry is the frame at the original seed
    CHECK(matrix_from_json(r.output["trace"].back()["B"]) == fixtures::example_B0());
    CHECK(matrix_from_json(r.output["trace"].back()["C"]) ==
          matrix_from_json(r.output["complement"]["C"]));
}

TEST_CASE("cmd project restriction output for a negative unit") {
    const std::string in = tmp_path("ex.json");
    write_example_doc(in);
    const RunResult r = run("project --in " + in + " --eps unit", "proju.json");
    REQUIRE(r.exit_code == 0);
    CHECK(matrix_from_json(r.output["B_proj"]) == fixtures::example_B0().without_index(1));
    CHECK(r.output["sequence"].empty());
}

TEST_CASE("cmd project --verify appends a passing oracle report on A3") {
    const std::string in = write_a3_doc();
    const RunResult r = run("project --in " + in + " --eps eps --verify --rng-seed 0", "projv.json");
    REQUIRE(r.exit_code == 0);
    CHECK(r.output["oracle_report"]["passed"] == true);
    CHECK(r.output["oracle_report"]["rigid_family"] == true);
}

TEST_CASE("byte-stable output for fixed inputs") {
    const std::string in = tmp_path("ex.json");
    write_example_doc(in);
    REQUIRE(run("project --in " + in + " --eps eps", "stable1.json").exit_code == 0);
    REQUIRE(run("project --in " + in + " --eps eps", "stable2.json").exit_code == 0);
    std::ifstream f1(tmp_path("stable1.json")), f2(tmp_path("stable2.json"));
    std::stringstream s1, s2;
    s1 << f1.rdbuf();
    s2 << f2.rdbuf();
    CHECK(s1.str() == s2.str());
    CHECK_FALSE(s1.str().empty());
}

TEST_CASE("cmd search and parallel jobs agree") {
    const std::string in = tmp_path("ex.json");
    write_example_doc(in);
    const RunResult a = run("search --in " + in + " --eps eps", "s1.json");
    const RunResult b = run("search --in " + in + " --eps eps --jobs 4", "s2.json");
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    CHECK(a.output["sequence"] == b.output["sequence"]);
    CHECK(a.output["sign"] == "-");
}

TEST_CASE("cmd track traces the worked-example frames") {
    const std::string in = tmp_path("ex.json");
    write_example_doc(in);
    // reverse transport happens from the mutated seed; track forward from
    // the negative cluster over the terminal seed reproduces the -C trace
    const RunResult mut = run("mutate --in " + in + " --seq 3,1", "t0.json");
    std::ofstream(tmp_path("term.json")) << dump_canonical(mut.output);
    const RunResult r = run("track --in " + tmp_path("term.json") + " --seq 1,3 --trace", "t1.json");
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.output["trace"].size() == 3);
    CHECK(-matrix_from_json(r.output["trace"][0]["C"]) == fixtures::example_negC_terminal());
    CHECK(-matrix_from_json(r.output["trace"][1]["C"]) == fixtures::example_negC_mid());
    CHECK(-matrix_from_json(r.output["trace"][2]["C"]) == fixtures::example_negC_origin());
}

TEST_CASE("cmd verify passes on a pristine frame and fails on a corrupted one") {
    const Seed b0(fixtures::example_B0());
    const ProjectionResult pr =
        project_along(b0, fixtures::example_eps(), fixtures::example_witness());
    SeedDocument doc{b0, {}, std::nullopt, std::nullopt, std::nullopt};
    doc.frame = FrameDoc{pr.complement.frame.delta(), pr.complement.frame.c(),
                         pr.complement.eps_row, pr.complement.sign};
    std::ofstream(tmp_path("vf.json")) << dump_canonical(document_to_json(doc));
    const RunResult good = run("verify --in " + tmp_path("vf.json"), "v1.json");
    CHECK(good.exit_code == 0);
    CHECK(good.output["passed"] == true);

    // hand-corrupt one C entry: Delta C = I must fail and exit 5
    FrameDoc bad = *doc.frame;
    bad.c(0, 0) += 1;
    doc.frame = bad;
    std::ofstream(tmp_path("vbad.json")) << dump_canonical(document_to_json(doc));
    const RunResult fail = run("verify --in " + tmp_path("vbad.json"), "v2.json");
    CHECK(fail.exit_code == 5);
    CHECK(fail.output["checks"]["delta_c_identity"] == false);
}

TEST_CASE("cmd verify passes on every frame of the worked-example trace") {
    const Seed b0(fixtures::example_B0());
    const Seed b1 = mutate_B(b0, 2);
    const Seed b2 = mutate_B(b1, 0);
    ComplementFrame cf(ClusterFrame::signed_identity(4, -1), 0, -1);
    const std::vector<std::pair<Seed, ComplementFrame>> stations = [&] {
        std::vector<std::pair<Seed, ComplementFrame>> out;
        out.push_back({b2, cf});
        cf = mutate_simples(b2, cf, 0);
        out.push_back({b1, cf});
        cf = mutate_simples(b1, cf, 2);
        out.push_back({b0, cf});
        return out;
    }();
    int idx = 0;
    for (const auto& [seed, frame] : stations) {
        SeedDocument doc{seed, {}, std::nullopt, std::nullopt, std::nullopt};
        doc.frame = FrameDoc{frame.frame.delta(), frame.frame.c(), frame.eps_row, frame.sign};
        const std::string in = tmp_path("trace" + std::to_string(idx) + ".json");
        std::ofstream(in) << dump_canonical(document_to_json(doc));
        const RunResult r = run("verify --in " + in, "tv" + std::to_string(idx) + ".json");
        CHECK(r.exit_code == 0);
        CHECK(r.output["passed"] == true);
        CHECK(r.output["checks"]["certificate"] == true);
        ++idx;
    }
}

TEST_CASE("cmd complement reports the certificate") {
    const std::string in = tmp_path("ex.json");
    write_example_doc(in);
    const RunResult r = run("complement --in " + in + " --eps eps", "c1.json");
    REQUIRE(r.exit_code == 0);
    CHECK(r.output["certificate"] == true);
}

TEST_CASE("cmd oracle-check emits the locked convention") {
    const std::string in = write_a3_doc();
    const RunResult r = run("oracle-check --in " + in + " --eps eps", "oc.json");
    REQUIRE(r.exit_code == 0);
    CHECK(r.output["locked_convention"] == to_string(ArrowConvention::forward));
    CHECK(r.output["oracle_report"]["passed"] == true);
}

TEST_CASE("exit codes") {
    SUBCASE("parse error is 2") {
        std::ofstream(tmp_path("bad.json")) << "{ not json";
        CHECK(run("mutate --in " + tmp_path("bad.json"), "e1.json").exit_code == 2);
        std::ofstream(tmp_path("nover.json")) << "{\"B\": [[0,1],[-1,0]]}";
        CHECK(run("mutate --in " + tmp_path("nover.json"), "e2.json").exit_code == 2);
    }
    SUBCASE("index error is 3") {
        const std::string in = tmp_path("ex.json");
        write_example_doc(in);
        CHECK(run("mutate --in " + in + " --seq 9", "e3.json").exit_code == 3);
    }
    SUBCASE("not reachable is 4") {
        const std::string in = tmp_path("ex.json");
        write_example_doc(in);
        CHECK(run("project --in " + in + " --eps eps --depth 1", "e4.json").exit_code == 4);
    }
    SUBCASE("convention mismatch is 6") {
        // arrows that do not present B under the locked convention
        const IntMatrix b = IntMatrix::from_rows({{0, 1, 0}, {-1, 0, 1}, {0, -1, 0}});
        SeedDocument doc{Seed(b), {}, std::nullopt, std::nullopt, std::nullopt};
        doc.deltas["eps"] = DeltaVector{1, 0, -1};
        doc.arrows = Quiver{3, {{1, 0}, {2, 1}}}; // reversed arrows
        std::ofstream(tmp_path("conv.json")) << dump_canonical(document_to_json(doc));
        CHECK(run("project --in " + tmp_path("conv.json") + " --eps eps --verify", "e6.json").exit_code ==
              6);
    }
}

TEST_CASE("cmd mutate with an empty sequence is the identity") {
    const std::string in = tmp_path("ex.json");
    write_example_doc(in);
    const RunResult r = run("mutate --in " + in, "mid.json");
    REQUIRE(r.exit_code == 0);
    CHECK(matrix_from_json(r.output["B"]) == fixtures::example_B0());
    CHECK(vector_from_json(r.output["delta"]["eps"]) == fixtures::example_eps());
}
