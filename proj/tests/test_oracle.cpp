#include <doctest.h>

#include <algorithm>

#include "golden.hpp"
#include "qproj/oracle.hpp"

using namespace qproj;

namespace {

PathAlgebra a2() { return PathAlgebra(Quiver{2, {{0, 1}}}); }
PathAlgebra a3() { return PathAlgebra(Quiver{3, {{0, 1}, {1, 2}}}); }

DeltaVector dv(std::initializer_list<long> xs) {
    DeltaVector out;
    for (long x : xs) out.push_back(x);
    return out;
}

} // namespace

TEST_CASE("path enumeration") {
    CHECK(PathAlgebra(Quiver{1, {}}).path_count() == 1);
    CHECK(a2().path_count() == 3);
    CHECK(a3().path_count() == 6);
    CHECK(a3().projective_dims(0) == std::vector<Int>{1, 1, 1});
    CHECK(a3().projective_dims(2) == std::vector<Int>{0, 0, 1});
    CHECK_THROWS_AS(PathAlgebra(Quiver{2, {{0, 1}, {1, 0}}}), cyclic_quiver_error);
    CHECK_THROWS_AS(PathAlgebra(Quiver{1, {{0, 0}}}), cyclic_quiver_error);
}

TEST_CASE("b_matrix conventions and quiver_from_matrix") {
    const PathAlgebra pa = a3();
    CHECK(pa.b_matrix(ArrowConvention::forward) ==
          IntMatrix::from_rows({{0, 1, 0}, {-1, 0, 1}, {0, -1, 0}}));
    CHECK(pa.b_matrix(ArrowConvention::reverse) == -pa.b_matrix(ArrowConvention::forward));
    const Quiver q = quiver_from_matrix(pa.b_matrix(ArrowConvention::forward));
    CHECK(PathAlgebra(q).b_matrix(ArrowConvention::forward) == pa.b_matrix(ArrowConvention::forward));
}

TEST_CASE("sampling determinism and degenerate weights") {
    const PathAlgebra pa = a2();
    const auto s1 = sample_presentation(pa, dv({1, -1}), 42);
    const auto s2 = sample_presentation(pa, dv({1, -1}), 42);
    CHECK(s1.coeff == s2.coeff);
    const auto s3 = sample_presentation(pa, dv({1, -1}), 43);
    CHECK(s1.coeff != s3.coeff);

    // delta = e_i is the unique zero map 0 -> P_i, delta = -e_i is P_i -> 0
    const auto pos = sample_presentation(pa, dv({1, 0}), 1);
    CHECK(pos.minus_vertex.empty());
    const auto neg = sample_presentation(pa, dv({-1, 0}), 1);
    CHECK(neg.plus_vertex.empty());

    // E(0 -> P_i, anything) = 0
    const auto any = sample_presentation(pa, dv({1, -1}), 7);
    CHECK(hom_e_dims(pos, any).e == 0);
    // E(P_i -> 0, N) has dimension dim N(i)
    const auto he = hom_e_dims(neg, any);
    CHECK(he.e == he.dim_N[0]);
}

TEST_CASE("cokernel dimension vectors of known weights") {
    const PathAlgebra pa = a3();
    const auto probe = [&](const DeltaVector& d, std::uint64_t seed) {
        const auto s = sample_presentation(pa, d, seed);
        const auto zero = sample_presentation(pa, dv({0, 0, 0}), seed);
        // hom_e_dims(zero, s) exposes coker(s) through dim_N
        return hom_e_dims(zero, s).dim_N;
    };
    CHECK(probe(dv({1, 0, 0}), 3) == std::vector<long>{1, 1, 1});  // the big projective
    CHECK(probe(dv({0, 0, 1}), 3) == std::vector<long>{0, 0, 1});  // simple projective
    CHECK(probe(dv({1, -1, 0}), 3) == std::vector<long>{1, 0, 0}); // top simple
    CHECK(probe(dv({0, 1, -1}), 3) == std::vector<long>{0, 1, 0}); // middle simple
    CHECK(probe(dv({2, 0, -1}), 3) == std::vector<long>{2, 2, 1}); // generic corank-one quotient
    CHECK(probe(dv({-1, 0, 0}), 3) == std::vector<long>{0, 0, 0}); // negative: zero cokernel
}

TEST_CASE("generic e table on A2") {
    const PathAlgebra pa = a2();
    const std::vector<DeltaVector> w{dv({1, 0}), dv({0, 1}), dv({1, -1}), dv({-1, 0}), dv({0, -1})};
    // frozen from an independent prototype run (exhaustive checks on A2)
    const long expected[5][5] = {
        {0, 0, 0, 0, 0},
        {0, 0, 0, 0, 0},
        {0, 1, 0, 0, 0},
        {1, 0, 1, 0, 0},
        {1, 1, 0, 0, 0},
    };
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) CHECK(generic_e(pa, w[i], w[j]) == expected[i][j]);
}

TEST_CASE("generic_e(-e_i, -e_i) is constant across trials") {
    const PathAlgebra pa = a3();
    OracleOptions one;
    one.trials = 1;
    OracleOptions many;
    many.trials = 7;
    // unique presentation: no randomness at all
    CHECK(generic_e(pa, dv({-1, 0, 0}), dv({-1, 0, 0}), one) ==
          generic_e(pa, dv({-1, 0, 0}), dv({-1, 0, 0}), many));
    // E(P_i[1], coker(P_i[1])) = E(P_i[1], 0) = 0
    CHECK(generic_e(pa, dv({-1, 0, 0}), dv({-1, 0, 0})) == 0);
    // against a positive weight the value is hom(P_i, -) of the cokernel
    CHECK(generic_e(pa, dv({-1, 0, 0}), dv({1, 0, 0}), one) == 1);
    CHECK(generic_e(pa, dv({-1, 0, 0}), dv({1, 0, 0}), one) ==
          generic_e(pa, dv({-1, 0, 0}), dv({1, 0, 0}), many));
}

TEST_CASE("generic values stabilize within the default trial budget") {
    const PathAlgebra pa = a3();
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> entry(-2, 2);
    for (int t = 0; t < 10; ++t) {
        DeltaVector d1(3), d2(3);
        for (auto& x : d1) x = entry(rng);
        for (auto& x : d2) x = entry(rng);
        OracleOptions seven;
        seven.trials = 7;
        OracleOptions twelve;
        twelve.trials = 12;
        CHECK(generic_e(pa, d1, d2, seven) == generic_e(pa, d1, d2, twelve));
    }
}

TEST_CASE("rigid families on A2") {
    const PathAlgebra pa = a2();
    // the five clusters
    CHECK(is_rigid_family(pa, {dv({-1, 0}), dv({0, -1})}));
    CHECK(is_rigid_family(pa, {dv({1, -1}), dv({0, -1})}));
    CHECK(is_rigid_family(pa, {dv({1, -1}), dv({1, 0})}));
    CHECK(is_rigid_family(pa, {dv({1, 0}), dv({0, 1})}));
    CHECK(is_rigid_family(pa, {dv({0, 1}), dv({-1, 0})}));
    // non-rigid pairs
    CHECK_FALSE(is_rigid_family(pa, {dv({1, 0}), dv({-1, 0})}));
    CHECK_FALSE(is_rigid_family(pa, {dv({0, 1}), dv({0, -1})}));
    CHECK_FALSE(is_rigid_family(pa, {dv({1, -1}), dv({-1, 1})}));
}

TEST_CASE("rational fallback agrees with the prime field") {
    const PathAlgebra pa = a2();
    OracleOptions rat;
    rat.use_rational = true;
    rat.trials = 3;
    OracleOptions fp;
    fp.trials = 3;
    for (const auto& d1 : {dv({1, -1}), dv({-1, 0}), dv({2, -1})})
        for (const auto& d2 : {dv({1, -1}), dv({0, -1}), dv({1, 0})})
            CHECK(generic_e(pa, d1, d2, rat) == generic_e(pa, d1, d2, fp));
}

TEST_CASE("homotopy invariance: neutral summands do not change generic e") {
    const PathAlgebra pa = a3();
    OracleOptions opts;
    const std::vector<std::pair<DeltaVector, DeltaVector>> pairs{
        {dv({1, -1, 0}), dv({0, 1, -1})},
        {dv({1, 0, -1}), dv({1, 0, -1})},
        {dv({-1, 2, -1}), dv({0, -1, 1})},
    };
    const std::vector<long> pad{1, 0, 1};
    for (const auto& [d1, d2] : pairs) {
        long plain = -1, padded_first = -1, padded_second = -1;
        for (int t = 0; t < opts.trials; ++t) {
            const auto sp1 = sample_presentation(pa, d1, 100 + t, opts);
            const auto sp2 = sample_presentation(pa, d2, 200 + t, opts);
            const auto pp1 = sample_presentation(pa, d1, 300 + t, opts, pad);
            const auto pp2 = sample_presentation(pa, d2, 400 + t, opts, pad);
            auto keep_min = [](long& acc, long v) { acc = acc < 0 ? v : std::min(acc, v); };
            keep_min(plain, hom_e_dims(sp1, sp2).e);
            keep_min(padded_first, hom_e_dims(pp1, sp2).e);
            keep_min(padded_second, hom_e_dims(sp1, pp2).e);
        }
        CHECK(plain == padded_first);
        CHECK(plain == padded_second);
    }
}

TEST_CASE("samples over different algebras are rejected") {
    const PathAlgebra p2 = a2();
    const PathAlgebra p3 = a3();
    const auto s2 = sample_presentation(p2, dv({1, -1}), 1);
    const auto s3 = sample_presentation(p3, dv({1, -1, 0}), 1);
    CHECK_THROWS_AS(hom_e_dims(s2, s3), precondition_error);
}

TEST_CASE("oracle caps are enforced") {
    const PathAlgebra pa = a2();
    CHECK_THROWS_AS(sample_presentation(pa, dv({13, 0}), 1), precondition_error);
    OracleOptions composite;
    composite.prime = 32001; // 3 * 10667
    CHECK_THROWS_AS(sample_presentation(pa, dv({1, -1}), 1, composite), precondition_error);
    Quiver big;
    big.n = 7;
    for (std::size_t i = 0; i + 1 < 7; ++i) big.arrows.push_back({i, i + 1});
    const PathAlgebra pa7(big);
    CHECK_THROWS_AS(sample_presentation(pa7, DeltaVector(7, Int(1)), 1), precondition_error);
}

TEST_CASE("calibration locks the forward convention") {
    CHECK(calibrate_convention() == ArrowConvention::forward);
    // negative control: the reverse reading must fail the probe, which is
    // what makes the calibration decisive (checked inside calibrate; here we
    // assert the probe is not vacuous by checking the reverse B directly)
    const PathAlgebra pa = a2();
    const Seed wrong(pa.b_matrix(ArrowConvention::reverse));
    SearchOptions so;
    so.max_depth = 8;
    so.max_states = 10000;
    bool failed = false;
    try {
        const ProjectionResult r = project_simple(wrong, dv({1, -1}), so);
        std::vector<DeltaVector> rows;
        for (std::size_t i = 0; i < r.complement.size(); ++i)
            rows.push_back(r.complement.frame.delta().row(i));
        failed = !is_rigid_family(pa, rows);
    } catch (const error&) {
        failed = true;
    }
    CHECK(failed);
}

TEST_CASE("verify_projection rejects a mismatched algebra") {
    const PathAlgebra pa = a3();
    const Seed wrong(-pa.b_matrix(ArrowConvention::forward));
    const DeltaVector eps = dv({0, 0, -1});
    const ProjectionResult r = project_simple(wrong, eps);
    CHECK_THROWS_AS(verify_projection(pa, wrong, eps, r), convention_mismatch_error);
}

TEST_CASE("verify_projection certifies worked cases") {
    SUBCASE("A2, weight of the non-projective simple") {
        const PathAlgebra pa = a2();
        const Seed s(pa.b_matrix(ArrowConvention::forward));
        const DeltaVector eps = dv({1, -1});
        SearchOptions so;
        SUBCASE("positive completion: exact certificate") {
            so.target = SearchTarget::positive;
            const ProjectionResult r = project_simple(s, eps, so);
            const VerifyReport rep = verify_projection(pa, s, eps, r, so);
            CHECK(rep.rigid_family);
            CHECK(rep.unimodular);
            CHECK(rep.sign_pattern);
            CHECK(rep.plus_certificate_exact);
            CHECK(rep.passed());
        }
        SUBCASE("negative completion: necessary conditions plus cross-check") {
            so.target = SearchTarget::negative;
            const ProjectionResult r = project_simple(s, eps, so);
            const VerifyReport rep = verify_projection(pa, s, eps, r, so);
            CHECK(rep.rigid_family);
            CHECK(rep.plus_minus_agree);
            CHECK(rep.passed());
        }
    }
    SUBCASE("A3, random reachable weights") {
        const PathAlgebra pa = a3();
        const Seed s(pa.b_matrix(ArrowConvention::forward));
        std::mt19937_64 rng(19);
        std::uniform_int_distribution<std::size_t> pick(0, 2);
        int done = 0;
        while (done < 10) {
            // reachable weight: forward transport of a negative unit along a
            // closed random walk over the A3 seed
            DeltaVector d(3, 0);
            d[pick(rng)] = -1;
            Seed cur = s;
            for (int step = 0; step < 4; ++step) {
                const std::size_t k = pick(rng);
                d = mutate_delta(cur, d, k);
                cur = mutate_B(cur, k);
            }
            if (cur.B != s.B) continue;
            SearchOptions so;
            so.max_depth = 12;
            const ProjectionResult r = project_simple(s, d, so);
            const VerifyReport rep = verify_projection(pa, s, d, r, so);
            CHECK(rep.passed());
            ++done;
        }
    }
    SUBCASE("corrupted complement row fails the certificate") {
        const PathAlgebra pa = a2();
        const Seed s(pa.b_matrix(ArrowConvention::forward));
        const DeltaVector eps = dv({1, -1});
        SearchOptions so;
        so.target = SearchTarget::positive;
        ProjectionResult r = project_simple(s, eps, so);
        // swap the complement row for an incompatible weight, keeping the
        // frame shape legal
        const std::size_t comp = r.complement.eps_row == 0 ? 1 : 0;
        IntMatrix delta = r.complement.frame.delta();
        DeltaVector bad = eps;
        for (auto& x : bad) x = -x;
        delta.set_row(comp, bad);
        Int det = bareiss_determinant(delta);
        if (det == 1 || det == -1) {
            bool sane = true;
            ComplementFrame corrupted = r.complement;
            try {
                corrupted = ComplementFrame(ClusterFrame(delta, unimodular_inverse(delta)),
                                            r.complement.eps_row, r.complement.sign);
            } catch (const error&) {
                sane = false; // frame invariants already reject it
            }
            if (sane) {
                r.complement = corrupted;
                const VerifyReport rep = verify_projection(pa, s, eps, r, so);
                CHECK_FALSE(rep.passed());
            }
        }
    }
}

TEST_CASE("minimal lift values on A2 and A3") {
    SUBCASE("A2, eps = (1,-1)") {
        const PathAlgebra pa = a2();
        const Seed s(pa.b_matrix(ArrowConvention::forward));
        const ProjectionResult r = project_simple(s, dv({1, -1}), [] {
            SearchOptions so;
            so.target = SearchTarget::negative;
            return so;
        }());
        CHECK(minimal_lift_a(pa, r.complement, dv({-1}), 6) == 0);
        CHECK(minimal_lift_a(pa, r.complement, dv({1}), 6) == 1);
        CHECK(minimal_lift_a(pa, r.complement, dv({2}), 6) == 2);
    }
    SUBCASE("matching-sign units lift to complement rows at a = 0") {
        // on the + completion, d_perp = +e_i lifts to the i-th complement
        // row itself, which is compatible with eps
        const PathAlgebra pa = a3();
        const Seed s(pa.b_matrix(ArrowConvention::forward));
        const DeltaVector eps = dv({1, 0, -1});
        SearchOptions so;
        so.target = SearchTarget::positive;
        const ProjectionResult r = project_simple(s, eps, so);
        for (std::size_t i = 0; i < 2; ++i) {
            DeltaVector dp(2, 0);
            dp[i] = 1;
            CHECK(minimal_lift_a(pa, r.complement, dp, 6) == 0);
        }
    }
    SUBCASE("A3, eps = (1,0,-1): frozen table") {
        const PathAlgebra pa = a3();
        const Seed s(pa.b_matrix(ArrowConvention::forward));
        const DeltaVector eps = dv({1, 0, -1});
        const ProjectionResult r = project_simple(s, eps, [] {
            SearchOptions so;
            so.target = SearchTarget::negative;
            return so;
        }());
        const std::pair<DeltaVector, long> table[] = {
            {dv({1, 0}), 1},  {dv({0, 1}), 1},  {dv({-1, 0}), 0}, {dv({0, -1}), 0},
            {dv({1, -1}), 1}, {dv({1, 1}), 2},  {dv({2, 1}), 3},
        };
        for (const auto& [dp, a] : table) CHECK(minimal_lift_a(pa, r.complement, dp, 6) == a);
    }
    SUBCASE("matches exhaustive scan over the candidate family") {
        const PathAlgebra pa = a3();
        const Seed s(pa.b_matrix(ArrowConvention::forward));
        const DeltaVector eps = dv({1, 0, -1});
        const ProjectionResult r = project_simple(s, eps, [] {
            SearchOptions so;
            so.target = SearchTarget::negative;
            return so;
        }());
        const DeltaVector dp = dv({1, 1});
        const LiftFamily fam = lift_delta_candidates(r.complement, dp);
        long brute = -1;
        for (long a = 0; a <= 6; ++a) {
            const DeltaVector cand = fam.at(a);
            if (generic_e(pa, cand, eps) == 0 && generic_e(pa, eps, cand) == 0) {
                brute = a;
                break;
            }
        }
        CHECK(minimal_lift_a(pa, r.complement, dp, 6) == brute);
        // past the vanishing point the lift decomposes: pushing forward
        // still returns dp for every a
        for (long a : {brute, brute + 1, brute + 3})
            CHECK(pushforward_delta(fam.at(a), extract_Ceperp(r.complement)) == dp);
    }
    SUBCASE("not_found past the cap") {
        const PathAlgebra pa = a2();
        const Seed s(pa.b_matrix(ArrowConvention::forward));
        const ProjectionResult r = project_simple(s, dv({1, -1}), [] {
            SearchOptions so;
            so.target = SearchTarget::negative;
            return so;
        }());
        CHECK_THROWS_AS(minimal_lift_a(pa, r.complement, dv({3}), 2), not_found_error);
    }
}
