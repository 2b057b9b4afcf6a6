#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "spectile/constructions.hpp"
#include "spectile/errors.hpp"
#include "spectile/io.hpp"

using namespace spectile;
using nlohmann::json;
using spectile::testing::ints;
using spectile::testing::random_subset;

namespace {

const Step* find_step(const Certificate& c, const std::string& id) {
    for (const auto& s : c.steps)
        if (s.step_id == id) return &s;
    return nullptr;
}

std::size_t count_prefix(const Certificate& c, const std::string& prefix) {
    std::size_t n = 0;
    for (const auto& s : c.steps) n += s.step_id.rfind(prefix, 0) == 0;
    return n;
}

// Brute-force sumset for oracle comparisons.
GroupSubset sumset(const GroupSubset& a, const GroupSubset& b) {
    std::vector<Index> idx;
    for (auto x : a.members())
        for (auto y : b.members()) idx.push_back(a.group().add(x, y));
    return GroupSubset(a.group(), idx);
}

}  // namespace

TEST_CASE("E and K") {
    auto e = build_E();
    CHECK(e.size() == 6);
    CHECK(e.contains(Index{0}));
    CHECK(difference_set(e).size() == 31);

    auto k = build_K();
    CHECK(k.size() == 6);
    CHECK(k.contains(Elem{{0, 0, 0, 0, 0}}));
    CHECK(k.contains(Elem{{0, 2, 2, 4, 4}}));
    for (const auto& x : k.elems())
        for (auto c : x.coords) CHECK(c % 2 == 0);
}

TEST_CASE("K' is log-Hadamard over cube roots") {
    auto kp = build_K_prime();
    CHECK(kp.rows() == 6);
    CHECK(kp.common_denominator() == 3);
    CHECK(is_log_hadamard(kp));
    // the set-level pairing table is a row/column permutation of K'
    auto m = pairing_matrix(build_K(), build_E());
    CHECK(is_log_hadamard(m));
    CHECK(m.common_denominator() == 3);
}

TEST_CASE("covering permutations") {
    auto vs = find_covering_permutations();
    REQUIRE(vs.size() == 15);
    CHECK(vs.front() == Elem{{1, 2, 3, 4, 5}});
    auto g = usc_group();
    auto w = difference_set(build_K());
    // 2 v_1 and 4 v_1 are the elements of K - K it covers
    CHECK(w.contains(Elem{{2, 4, 0, 2, 4}}));
    CHECK(w.contains(Elem{{4, 2, 0, 4, 2}}));

    // each nonzero w of K - K is 2v or 4v for exactly one chosen v
    std::map<Index, int> hits;
    for (const auto& v : vs) {
        auto sorted = v.coords;
        std::sort(sorted.begin(), sorted.end());
        CHECK(sorted == std::vector<std::int64_t>{1, 2, 3, 4, 5});
        auto vi = g.index_of(v);
        for (std::int64_t m = 1; m < 6; ++m)
            if (w.contains(g.scale(vi, m))) ++hits[g.scale(vi, m)];
    }
    CHECK(hits.size() == 30);
    for (auto [x, n] : hits) CHECK(n == 1);
    CHECK(find_covering_permutations() == vs);
}

TEST_CASE("USC bundle invariants") {
    auto b = build_usc_bundle();
    REQUIRE(b.kernels.size() == 15);
    for (std::size_t j = 0; j < 15; ++j) {
        CHECK(b.kernels[j] == kernel_of_functional(Functional(b.group, b.vectors[j], 6)));
        CHECK(is_tiling(b.E, b.kernels[j], 1));
    }
    auto ob = universal_obstruction(b.kernels, difference_set(b.K));
    CHECK(ob.holds);
    CHECK(ob.witness.size() == 30);
    CHECK(is_spectrum(b.E, b.K));
}

TEST_CASE("USC certificate content") {
    auto c = build_usc_certificate();
    CHECK(c.status == Status::verified_true);
    CHECK(count_prefix(c, "tiling.T") == 15);
    auto ob = find_step(c, "obstruction");
    REQUIRE(ob);
    CHECK(ob->outputs["witness_count"] == 30);
    auto nt = find_step(c, "K.non_tile");
    REQUIRE(nt);
    CHECK(nt->outputs["generated_order"] == 81);
    auto concl = find_step(c, "no_universal_spectrum");
    REQUIRE(concl);
    CHECK(concl->kind == StepKind::proof_level);
    CHECK_FALSE(concl->citation.empty());
}

TEST_CASE("compose_tiling examples") {
    Group z4({4});
    CompositionInput in{z4, {2}, {ints(z4, {0}), ints(z4, {0})}, ints(z4, {0, 2}), {Elem{{0}}, Elem{{1}}},
                        {Elem{{0}}}, {Elem{{0}}, Elem{{1}}}};
    auto r = compose_tiling(in);
    REQUIRE(r.violations.empty());
    CHECK(r.verified);
    CHECK(*r.gamma == ints(z4, {0, 1}));
    CHECK(*r.partner == ints(z4, {0, 2}));

    // k = 1, H = G
    Group z6({6});
    CompositionInput one{z6, {1}, {ints(z6, {0, 3})}, ints(z6, {0, 1, 2}), {Elem{{0}}}, {Elem{{0}}}, {Elem{{0}}}};
    auto r1 = compose_tiling(one);
    REQUIRE(r1.violations.empty());
    CHECK(*r1.gamma == ints(z6, {0, 3}));
    CHECK(*r1.partner == ints(z6, {0, 1, 2}));
}

TEST_CASE("compose_tiling reproduces Gamma with complement E~") {
    auto gb = build_gamma(GammaVariant::z15);
    auto usc = build_usc_bundle();
    CompositionInput in{gb.group, {1, 1, 1, 1, 1, 15}, {}, GroupSubset(gb.group, {}), {}, {Elem{{0}}}, {}};
    for (std::size_t j = 0; j < 15; ++j) in.parts.push_back(extend_by_zero(usc.kernels[j], gb.group));
    in.common = gb.E_tilde;
    for (std::int64_t j = 0; j < 15; ++j) {
        in.quotient_set.push_back(Elem{{j}});
        in.representatives.push_back(Elem{{0, 0, 0, 0, 0, j}});
    }
    auto r = compose_tiling(in);
    REQUIRE(r.violations.empty());
    CHECK(r.verified);
    CHECK(*r.gamma == gb.gamma);
    CHECK(*r.partner == gb.E_tilde);
}

TEST_CASE("compose_tiling reports each violated precondition") {
    Group z4({4});
    CompositionInput in{z4, {2}, {ints(z4, {1}), ints(z4, {0})}, ints(z4, {0, 2}), {Elem{{0}}, Elem{{1}}},
                        {Elem{{0}}, Elem{{1}}}, {Elem{{0}}, Elem{{0}}}};
    auto r = compose_tiling(in);
    CHECK_FALSE(r.gamma.has_value());
    // part outside H, representative 2 with wrong projection
    CHECK(r.violations.size() == 2);

    in.parts[0] = ints(z4, {0});
    in.representatives[1] = Elem{{1}};
    auto r2 = compose_tiling(in);
    REQUIRE(r2.violations.size() == 1);
    CHECK(r2.violations[0].find("quotient_set + quotient_partner") != std::string::npos);

    in.divisors = {3};
    CHECK_FALSE(compose_tiling(in).violations.empty());
}

TEST_CASE("compose_spectral examples") {
    Group z4({4});
    CompositionInput in{z4, {2}, {ints(z4, {0, 2}), ints(z4, {0, 2})}, ints(z4, {0, 1}), {Elem{{0}}, Elem{{1}}},
                        {Elem{{0}}, Elem{{1}}}, {Elem{{0}}, Elem{{1}}}};
    auto r = compose_spectral(in);
    REQUIRE(r.violations.empty());
    CHECK(r.verified);
    CHECK(r.gamma->size() == 4);
    CHECK(is_spectrum(*r.gamma, *r.partner));

    // k = 1, H = G: the spectrum is L itself; the E/K pair comes back out
    auto g = usc_group();
    CompositionInput ek{g, {1, 1, 1, 1, 1}, {build_E()}, build_K(), {Elem{{0}}}, {Elem{{0}}}, {g.zero()}};
    auto rk = compose_spectral(ek);
    REQUIRE(rk.violations.empty());
    CHECK(rk.verified);
    CHECK(*rk.gamma == build_E());
    CHECK(*rk.partner == build_K());

    // L not a common spectrum
    in.common = ints(z4, {0, 2});
    CHECK_FALSE(compose_spectral(in).violations.empty());
}

TEST_CASE("compose_spectral output verifies on random instances") {
    // G = Z_4 x Z_6, H = 2Z_4 x 3Z_6, G/H = Z_2 x Z_3
    std::mt19937_64 rng(211);
    Group g({4, 6});
    auto q = coordinate_quotient(g, {2, 3});
    auto h = q.kernel();
    int built = 0;
    for (int t = 0; t < 200 && built < 20; ++t) {
        auto a = random_subset(g, rng, 0.3);
        std::vector<Index> in_h;
        for (auto x : a.members())
            if (h.contains(x)) in_h.push_back(x);
        if (in_h.empty()) continue;
        auto part = GroupSubset(g, in_h);
        auto l = find_spectrum(part);
        if (!l.spectrum) continue;
        // Q = Q' = whole quotient Z_2 x Z_3 is spectral
        CompositionInput in{g, {2, 3}, {}, *l.spectrum, {}, {}, {}};
        for (Index s = 0; s < q.quotient().order(); ++s) {
            in.parts.push_back(part);
            in.quotient_set.push_back(q.quotient().element(s));
            in.quotient_partner.push_back(q.quotient().element(s));
            in.representatives.push_back(q.lift_element(q.quotient().element(s)));
        }
        auto r = compose_spectral(in);
        REQUIRE(r.violations.empty());
        REQUIRE(r.verified);
        ++built;
    }
    CHECK(built >= 5);
}

TEST_CASE("composition bundle JSON") {
    auto j = json::parse(R"({
        "moduli": [4], "divisors": [2],
        "parts": [[[0]], [[0]]], "common": [[0], [2]],
        "quotient_set": [[0], [1]], "quotient_partner": [[0]],
        "representatives": [[0], [1]]})");
    auto in = composition_from_json(j);
    auto c = compose_certificate("tiling", in);
    CHECK(c.status == Status::verified_true);
    CHECK(compose_certificate("spectral", in).status == Status::verified_false);
    CHECK_THROWS_AS(compose_certificate("other", in), std::invalid_argument);

    j["parts"][1][0][0] = 9;
    try {
        composition_from_json(j);
        FAIL("accepted out-of-range part");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()) == "parts[1][0][0]: 9 outside [0, 4)");
    }
    j.erase("divisors");
    CHECK_THROWS_AS(composition_from_json(j), InputError);
}

TEST_CASE("Gamma bundles") {
    auto z15 = build_gamma(GammaVariant::z15);
    CHECK(z15.gamma.size() == 19440);
    CHECK(z15.group.order() == 116640);
    CHECK(z15.gamma.size() * z15.E_tilde.size() == 116640);
    CHECK(is_tiling(z15.gamma, z15.E_tilde, 1));
    CHECK(z15.offsets.size() == 15);

    auto z17 = build_gamma(GammaVariant::z17);
    CHECK(z17.gamma.size() == 22032);
    CHECK(z17.gamma.size() * 6 == 132192);
    CHECK(z17.group.order() == 132192);
    CHECK(z17.kernel_of_offset[15] == 13);
    CHECK(z17.kernel_of_offset[16] == 14);
    CHECK(is_tiling(z17.gamma, z17.E_tilde, 1));

    CHECK(gamma_variant_from_string("z17") == GammaVariant::z17);
    CHECK_THROWS_AS(gamma_variant_from_string("z16"), std::invalid_argument);
}

TEST_CASE("Gamma certificates") {
    for (auto v : {GammaVariant::z15, GammaVariant::z17}) {
        auto c = gamma_nonspectral_certificate(v);
        CHECK(c.status == Status::verified_true);
        CHECK(count_prefix(c, "transform.w") == 30);
        int doubled = 0;
        for (const auto& s : c.steps) {
            if (s.step_id.rfind("transform.w", 0) != 0) continue;
            auto m = s.outputs["multiple_of_1296"].get<std::int64_t>();
            CHECK(m >= 1);
            doubled += m == 2;
        }
        // z17 repeats two kernels, so exactly those four w are hit twice
        CHECK(doubled == (v == GammaVariant::z17 ? 4 : 0));
        auto nt = find_step(c, "K~.non_tile");
        REQUIRE(nt);
        CHECK(nt->outputs["generated_order"].get<std::int64_t>() % 2 == 1);
    }
}

TEST_CASE("grid and lift") {
    Group g({2, 3});
    CHECK(grid(g, 1) == GroupSubset::singleton_zero(g));
    auto a = ints(g, {0, 4, 5});
    CHECK(lift(a, 1) == a);

    Group z2({2});
    CHECK(lift(ints(z2, {0, 1}), 3) == GroupSubset::whole(Group({6})));
    CHECK(grid(z2, 3) == ints(Group({6}), {0, 2, 4}));

    // lift = embed + grid, by brute force
    for (std::int64_t k = 1; k <= 3; ++k) {
        auto l = lift(a, k);
        CHECK(static_cast<std::int64_t>(l.size()) == static_cast<std::int64_t>(a.size()) * k * k);
        CHECK(l == sumset(embed_in_window(a, k), grid(g, k)));
    }
}

TEST_CASE("lift tiles whenever the base tiles, with the embedded complement") {
    std::mt19937_64 rng(223);
    for (auto moduli : std::vector<std::vector<std::int64_t>>{{2, 3}, {4}, {2, 2, 2}, {6}}) {
        Group g(moduli);
        for (int t = 0; t < 10; ++t) {
            auto a = random_subset(g, rng, 0.4);
            auto r = can_tile(a);
            if (!r.complement) continue;
            for (std::int64_t k = 1; k <= 3; ++k)
                CHECK(is_tiling(lift(a, k), embed_in_window(*r.complement, k), 1));
        }
    }
}

TEST_CASE("ft(lift(A,k), k xi) = k^d ft(A, xi)") {
    std::mt19937_64 rng(227);
    for (auto moduli : std::vector<std::vector<std::int64_t>>{{2, 3}, {4, 2}, {6}}) {
        Group g(moduli);
        for (std::int64_t k = 1; k <= 3; ++k) {
            auto a = random_subset(g, rng, 0.5);
            auto l = lift(a, k);
            auto w = l.group();
            std::int64_t kd = 1;
            for (std::size_t j = 0; j < g.dim(); ++j) kd *= k;
            for (Index xi = 0; xi < g.order(); ++xi) {
                auto base = ft_indicator_at(a, xi);
                auto fine = ft_indicator_at(l, embed_dual(g, g.element(xi), k));
                auto n = std::lcm(base.order(), fine.order());
                REQUIRE(cyc_equal(cyc_mul(cyc_embed(base, n), CycInt::constant(n, kd)), cyc_embed(fine, n)));
            }
        }
    }
}

TEST_CASE("lift_zero_structure_check") {
    for (auto [n, k] : std::vector<std::pair<std::vector<std::int64_t>, std::int64_t>>{
             {{2, 3}, 2}, {{6}, 3}, {{2, 3}, 3}, {{4, 2}, 2}, {{5}, 4}}) {
        auto r = lift_zero_structure_check(n, k);
        CHECK(r.matches);
        CHECK(r.zero_count == r.formula_count);
    }
    auto r1 = lift_zero_structure_check({2, 3}, 1);
    CHECK(r1.matches);
    CHECK(r1.zero_count == 0);
    CHECK(lift_zero_structure_check({2, 3}, 2).window_order == 24);
}

TEST_CASE("lifted obstruction") {
    auto c1 = lifted_obstruction_check(GammaVariant::z15, 1);
    CHECK(c1.status == Status::verified_true);
    // k = 1: the values are those of the Gamma certificate
    auto g = gamma_nonspectral_certificate(GammaVariant::z15);
    for (int i = 0; i < 30; ++i) {
        auto id = "transform.w" + std::to_string(i);
        CHECK(find_step(c1, id)->outputs["integer"] == find_step(g, id)->outputs["integer"]);
    }
    CHECK_THROWS_AS(lifted_obstruction_check(GammaVariant::z15, 3), std::length_error);
    CHECK_THROWS_AS(lifted_obstruction_check(GammaVariant::z15, 0), std::invalid_argument);
}
