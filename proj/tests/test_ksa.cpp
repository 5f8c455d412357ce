#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "topopools/ksa.hpp"

using namespace topopools;

TEST_CASE("gen_ksa", "[ksa]") {
    SECTION("consensus is the k=1 degenerate: one output simplex") {
        const KsaTask task = gen_ksa(2, 1, {0});
        REQUIRE(task.output.facet_count() == 1);
        REQUIRE(task.output.dim() == 2);
        REQUIRE(components(task.output).size() == 1);
    }
    SECTION("k=2 yields two disjoint triangles") {
        const KsaTask task = gen_ksa(2, 2, {0, 1});
        REQUIRE(task.output.facet_count() == 2);
        REQUIRE(components(task.output).size() == 2);
        const auto& fs = task.output.facets();
        REQUIRE(fs[0].disjoint_from(fs[1]));
    }
    SECTION("k beyond the member count is rejected") {
        REQUIRE_THROWS_AS(gen_ksa(1, 3, {0, 1, 2}), ArgumentError);
    }
    SECTION("output components are uniformly and distinctly labeled") {
        const KsaTask task = gen_ksa(3, 3, {7, 8, 9});
        REQUIRE(components(task.output).size() == 3);
        std::set<int> labels;
        for (const Simplex& f : task.output.facets()) {
            std::set<int> values;
            for (const Vertex& v : f.vertices())
                values.insert(*std::get_if<AgentLabel>(&v.payload())->value);
            REQUIRE(values.size() == 1);
            labels.insert(*values.begin());
        }
        REQUIRE(labels == std::set<int>{7, 8, 9});
    }
    SECTION("the task carrier is total and monotonic") {
        const KsaTask task = gen_ksa(2, 2, {0, 1});
        REQUIRE(check_monotonic(task.delta, task.n + 2).ok);
        for (const Simplex& f : task.input.facets())
            REQUIRE(task.delta.value(f)->size() == task.output.facet_count());
    }
    SECTION("duplicate output values are rejected") {
        REQUIRE_THROWS_AS(gen_ksa(2, 2, {0, 0}), ArgumentError);
    }
}

TEST_CASE("ksa_solvable", "[ksa]") {
    REQUIRE(ksa_solvable(1).solvable);
    REQUIRE(ksa_solvable(2).solvable);
    REQUIRE_FALSE(ksa_solvable(3).solvable);
    REQUIRE_FALSE(ksa_solvable(4).solvable);
    REQUIRE(!ksa_solvable(1).citation.empty());
    REQUIRE_THROWS_AS(ksa_solvable(0), ArgumentError);

    SECTION("monotone non-increasing in k") {
        bool previous = true;
        for (int k = 1; k <= 8; ++k) {
            const bool now = ksa_solvable(k).solvable;
            REQUIRE((previous || !now));
            previous = now;
        }
    }
}

TEST_CASE("build_2sa_to_2dp", "[ksa][reduction]") {
    SECTION("(2,1,1): verified simulation with the frozen witness M=1") {
        const TwoSaReduction red = build_2sa_to_2dp(PoolConfig::from_sizes({2, 1, 1}), 64);
        REQUIRE(red.m_witness == 1);
        REQUIRE(red.materialized);
        REQUIRE(red.verified);
        REQUIRE(red.phi.has_value());
        REQUIRE(is_simplicial(*red.phi).ok);
        REQUIRE(check_simulation(*red.phi, red.real_protocol->xi, red.virtual_protocol->xi).ok);
        // Lemma-7 shape at the witness: the swap complex spans dim(I).
        REQUIRE(red.virtual_protocol->protocol_complex.dim() >=
                red.real_protocol->input.dim());
        REQUIRE(red.report.direction == "2SA->2DP");
        REQUIRE(red.report.m == 1);
    }
    SECTION("(2,2,1,1): verified with the frozen witness M=2") {
        const TwoSaReduction red = build_2sa_to_2dp(PoolConfig::from_sizes({2, 2, 1, 1}), 64);
        REQUIRE(red.m_witness == 2);
        REQUIRE(red.verified);
    }
    SECTION("protocol carriers are monotonic") {
        const TwoSaReduction red = build_2sa_to_2dp(PoolConfig::from_sizes({2, 1, 1}), 64);
        REQUIRE(check_monotonic(red.real_protocol->xi, 3).ok);
        REQUIRE(check_monotonic(red.virtual_protocol->xi, 3).ok);
    }
    SECTION("equal pools have no two-size reduction") {
        REQUIRE_THROWS_AS(build_2sa_to_2dp(PoolConfig::from_sizes({3, 3}), 64), ArgumentError);
    }
    SECTION("a zero bound leaves no adequate M") {
        REQUIRE_THROWS_AS(build_2sa_to_2dp(PoolConfig::from_sizes({2, 1, 1}), 0),
                          BoundExceeded);
    }
    SECTION("beyond the facet cap the witness is still reported, unverified") {
        Caps caps;
        caps.facet_cap = 2; // even one chromatic round overflows
        const TwoSaReduction red = build_2sa_to_2dp(PoolConfig::from_sizes({2, 1, 1}), 64, caps);
        REQUIRE(red.m_witness == 1);
        REQUIRE_FALSE(red.materialized);
        REQUIRE_FALSE(red.verified);
    }
}

TEST_CASE("build_kdp_to_ksa", "[ksa][reduction]") {
    SECTION("(4,3,2): three disjoint placements inside Ch of the largest simplex") {
        const KdpReduction red = build_kdp_to_ksa(PoolConfig::from_sizes({4, 3, 2}));
        REQUIRE(red.k == 3);
        REQUIRE(red.verified);
        REQUIRE(red.targets.size() == 3);
        REQUIRE(is_simplicial(red.phi).ok);
        const auto& reps = red.phi.domain().facets();
        REQUIRE(reps.size() == 3);
        for (std::size_t a = 0; a < reps.size(); ++a) {
            REQUIRE(red.phi.image(reps[a]).size() == reps[a].size()); // injective per class
            for (std::size_t b = a + 1; b < reps.size(); ++b)
                REQUIRE(red.phi.image(reps[a]).disjoint_from(red.phi.image(reps[b])));
        }
        REQUIRE(red.report.citation == "Theorem 3");
    }
    SECTION("(5,4,3,2): k=4 placement inside Ch of the 4-simplex") {
        const KdpReduction red = build_kdp_to_ksa(PoolConfig::from_sizes({5, 4, 3, 2}));
        REQUIRE(red.k == 4);
        REQUIRE(red.verified);
        REQUIRE(red.targets.size() == 4);
        for (std::size_t a = 0; a < red.targets.size(); ++a)
            for (std::size_t b = a + 1; b < red.targets.size(); ++b)
                REQUIRE(red.targets[a].disjoint_from(red.targets[b]));
    }
    SECTION("two distinct sizes are not enough") {
        REQUIRE_THROWS_AS(build_kdp_to_ksa(PoolConfig::from_sizes({3, 2})), ArgumentError);
    }
}
