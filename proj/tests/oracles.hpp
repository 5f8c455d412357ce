// Test-only oracles, independent of the library implementation paths
// they check. Counting is arithmetic (inclusion-exclusion, recurrences,
// lattice walks); structural checks re-derive the defining conditions
// from scratch.
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "topopools/complex.hpp"
#include "topopools/vertex.hpp"

namespace oracles {

inline std::int64_t powll(std::int64_t base, int exp) {
    std::int64_t out = 1;
    for (int i = 0; i < exp; ++i)
        out *= base;
    return out;
}

inline std::int64_t binomial(int n, int k) {
    if (k < 0 || k > n)
        return 0;
    std::int64_t out = 1;
    for (int i = 0; i < k; ++i)
        out = out * (n - i) / (i + 1);
    return out;
}

/// Surjections from a set of size n onto a set of size k, by
/// inclusion-exclusion.
inline std::int64_t surjections(int n, int k) {
    std::int64_t total = 0;
    for (int i = 0; i <= k; ++i)
        total += (i % 2 == 0 ? 1 : -1) * binomial(k, i) * powll(k - i, n);
    return total;
}

/// Ordered set partitions of n elements: one per surjection onto some
/// block count m (the blocks are the preimages, in value order).
inline std::int64_t ordered_set_partitions(int n) {
    std::int64_t total = 0;
    for (int m = 1; m <= n; ++m)
        total += surjections(n, m);
    return total;
}

/// Maximal chains of subsets of an n-element set, counted by walking
/// the subset lattice from the empty set upward one element at a time.
inline std::int64_t maximal_subset_chains(int n) {
    std::map<unsigned, std::int64_t> memo;
    const unsigned full = (1u << n) - 1;
    std::function<std::int64_t(unsigned)> walk = [&](unsigned state) -> std::int64_t {
        if (state == full)
            return 1;
        auto hit = memo.find(state);
        if (hit != memo.end())
            return hit->second;
        std::int64_t total = 0;
        for (int i = 0; i < n; ++i)
            if (!(state & (1u << i)))
                total += walk(state | (1u << i));
        memo[state] = total;
        return total;
    };
    return walk(0);
}

/// Pool-task output facet count: surjective assignments of the miners
/// onto the pools, minus the one assignment where everybody stays.
inline std::int64_t output_facets(int q, int total_miners) {
    return surjections(total_miners, q) - 1;
}

/// Same count by direct enumeration over all q^total assignments.
inline std::int64_t output_facets_enumerated(int q, const std::vector<int>& sizes) {
    int total = 0;
    for (int s : sizes)
        total += s;
    std::vector<int> home;
    for (int p = 0; p < static_cast<int>(sizes.size()); ++p)
        for (int j = 0; j < sizes[p]; ++j)
            home.push_back(p);
    std::int64_t count = 0;
    std::vector<int> views(total, 0);
    while (true) {
        std::set<int> used(views.begin(), views.end());
        bool moved = false;
        for (int i = 0; i < total; ++i)
            moved = moved || views[i] != home[i];
        if (static_cast<int>(used.size()) == q && moved)
            ++count;
        int pos = total - 1;
        while (pos >= 0 && views[pos] == q - 1)
            views[pos--] = 0;
        if (pos < 0)
            break;
        ++views[pos];
    }
    return count;
}

/// Component count via breadth-first search over the 1-skeleton vertex
/// graph (vertices adjacent when they share a facet).
inline int bfs_component_count(const topopools::Complex& c) {
    using topopools::Vertex;
    std::map<Vertex, std::set<Vertex>> adjacent;
    for (const auto& facet : c.facets()) {
        const auto& vs = facet.vertices();
        for (std::size_t i = 0; i < vs.size(); ++i) {
            adjacent[vs[i]]; // isolated vertices still get a node
            for (std::size_t j = i + 1; j < vs.size(); ++j) {
                adjacent[vs[i]].insert(vs[j]);
                adjacent[vs[j]].insert(vs[i]);
            }
        }
    }
    std::set<Vertex> seen;
    int comps = 0;
    for (const auto& [start, ignored] : adjacent) {
        if (seen.count(start))
            continue;
        ++comps;
        std::vector<Vertex> queue{start};
        seen.insert(start);
        while (!queue.empty()) {
            Vertex v = queue.back();
            queue.pop_back();
            for (const Vertex& w : adjacent[v])
                if (seen.insert(w).second)
                    queue.push_back(w);
        }
    }
    return comps;
}

/// The chromatic-subdivision simplex condition, re-derived: distinct
/// colors, carriers forming an inclusion chain, and each color's own
/// carrier minimal among the carriers containing it.
inline bool chromatic_condition(const std::vector<topopools::Vertex>& pairs) {
    using topopools::Simplex;
    const std::size_t n = pairs.size();
    for (std::size_t i = 0; i < n; ++i) {
        auto color_i = pairs[i].subdiv_color();
        if (!color_i)
            return false;
        auto carrier_i = pairs[i].subdiv_carrier();
        std::set<topopools::Vertex> set_i(carrier_i.begin(), carrier_i.end());
        if (!set_i.count(*color_i))
            return false;
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j)
                continue;
            auto color_j = pairs[j].subdiv_color();
            if (!color_j || *color_i == *color_j)
                return false;
            auto carrier_j = pairs[j].subdiv_carrier();
            std::set<topopools::Vertex> set_j(carrier_j.begin(), carrier_j.end());
            const bool i_in_j =
                std::includes(set_j.begin(), set_j.end(), set_i.begin(), set_i.end());
            const bool j_in_i =
                std::includes(set_i.begin(), set_i.end(), set_j.begin(), set_j.end());
            if (!i_in_j && !j_in_i)
                return false;
            if (set_j.count(*color_i) && !i_in_j)
                return false;
        }
    }
    return true;
}

} // namespace oracles
