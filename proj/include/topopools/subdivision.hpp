#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <set>
#include <vector>

#include "topopools/complex.hpp"
#include "topopools/errors.hpp"
#include "topopools/vertex.hpp"

namespace topopools {

enum class DivKind { bary, chromatic };

inline constexpr std::int64_t kDefaultFacetCap = 1'000'000;

namespace detail {

inline constexpr std::int64_t kSaturated = std::numeric_limits<std::int64_t>::max() / 4;

inline std::int64_t sat_add(std::int64_t a, std::int64_t b) {
    if (a >= kSaturated - b)
        return kSaturated;
    return a + b;
}

inline std::int64_t sat_mul(std::int64_t a, std::int64_t b) {
    if (a != 0 && b > kSaturated / a)
        return kSaturated;
    return a * b;
}

inline std::int64_t factorial_sat(int n) {
    std::int64_t out = 1;
    for (int i = 2; i <= n; ++i)
        out = sat_mul(out, i);
    return out;
}

/// Number of ordered set partitions of n elements (Fubini numbers),
/// saturating well below overflow.
inline std::int64_t fubini_sat(int n) {
    std::vector<std::int64_t> a(static_cast<std::size_t>(n) + 1, 0);
    a[0] = 1;
    std::vector<std::vector<std::int64_t>> choose(n + 1, std::vector<std::int64_t>(n + 1, 0));
    for (int i = 0; i <= n; ++i) {
        choose[i][0] = 1;
        for (int j = 1; j <= i; ++j)
            choose[i][j] = sat_add(choose[i - 1][j - 1], j <= i - 1 ? choose[i - 1][j] : 0);
    }
    for (int m = 1; m <= n; ++m) {
        std::int64_t total = 0;
        for (int k = 1; k <= m; ++k)
            total = sat_add(total, sat_mul(choose[m][k], a[m - k]));
        a[m] = total;
    }
    return a[n];
}

inline void barycentric_facet(const Simplex& facet, std::vector<Simplex>& out) {
    // Maximal chains of faces correspond to orderings of the vertices:
    // the i-th chain element is the prefix set of the ordering.
    std::vector<Vertex> order = facet.vertices();
    std::sort(order.begin(), order.end());
    do {
        std::vector<Vertex> chain;
        std::vector<Vertex> prefix;
        chain.reserve(order.size());
        prefix.reserve(order.size());
        for (const Vertex& v : order) {
            prefix.push_back(v);
            std::vector<Vertex> carrier = prefix;
            std::sort(carrier.begin(), carrier.end());
            chain.push_back(Vertex::subdiv(std::nullopt, carrier));
        }
        out.push_back(Simplex::of(std::move(chain)));
    } while (std::next_permutation(order.begin(), order.end()));
}

inline void chromatic_facet(const Simplex& facet, std::vector<Simplex>& out) {
    // Facets of the chromatic subdivision of one simplex correspond to
    // ordered set partitions (B1,..,Bm) of its vertices: the vertex for
    // color c in Bj carries the face B1 u .. u Bj.
    const std::vector<Vertex>& colors = facet.vertices();
    std::vector<Vertex> prefix_union;
    std::vector<Vertex> produced;
    std::vector<int> remaining(colors.size());
    for (std::size_t i = 0; i < colors.size(); ++i)
        remaining[i] = static_cast<int>(i);

    std::function<void()> recurse = [&]() {
        if (remaining.empty()) {
            out.push_back(Simplex::of(produced));
            return;
        }
        const int n = static_cast<int>(remaining.size());
        // Nonempty subsets of the remaining colors as the next block.
        for (unsigned mask = 1; mask < (1u << n); ++mask) {
            std::vector<int> block;
            std::vector<int> rest;
            for (int i = 0; i < n; ++i) {
                if (mask & (1u << i))
                    block.push_back(remaining[i]);
                else
                    rest.push_back(remaining[i]);
            }
            const std::size_t union_mark = prefix_union.size();
            const std::size_t produced_mark = produced.size();
            for (int ci : block)
                prefix_union.push_back(colors[ci]);
            std::vector<Vertex> carrier = prefix_union;
            std::sort(carrier.begin(), carrier.end());
            for (int ci : block)
                produced.push_back(Vertex::subdiv(colors[ci], carrier));
            std::vector<int> saved = std::move(remaining);
            remaining = std::move(rest);
            recurse();
            remaining = std::move(saved);
            produced.erase(produced.begin() + produced_mark, produced.end());
            prefix_union.erase(prefix_union.begin() + union_mark, prefix_union.end());
        }
    };
    recurse();
}

} // namespace detail

/// Barycentric subdivision: vertices are the nonempty faces, facets are
/// the maximal inclusion chains within each facet. Shared faces of
/// adjacent facets yield identical chain vertices, so the result glues
/// into one complex.
inline Complex barycentric(const Complex& c) {
    std::vector<Simplex> out;
    for (const Simplex& f : c.facets())
        detail::barycentric_facet(f, out);
    return make_complex(std::move(out));
}

/// Chromatic subdivision. Vertices are (color, carrier-face) pairs with
/// the color inside the carrier; a set of pairs spans a simplex when
/// colors are pairwise distinct, carriers form an inclusion chain, and
/// a color contained in another pair's carrier forces its own carrier
/// inside that one. Requires each facet's vertices to carry distinct
/// base colors.
inline Complex chromatic(const Complex& c) {
    for (const Simplex& f : c.facets()) {
        std::set<Vertex> base;
        for (const Vertex& v : f.vertices())
            if (!base.insert(v.base_color()).second)
                throw ColorError("facet has two vertices of color " + v.base_color().key());
    }
    std::vector<Simplex> out;
    for (const Simplex& f : c.facets())
        detail::chromatic_facet(f, out);
    return make_complex(std::move(out));
}

/// Predicate form of the chromatic-subdivision simplex condition, for
/// checking candidate vertex sets independently of the generator.
inline bool is_chromatic_simplex(const std::vector<Vertex>& pairs) {
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto color_i = pairs[i].subdiv_color();
        if (!color_i)
            return false;
        const Simplex carrier_i = Simplex::of(pairs[i].subdiv_carrier());
        if (!carrier_i.contains(*color_i))
            return false;
        for (std::size_t j = 0; j < pairs.size(); ++j) {
            if (i == j)
                continue;
            const auto color_j = pairs[j].subdiv_color();
            if (!color_j)
                return false;
            if (*color_i == *color_j)
                return false;
            const Simplex carrier_j = Simplex::of(pairs[j].subdiv_carrier());
            if (!carrier_i.is_face_of(carrier_j) && !carrier_j.is_face_of(carrier_i))
                return false;
            if (carrier_j.contains(*color_i) && !carrier_i.is_face_of(carrier_j))
                return false;
        }
    }
    return true;
}

/// m-fold subdivision with a projected-size guard: before each round the
/// facet count of the next complex is computed exactly (factorials for
/// barycentric, Fubini numbers for chromatic) and checked against the
/// cap.
inline Complex iterate_div(const Complex& c, int m, DivKind kind,
                           std::int64_t facet_cap = kDefaultFacetCap) {
    if (m < 0)
        throw ArgumentError("subdivision count must be non-negative");
    Complex current = c;
    for (int round = 0; round < m; ++round) {
        std::int64_t projected = 0;
        for (const Simplex& f : current.facets()) {
            const int s = static_cast<int>(f.size());
            projected = detail::sat_add(projected, kind == DivKind::bary
                                                       ? detail::factorial_sat(s)
                                                       : detail::fubini_sat(s));
        }
        if (projected > facet_cap)
            throw SizeError("projected facet count " + std::to_string(projected) +
                            " exceeds cap " + std::to_string(facet_cap));
        current = kind == DivKind::bary ? barycentric(current) : chromatic(current);
    }
    return current;
}

/// Exact facet count the guard above projects for one round.
inline std::int64_t projected_div_facets(const Complex& c, DivKind kind) {
    std::int64_t projected = 0;
    for (const Simplex& f : c.facets()) {
        const int s = static_cast<int>(f.size());
        projected = detail::sat_add(projected, kind == DivKind::bary ? detail::factorial_sat(s)
                                                                     : detail::fubini_sat(s));
    }
    return projected;
}

/// Searches for `count` pairwise vertex-disjoint facets of dimension d,
/// by deterministic backtracking over facets in canonical order. First
/// solution wins; nullopt when none exists.
inline std::optional<std::vector<Simplex>> find_disjoint_facets(const Complex& c, int d,
                                                                int count) {
    if (count < 1)
        throw ArgumentError("facet count must be at least 1");
    std::vector<Simplex> candidates;
    for (const Simplex& f : c.facets())
        if (f.dim() == d)
            candidates.push_back(f);
    std::sort(candidates.begin(), candidates.end());

    std::vector<Simplex> chosen;
    std::function<bool(std::size_t)> search = [&](std::size_t start) {
        if (static_cast<int>(chosen.size()) == count)
            return true;
        for (std::size_t i = start; i < candidates.size(); ++i) {
            bool clash = false;
            for (const Simplex& picked : chosen)
                if (!picked.disjoint_from(candidates[i])) {
                    clash = true;
                    break;
                }
            if (clash)
                continue;
            chosen.push_back(candidates[i]);
            if (search(i + 1))
                return true;
            chosen.pop_back();
        }
        return false;
    };
    if (!search(0))
        return std::nullopt;
    return chosen;
}

} // namespace topopools
