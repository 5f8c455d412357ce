#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "topopools/complex.hpp"
#include "topopools/errors.hpp"
#include "topopools/maps.hpp"
#include "topopools/vertex.hpp"

namespace topopools {

/// Size guards shared across generators and searches.
struct Caps {
    std::int64_t facet_cap = 1'000'000;
    int miner_cap = 12;
    int m_bound = 64;
};

/// Pool-size vector. Pools, miner indices and views are 0-based
/// internally; display layers print the paper's 1-based pool labels.
struct PoolConfig {
    std::vector<int> sizes;

    static PoolConfig from_sizes(std::vector<int> sizes) {
        if (sizes.size() < 2)
            throw ConfigError("need at least two pools");
        for (int s : sizes)
            if (s < 1)
                throw ConfigError("pool sizes must be positive");
        return PoolConfig{std::move(sizes)};
    }

    int q() const { return static_cast<int>(sizes.size()); }
    int total_miners() const { return std::accumulate(sizes.begin(), sizes.end(), 0); }
    int max_size() const { return *std::max_element(sizes.begin(), sizes.end()); }
    bool all_equal() const {
        return std::all_of(sizes.begin(), sizes.end(), [&](int s) { return s == sizes[0]; });
    }
};

struct Miner {
    int pool = 0;
    int index = 0;
};

/// Miners in canonical order: pools ascending, indices ascending.
inline std::vector<Miner> miners_of(const PoolConfig& cfg) {
    std::vector<Miner> out;
    out.reserve(cfg.total_miners());
    for (int p = 0; p < cfg.q(); ++p)
        for (int j = 0; j < cfg.sizes[p]; ++j)
            out.push_back({p, j});
    return out;
}

/// Input complex: one facet per pool, vertices (pool, index, bottom).
/// The q facets are pairwise disconnected.
inline Complex gen_input(const PoolConfig& cfg) {
    std::vector<Simplex> facets;
    facets.reserve(cfg.q());
    for (int p = 0; p < cfg.q(); ++p) {
        std::vector<Vertex> verts;
        verts.reserve(cfg.sizes[p]);
        for (int j = 0; j < cfg.sizes[p]; ++j)
            verts.push_back(Vertex::pool_vertex(p, j));
        facets.push_back(Simplex::of(std::move(verts)));
    }
    return make_complex(std::move(facets));
}

/// Rank of a total assignment (miners -> views) among all q^miners
/// assignments, big-endian in canonical miner order. Used as the
/// facet tag, so single facets can be built without enumerating the
/// whole output complex.
inline std::int64_t assignment_tag(const PoolConfig& cfg, const std::vector<int>& views) {
    std::int64_t tag = 0;
    for (int v : views) {
        if (v < 0 || v >= cfg.q())
            throw ArgumentError("view out of range");
        tag = tag * cfg.q() + v;
    }
    return tag;
}

/// The output facet realizing one total assignment. Vertices carry the
/// assignment tag, keeping facets of the output complex vertex-disjoint.
inline Simplex output_facet_for_assignment(const PoolConfig& cfg, const std::vector<int>& views) {
    const auto ms = miners_of(cfg);
    if (views.size() != ms.size())
        throw ArgumentError("assignment length mismatch");
    const std::int64_t tag = assignment_tag(cfg, views);
    std::vector<Vertex> verts;
    verts.reserve(ms.size());
    for (std::size_t i = 0; i < ms.size(); ++i)
        verts.push_back(Vertex::pool_vertex(ms[i].pool, ms[i].index, views[i], tag));
    return Simplex::of(std::move(verts));
}

/// True when at least one vertex has moved away from its origin pool.
/// All views must be decided.
inline bool no_stay_ok(const Simplex& facet) {
    for (const Vertex& v : facet.vertices()) {
        const PoolLabel& p = v.pool_label();
        if (!p.view)
            throw DomainError("undecided view in output facet: " + v.key());
        if (*p.view != p.pool)
            return true;
    }
    return false;
}

/// Output complex: one facet per total assignment that is surjective
/// onto the pools and moves at least one miner. Every facet has
/// dimension (total miners - 1).
inline Complex gen_output(const PoolConfig& cfg, const Caps& caps = {}) {
    const int total = cfg.total_miners();
    if (total > caps.miner_cap)
        throw SizeError("total miners " + std::to_string(total) + " exceeds cap " +
                        std::to_string(caps.miner_cap));
    std::int64_t assignments = 1;
    for (int i = 0; i < total; ++i) {
        assignments *= cfg.q();
        if (assignments > caps.facet_cap)
            throw SizeError("assignment enumeration exceeds facet cap");
    }

    const auto ms = miners_of(cfg);
    std::vector<Simplex> facets;
    std::vector<int> views(ms.size(), 0);
    std::vector<int> seen(cfg.q(), 0);
    std::int64_t tag = 0; // mixed-radix value of `views`, kept in step
    std::vector<Vertex> verts;
    while (true) {
        std::fill(seen.begin(), seen.end(), 0);
        for (int v : views)
            seen[v] = 1;
        bool surjective = true;
        for (int s : seen)
            surjective = surjective && s != 0;
        if (surjective) {
            bool moved = false;
            for (std::size_t i = 0; i < views.size(); ++i)
                if (views[i] != ms[i].pool) {
                    moved = true;
                    break;
                }
            if (moved) {
                verts.clear();
                for (std::size_t i = 0; i < ms.size(); ++i)
                    verts.push_back(Vertex::pool_vertex(ms[i].pool, ms[i].index, views[i], tag));
                facets.push_back(Simplex::of(verts));
            }
        }
        // Odometer increment, most significant first.
        int pos = static_cast<int>(views.size()) - 1;
        std::int64_t weight = 1;
        while (pos >= 0 && views[pos] == cfg.q() - 1) {
            tag -= weight * views[pos];
            views[pos--] = 0;
            weight *= cfg.q();
        }
        if (pos < 0)
            break;
        ++views[pos];
        tag += weight;
    }
    return make_complex(std::move(facets));
}

/// Extracts the assignment of an output-style facet as miner -> view.
inline std::map<std::pair<int, int>, int> facet_assignment(const Simplex& facet) {
    std::map<std::pair<int, int>, int> out;
    for (const Vertex& v : facet.vertices()) {
        const PoolLabel& p = v.pool_label();
        if (!p.view)
            throw DomainError("undecided view in output facet: " + v.key());
        out[{p.pool, p.index}] = *p.view;
    }
    return out;
}

/// Assignment report rows for an output complex, with the paper's
/// 1-based pool and view labels.
inline nlohmann::ordered_json assignments_json(const Complex& output) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    std::vector<Simplex> sorted = output.facets();
    std::sort(sorted.begin(), sorted.end());
    for (const Simplex& f : sorted) {
        nlohmann::ordered_json row;
        const PoolLabel& first = f.vertices().front().pool_label();
        row["facet"] = first.facet_tag ? nlohmann::ordered_json(*first.facet_tag)
                                       : nlohmann::ordered_json(nullptr);
        nlohmann::ordered_json assignment = nlohmann::ordered_json::object();
        for (const auto& [miner, view] : facet_assignment(f))
            assignment["p" + std::to_string(miner.first + 1) + "^" +
                       std::to_string(miner.second)] = view + 1;
        row["assignment"] = std::move(assignment);
        rows.push_back(std::move(row));
    }
    return rows;
}

/// Task carrier map. Every output facet realizes its own restriction to
/// any name set, so each input simplex carries the entire output
/// complex; monotonicity is immediate.
inline CarrierMap task_carrier(const PoolConfig& cfg, const Caps& caps = {}) {
    Complex input = gen_input(cfg);
    Complex output = gen_output(cfg, caps);
    std::map<Simplex, std::vector<Simplex>> table;
    for (const Simplex& f : input.facets())
        table.emplace(f, output.facets());
    return CarrierMap(std::move(input), std::move(output), std::move(table));
}

/// Equal-pool rotation: every miner of pool i moves to pool (i+1) mod q.
/// The image is the single output facet realizing that assignment; the
/// map is name preserving and simplicial.
inline VertexMap rotation_map(const PoolConfig& cfg) {
    if (!cfg.all_equal())
        throw NotEqualPoolError("rotation map requires equal pool sizes");
    if (cfg.sizes[0] < 2)
        throw ArgumentError("equal-pool operations require pool size of at least 2");
    const auto ms = miners_of(cfg);
    std::vector<int> views;
    views.reserve(ms.size());
    for (const Miner& m : ms)
        views.push_back((m.pool + 1) % cfg.q());
    const Simplex target = output_facet_for_assignment(cfg, views);
    Complex input = gen_input(cfg);
    Complex codomain = make_complex({target});

    std::map<Vertex, Vertex> table;
    std::map<std::pair<int, int>, Vertex> by_name;
    for (const Vertex& v : target.vertices()) {
        const PoolLabel& p = v.pool_label();
        by_name.emplace(std::make_pair(p.pool, p.index), v);
    }
    for (const Vertex& v : input.vertices()) {
        const PoolLabel& p = v.pool_label();
        table.emplace(v, by_name.at({p.pool, p.index}));
    }
    return VertexMap(std::move(input), std::move(codomain), std::move(table));
}

/// Restriction of a map to a single input facet (canonical facet order).
inline VertexMap restrict_map(const VertexMap& m, int facet_index) {
    const auto& facets = m.domain().facets();
    if (facet_index < 0 || facet_index >= static_cast<int>(facets.size()))
        throw ArgumentError("facet index out of range");
    std::vector<Simplex> sorted = facets;
    std::sort(sorted.begin(), sorted.end());
    const Simplex& facet = sorted[facet_index];
    std::map<Vertex, Vertex> table;
    for (const Vertex& v : facet.vertices())
        table.emplace(v, m.apply(v));
    return VertexMap(make_complex({facet}), m.codomain(), std::move(table));
}

/// Pools grouped by size. Classes are ordered by size descending, so
/// class 0 holds the largest pools; sizes are pairwise distinct across
/// classes and the pool id lists partition [0, q).
struct Partition {
    struct Class {
        int size = 0;
        std::vector<int> pool_ids;
    };
    std::vector<Class> classes;

    int k() const { return static_cast<int>(classes.size()); }
};

inline Partition partition_input(const PoolConfig& cfg) {
    std::map<int, std::vector<int>, std::greater<int>> by_size;
    for (int p = 0; p < cfg.q(); ++p)
        by_size[cfg.sizes[p]].push_back(p);
    Partition out;
    for (auto& [size, pools] : by_size)
        out.classes.push_back({size, std::move(pools)});
    return out;
}

/// Class of a simplex, matched by cardinality.
inline int part_of(const Simplex& s, const Partition& p) {
    for (std::size_t i = 0; i < p.classes.size(); ++i)
        if (p.classes[i].size == static_cast<int>(s.size()))
            return static_cast<int>(i);
    throw DomainError("no partition class of size " + std::to_string(s.size()));
}

namespace detail {

inline std::vector<int> class_count_by_pool(const PoolConfig& cfg, const Partition& part) {
    std::vector<int> out(cfg.q(), 1);
    for (const auto& cls : part.classes)
        for (int p : cls.pool_ids)
            out[p] = static_cast<int>(cls.pool_ids.size());
    return out;
}

} // namespace detail

/// Current pool of every miner (canonical order) after m_steps rounds of
/// the swap schedule: in round t, a miner moves to the next pool id
/// exactly when its index is congruent to t modulo the number of pools
/// in its origin pool's partition class.
inline std::vector<int> swap_positions(const PoolConfig& cfg, int m_steps) {
    if (m_steps < 0)
        throw ArgumentError("swap steps must be non-negative");
    const auto ms = miners_of(cfg);
    const auto part = partition_input(cfg);
    const auto counts = detail::class_count_by_pool(cfg, part);
    std::vector<int> pos;
    pos.reserve(ms.size());
    for (const Miner& m : ms)
        pos.push_back(m.pool);
    for (int t = 1; t <= m_steps; ++t)
        for (std::size_t i = 0; i < ms.size(); ++i)
            if (ms[i].index % counts[ms[i].pool] == t % counts[ms[i].pool])
                pos[i] = (pos[i] + 1) % cfg.q();
    return pos;
}

/// Labeled complex after m_steps swap rounds: vertices carry the current
/// pool as view, facets are the nonempty co-location groups. m = 0 is
/// the input with views materialized as the origin pools.
inline Complex swap_m(const PoolConfig& cfg, int m_steps) {
    const auto ms = miners_of(cfg);
    const auto pos = swap_positions(cfg, m_steps);
    std::map<int, std::vector<Vertex>> groups;
    for (std::size_t i = 0; i < ms.size(); ++i)
        groups[pos[i]].push_back(Vertex::pool_vertex(ms[i].pool, ms[i].index, pos[i]));
    std::vector<Simplex> facets;
    facets.reserve(groups.size());
    for (auto& [pool, verts] : groups)
        facets.push_back(Simplex::of(std::move(verts)));
    return make_complex(std::move(facets));
}

/// Shape of a swap configuration, for sweep predicates.
struct SwapShape {
    bool full_dim = false;       // some co-location group spans dim(I)
    bool moved = false;          // at least one miner away from home
    bool pools_colocated = false; // each pool's miners share a position
};

inline SwapShape swap_shape(const PoolConfig& cfg, int m_steps) {
    const auto ms = miners_of(cfg);
    const auto pos = swap_positions(cfg, m_steps);
    SwapShape shape;
    std::map<int, int> group_size;
    for (std::size_t i = 0; i < ms.size(); ++i) {
        ++group_size[pos[i]];
        if (pos[i] != ms[i].pool)
            shape.moved = true;
    }
    int biggest = 0;
    for (const auto& [pool, n] : group_size)
        biggest = std::max(biggest, n);
    shape.full_dim = biggest >= cfg.max_size();
    shape.pools_colocated = true;
    std::map<int, int> pool_pos;
    for (std::size_t i = 0; i < ms.size(); ++i) {
        auto [it, inserted] = pool_pos.emplace(ms[i].pool, pos[i]);
        if (!inserted && it->second != pos[i])
            shape.pools_colocated = false;
    }
    return shape;
}

/// Least M in [min_m, m_bound] whose swap complex contains a facet of
/// dimension dim(I). nullopt when the sweep exhausts the bound.
inline std::optional<int> full_simplex_witness(const PoolConfig& cfg, int m_bound,
                                               int min_m = 0) {
    for (int m = min_m; m <= m_bound; ++m)
        if (swap_shape(cfg, m).full_dim)
            return m;
    return std::nullopt;
}

} // namespace topopools
