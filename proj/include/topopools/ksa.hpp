#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "topopools/complex.hpp"
#include "topopools/errors.hpp"
#include "topopools/maps.hpp"
#include "topopools/pool_tasks.hpp"
#include "topopools/subdivision.hpp"
#include "topopools/vertex.hpp"

namespace topopools {

/// k-set agreement task: n+1 members decide values so that at most k
/// distinct values survive. The output complex has exactly k pairwise
/// disconnected n-simplices, one per output value.
struct KsaTask {
    int n = 0;
    int k = 0;
    std::vector<int> v_in;
    std::vector<int> v_out;
    Complex input;
    Complex output;
    CarrierMap delta;
};

/// Protocol triple (I, P, Xi).
struct Protocol {
    Complex input;
    Complex protocol_complex;
    CarrierMap xi;
};

/// Reduction report, stable JSON schema:
/// {"direction", "k", "M", "verified", "citation"}.
struct ReductionReport {
    std::string direction;
    int k = 0;
    std::optional<int> m;
    bool verified = false;
    std::string citation;
};

inline nlohmann::ordered_json reduction_report_to_json(const ReductionReport& r) {
    nlohmann::ordered_json out;
    out["direction"] = r.direction;
    out["k"] = r.k;
    out["M"] = r.m ? nlohmann::ordered_json(*r.m) : nlohmann::ordered_json(nullptr);
    out["verified"] = r.verified;
    out["citation"] = r.citation;
    return out;
}

/// Builds the k-set agreement task for n+1 members. Input facets are
/// the total proposal assignments over v_out (inputs are unconstrained,
/// so proposals range over the decidable values); the carrier allows
/// every output for every input simplex.
inline KsaTask gen_ksa(int n, int k, std::vector<int> v_out, const Caps& caps = {}) {
    if (n < 0)
        throw ArgumentError("need at least one member");
    if (k < 1 || k > n + 1)
        throw ArgumentError("k must satisfy 1 <= k <= n+1");
    if (static_cast<int>(v_out.size()) != k)
        throw ArgumentError("need exactly k output values");
    if (std::set<int>(v_out.begin(), v_out.end()).size() != v_out.size())
        throw ArgumentError("output values must be distinct");

    std::vector<Simplex> output_facets;
    for (int kappa = 0; kappa < k; ++kappa) {
        std::vector<Vertex> verts;
        verts.reserve(n + 1);
        for (int j = 0; j <= n; ++j)
            verts.push_back(Vertex::agent(j, v_out[kappa]));
        output_facets.push_back(Simplex::of(std::move(verts)));
    }
    Complex output = make_complex(std::move(output_facets));

    std::int64_t count = 1;
    for (int j = 0; j <= n; ++j) {
        count *= k;
        if (count > caps.facet_cap)
            throw SizeError("input assignment enumeration exceeds facet cap");
    }
    std::vector<Simplex> input_facets;
    std::vector<int> choice(n + 1, 0);
    while (true) {
        std::vector<Vertex> verts;
        verts.reserve(n + 1);
        for (int j = 0; j <= n; ++j)
            verts.push_back(Vertex::agent(j, v_out[choice[j]]));
        input_facets.push_back(Simplex::of(std::move(verts)));
        int pos = n;
        while (pos >= 0 && choice[pos] == k - 1)
            choice[pos--] = 0;
        if (pos < 0)
            break;
        ++choice[pos];
    }
    Complex input = make_complex(std::move(input_facets));

    std::map<Simplex, std::vector<Simplex>> table;
    for (const Simplex& f : input.facets())
        table.emplace(f, output.facets());
    CarrierMap delta(input, output, std::move(table));
    return KsaTask{n, k, v_out, v_out, std::move(input), std::move(output), std::move(delta)};
}

struct ModelCapability {
    bool solvable = false;
    std::string citation;
};

/// Capability oracle for the ambient computation model: k-set agreement
/// is solvable exactly when k <= 2. The bound is imported, not
/// re-derived.
inline ModelCapability ksa_solvable(int k) {
    if (k < 1)
        throw ArgumentError("k must be positive");
    return {k <= 2, "Lemma 5"};
}

/// Carrier for the swap protocol: each input facet maps to the
/// restriction of the swap complex to its own miners.
inline CarrierMap swap_carrier(const Complex& input, const Complex& swap_complex) {
    std::map<Simplex, std::vector<Simplex>> table;
    for (const Simplex& f : input.facets()) {
        const int pool = f.min_vertex().pool_label().pool;
        std::vector<Simplex> restricted;
        for (const Simplex& group : swap_complex.facets()) {
            std::vector<Vertex> mine;
            for (const Vertex& v : group.vertices())
                if (v.pool_label().pool == pool)
                    mine.push_back(v);
            if (!mine.empty())
                restricted.push_back(Simplex::of(std::move(mine)));
        }
        table.emplace(f, std::move(restricted));
    }
    return CarrierMap(input, swap_complex, std::move(table));
}

/// Carrier for the subdivision protocol: each input facet maps to the
/// facets of its own m-fold chromatic subdivision.
inline CarrierMap div_carrier(const Complex& input, const Complex& divided) {
    std::map<Simplex, std::vector<Simplex>> table;
    std::map<int, std::vector<Simplex>> by_pool;
    for (const Simplex& f : divided.facets()) {
        const Vertex base = f.min_vertex().base_color();
        by_pool[base.pool_label().pool].push_back(f);
    }
    for (const Simplex& f : input.facets())
        table.emplace(f, by_pool.at(f.min_vertex().pool_label().pool));
    return CarrierMap(input, divided, std::move(table));
}

struct TwoSaReduction {
    int m_witness = 0;
    bool materialized = false; // protocol complexes built within the cap
    bool verified = false;     // simulation containment checked and passed
    std::optional<Protocol> real_protocol;
    std::optional<Protocol> virtual_protocol;
    std::optional<VertexMap> phi;
    ReductionReport report;
};

/// Constructs the 2SA protocol (I, div^M I, div^M), the two-distinct-
/// pool protocol (I, swap^M I, swap^M) and the simulation map between
/// their protocol complexes, sweeping M upward until the swap complex
/// reaches a configuration a name-preserving simulation can target:
/// a full-dimensional facet, at least one miner moved, and every pool's
/// miners co-located.
inline TwoSaReduction build_2sa_to_2dp(const PoolConfig& cfg, int m_bound,
                                       const Caps& caps = {}) {
    const Partition part = partition_input(cfg);
    if (part.k() != 2)
        throw ArgumentError("2SA->2DP needs exactly two distinct pool sizes, got k=" +
                            std::to_string(part.k()));

    std::optional<int> witness;
    for (int m = 0; m <= m_bound; ++m) {
        const SwapShape shape = swap_shape(cfg, m);
        if (shape.full_dim && shape.moved && shape.pools_colocated) {
            witness = m;
            break;
        }
    }
    if (!witness)
        throw BoundExceeded("no adequate M up to " + std::to_string(m_bound));

    TwoSaReduction out;
    out.m_witness = *witness;
    out.report = {"2SA->2DP", 2, *witness, false, "Theorem 2"};

    Complex input = gen_input(cfg);

    // The real side is materialized only within the facet cap; the
    // witness M and the virtual side never require it.
    std::int64_t projected = 1;
    {
        Complex probe = input;
        bool feasible = true;
        for (int round = 0; round < *witness && feasible; ++round) {
            projected = projected_div_facets(probe, DivKind::chromatic);
            if (projected > caps.facet_cap) {
                feasible = false;
                break;
            }
            probe = chromatic(probe);
        }
        if (feasible) {
            Complex divided = probe;
            Complex swapped = swap_m(cfg, *witness);
            CarrierMap xi_r = div_carrier(input, divided);
            CarrierMap xi_v = swap_carrier(input, swapped);

            const auto ms = miners_of(cfg);
            const auto pos = swap_positions(cfg, *witness);
            std::map<std::pair<int, int>, Vertex> position_vertex;
            for (std::size_t i = 0; i < ms.size(); ++i)
                position_vertex.emplace(std::make_pair(ms[i].pool, ms[i].index),
                                        Vertex::pool_vertex(ms[i].pool, ms[i].index, pos[i]));
            std::map<Vertex, Vertex> table;
            for (const Vertex& v : divided.vertices()) {
                const PoolLabel& miner = v.base_color().pool_label();
                table.emplace(v, position_vertex.at({miner.pool, miner.index}));
            }
            VertexMap phi(divided, swapped, std::move(table));

            const bool simplicial = is_simplicial(phi).ok;
            const bool contained = check_simulation(phi, xi_r, xi_v).ok;
            out.materialized = true;
            out.verified = simplicial && contained;
            out.real_protocol = Protocol{input, divided, std::move(xi_r)};
            out.virtual_protocol = Protocol{input, swapped, std::move(xi_v)};
            out.phi = std::move(phi);
        }
    }
    out.report.verified = out.verified;
    return out;
}

struct KdpReduction {
    int k = 0;
    VertexMap phi;                // class representatives into Ch(sigma_1)
    std::vector<Simplex> targets; // pairwise disjoint full-dimensional facets
    bool verified = false;
    ReductionReport report;
};

/// Places the k partition-representative simplices injectively onto k
/// pairwise disjoint full-dimensional facets of the once-chromatically-
/// subdivided largest input simplex. Solving the k-distinct-pool
/// problem would therefore solve k-set agreement, which the model
/// cannot do for k >= 3.
inline KdpReduction build_kdp_to_ksa(const PoolConfig& cfg, const Caps& caps = {}) {
    const Partition part = partition_input(cfg);
    const int k = part.k();
    if (k < 3)
        throw ArgumentError("KDP->KSA needs at least three distinct pool sizes, got k=" +
                            std::to_string(k));
    const int largest = part.classes.front().size;
    if (largest < k)
        throw ArgumentError("largest pool must have at least k miners");

    Complex input = gen_input(cfg);
    std::vector<Simplex> input_facets = input.facets();
    std::sort(input_facets.begin(), input_facets.end());

    // Representative per class: the facet of the least pool id.
    std::vector<Simplex> reps;
    for (const auto& cls : part.classes) {
        const int pool = *std::min_element(cls.pool_ids.begin(), cls.pool_ids.end());
        reps.push_back(input_facets[pool]);
    }

    const Simplex& sigma1 = reps.front();
    Complex subdivided =
        iterate_div(make_complex({sigma1}), 1, DivKind::chromatic, caps.facet_cap);
    const int n = sigma1.dim();
    auto targets = find_disjoint_facets(subdivided, n, k);
    if (!targets)
        throw InternalError("chromatic subdivision lacks " + std::to_string(k) +
                            " disjoint facets");

    std::map<Vertex, Vertex> table;
    for (int kappa = 0; kappa < k; ++kappa) {
        const auto& from = reps[kappa].vertices();
        const auto& onto = (*targets)[kappa].vertices();
        for (std::size_t j = 0; j < from.size(); ++j)
            table.emplace(from[j], onto[j]);
    }
    VertexMap phi(make_complex(std::vector<Simplex>(reps)), subdivided, std::move(table));

    bool verified = is_simplicial(phi).ok;
    for (int a = 0; a < k && verified; ++a) {
        // Injective on each representative: image keeps the dimension.
        if (phi.image(reps[a]).size() != reps[a].size())
            verified = false;
        for (int b = a + 1; b < k && verified; ++b)
            if (!phi.image(reps[a]).disjoint_from(phi.image(reps[b])))
                verified = false;
    }

    KdpReduction out{k, std::move(phi), std::move(*targets), verified,
                     {"KDP->KSA", k, 1, verified, "Theorem 3"}};
    return out;
}

} // namespace topopools
