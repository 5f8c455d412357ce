#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "topopools/complex.hpp"
#include "topopools/errors.hpp"
#include "topopools/ksa.hpp"
#include "topopools/maps.hpp"
#include "topopools/pool_tasks.hpp"
#include "topopools/serialize.hpp"

namespace topopools {

enum class Decision { Exists, NotExists };

inline const char* to_string(Decision d) {
    return d == Decision::Exists ? "exists" : "not_exists";
}

/// Top-level verdict: the decision, the theorem it instantiates, and a
/// machine-checkable certificate (explicit map, reduction trace, or
/// brute-force count).
struct Verdict {
    std::vector<int> sizes;
    int k = 0;
    Decision decision = Decision::NotExists;
    std::string citation;
    nlohmann::ordered_json certificate; // null when not requested
};

inline nlohmann::ordered_json verdict_to_json(const Verdict& v) {
    nlohmann::ordered_json out;
    out["sizes"] = v.sizes;
    out["k"] = v.k;
    out["decision"] = to_string(v.decision);
    out["certificate"] = v.certificate;
    out["citation"] = v.citation;
    return out;
}

struct ConnectivityCertificate {
    bool ok = false;
    int component_count = 0;
};

/// Image subcomplex of a map: the codomain restricted to the image
/// vertex set. Two image simplices inside one codomain facet are
/// connected through that facet. Reports whether every facet image
/// lies in the codomain and the restriction is one component.
inline ConnectivityCertificate certify_connected_image(const VertexMap& m) {
    bool inside = true;
    std::set<Vertex> image_verts;
    for (const Simplex& f : m.domain().facets()) {
        const Simplex img = m.image(f);
        inside = inside && m.codomain().contains(img);
        for (const Vertex& v : img.vertices())
            image_verts.insert(v);
    }
    std::vector<Simplex> induced;
    for (const Simplex& facet : m.codomain().facets()) {
        std::vector<Vertex> mine;
        for (const Vertex& v : facet.vertices())
            if (image_verts.count(v))
                mine.push_back(v);
        if (!mine.empty())
            induced.push_back(Simplex::of(std::move(mine)));
    }
    const auto comps = components(make_complex(std::move(induced)));
    return {inside && comps.size() == 1, static_cast<int>(comps.size())};
}

/// Every name-preserving map from the input complex into a single facet
/// of the given output complex that is simplicial, moves at least one
/// miner (unless the no-stay filter is switched off), and has a
/// connected image. The equilibrium shape the equal-pool construction
/// produces, searched exhaustively.
inline std::vector<VertexMap> collect_equilibria(const Complex& input, const Complex& output,
                                                 bool require_no_stay = true) {
    std::vector<Simplex> targets = output.facets();
    std::sort(targets.begin(), targets.end());

    std::vector<VertexMap> found;
    for (const Simplex& target : targets) {
        std::map<std::pair<int, int>, Vertex> by_name;
        for (const Vertex& v : target.vertices()) {
            const PoolLabel& p = v.pool_label();
            by_name.emplace(std::make_pair(p.pool, p.index), v);
        }
        // Name preservation pins each input vertex to the target vertex
        // of the same miner; a facet missing some miner admits no map.
        std::map<Vertex, Vertex> table;
        bool total = true;
        for (const Vertex& v : input.vertices()) {
            const PoolLabel& p = v.pool_label();
            auto it = by_name.find({p.pool, p.index});
            if (it == by_name.end()) {
                total = false;
                break;
            }
            table.emplace(v, it->second);
        }
        if (!total)
            continue;
        VertexMap candidate(input, output, std::move(table));
        if (!is_simplicial(candidate).ok)
            continue;
        if (require_no_stay && !no_stay_ok(target))
            continue;
        if (!certify_connected_image(candidate).ok)
            continue;
        found.push_back(std::move(candidate));
    }
    return found;
}

/// Brute-force equilibrium oracle over the generated output complex.
inline std::vector<VertexMap> brute_force_equilibria(const PoolConfig& cfg,
                                                     const Caps& caps = {}) {
    return collect_equilibria(gen_input(cfg), gen_output(cfg, caps));
}

namespace detail {

inline bool brute_force_feasible(const PoolConfig& cfg, const Caps& caps) {
    if (cfg.total_miners() > caps.miner_cap)
        return false;
    std::int64_t assignments = 1;
    for (int i = 0; i < cfg.total_miners(); ++i) {
        assignments *= cfg.q();
        if (assignments > caps.facet_cap)
            return false;
    }
    return true;
}

inline nlohmann::ordered_json rotation_certificate(const PoolConfig& cfg) {
    VertexMap rot = rotation_map(cfg);
    nlohmann::ordered_json cert;
    cert["type"] = "explicit_map";
    cert["map"] = vertex_map_to_json(rot)["map"];
    const PoolLabel& first = rot.codomain().facets().front().vertices().front().pool_label();
    cert["target_facet"] = *first.facet_tag;
    cert["simplicial"] = is_simplicial(rot).ok;
    cert["no_stay"] = no_stay_ok(rot.codomain().facets().front());
    cert["connected_image"] = certify_connected_image(rot).ok;
    return cert;
}

} // namespace detail

/// Verdict on equilibrium existence. The decision is a function of the
/// number of distinct pool sizes alone; certificates materialize the
/// constructions behind Theorems 1-3 when requested.
inline Verdict equilibrium_verdict(const PoolConfig& cfg, bool want_certificate,
                                   const Caps& caps = {}) {
    const Partition part = partition_input(cfg);
    const int k = part.k();

    Verdict verdict;
    verdict.sizes = cfg.sizes;
    verdict.k = k;
    verdict.decision = k <= 2 ? Decision::Exists : Decision::NotExists;
    verdict.citation = k == 1 ? "Theorem 1" : (k == 2 ? "Theorem 2" : "Theorem 3");
    verdict.certificate = nullptr;
    if (!want_certificate)
        return verdict;

    if (k == 1) {
        if (cfg.sizes[0] >= 2) {
            verdict.certificate = detail::rotation_certificate(cfg);
        } else {
            // Size-1 equal pools admit no rotation (n >= 1 fails); the
            // exhaustive search still certifies existence.
            nlohmann::ordered_json cert;
            cert["type"] = "brute_force_count";
            cert["count"] = brute_force_equilibria(cfg, caps).size();
            verdict.certificate = std::move(cert);
        }
    } else if (k == 2) {
        nlohmann::ordered_json cert;
        cert["type"] = "reduction_trace";
        try {
            const TwoSaReduction red = build_2sa_to_2dp(cfg, caps.m_bound, caps);
            cert["trace"] = reduction_report_to_json(red.report);
        } catch (const BoundExceeded&) {
            ReductionReport failed{"2SA->2DP", 2, std::nullopt, false, "Theorem 2"};
            cert["trace"] = reduction_report_to_json(failed);
        }
        if (detail::brute_force_feasible(cfg, caps))
            cert["brute_force_count"] = brute_force_equilibria(cfg, caps).size();
        else
            cert["brute_force_count"] = nullptr;
        verdict.certificate = std::move(cert);
    } else {
        nlohmann::ordered_json cert;
        cert["type"] = "reduction_trace";
        try {
            const KdpReduction red = build_kdp_to_ksa(cfg);
            cert["trace"] = reduction_report_to_json(red.report);
            cert["trace"]["ksa_solvable"] = ksa_solvable(k).solvable;
        } catch (const SizeError&) {
            ReductionReport failed{"KDP->KSA", k, std::nullopt, false, "Theorem 3"};
            cert["trace"] = reduction_report_to_json(failed);
        }
        verdict.certificate = std::move(cert);
    }
    return verdict;
}

} // namespace topopools
