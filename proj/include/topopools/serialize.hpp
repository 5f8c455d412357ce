#pragma once

#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "topopools/complex.hpp"
#include "topopools/errors.hpp"
#include "topopools/vertex.hpp"

namespace topopools {

using json = nlohmann::ordered_json;

/// Human-facing label. Pool ids and views print 1-based (the paper's
/// p_i^j convention with i in 1..q), miner indices 0-based, bottom as
/// the UTF-8 up tack. Canonical keys stay 0-based; labels are display
/// only.
inline std::string display_label(const Vertex& v) {
    if (const auto* p = std::get_if<PoolLabel>(&v.payload())) {
        std::ostringstream os;
        os << 'p' << (p->pool + 1) << '^' << p->index << '|';
        if (p->view)
            os << (*p->view + 1);
        else
            os << "⊥";
        return std::move(os).str();
    }
    if (const auto* n = std::get_if<NamedLabel>(&v.payload()))
        return n->name;
    if (const auto* a = std::get_if<AgentLabel>(&v.payload())) {
        std::ostringstream os;
        os << 'm' << a->member << '=';
        if (a->value)
            os << *a->value;
        else
            os << "⊥";
        return std::move(os).str();
    }
    const auto color = v.subdiv_color();
    std::ostringstream os;
    os << '(' << (color ? display_label(*color) : std::string("bary")) << "; {";
    bool first = true;
    for (const Vertex& c : v.subdiv_carrier()) {
        if (!first)
            os << ',';
        first = false;
        os << display_label(c);
    }
    os << "})";
    return std::move(os).str();
}

inline json payload_to_json(const Vertex& v) {
    json out;
    if (const auto* n = std::get_if<NamedLabel>(&v.payload())) {
        out["kind"] = "named";
        out["name"] = n->name;
    } else if (const auto* p = std::get_if<PoolLabel>(&v.payload())) {
        out["kind"] = "pool";
        out["pool"] = p->pool;
        out["index"] = p->index;
        out["view"] = p->view ? json(*p->view) : json(nullptr);
        if (p->facet_tag)
            out["facet"] = *p->facet_tag;
    } else if (const auto* a = std::get_if<AgentLabel>(&v.payload())) {
        out["kind"] = "agent";
        out["member"] = a->member;
        out["value"] = a->value ? json(*a->value) : json(nullptr);
    } else {
        const auto color = v.subdiv_color();
        out["kind"] = "subdiv";
        out["color"] = color ? json(color->key()) : json(nullptr);
        json carrier = json::array();
        for (const Vertex& c : v.subdiv_carrier())
            carrier.push_back(c.key());
        out["carrier"] = std::move(carrier);
    }
    return out;
}

/// `{"facets": [[key,...],...], "vertices": {key: payload}}`, facets and
/// keys in canonical order.
inline json complex_to_json(const Complex& c) {
    json out;
    json facets = json::array();
    std::vector<Simplex> sorted = c.facets();
    std::sort(sorted.begin(), sorted.end());
    for (const Simplex& f : sorted) {
        json row = json::array();
        for (const Vertex& v : f.vertices())
            row.push_back(v.key());
        facets.push_back(std::move(row));
    }
    out["facets"] = std::move(facets);
    json verts = json::object();
    for (const Vertex& v : c.vertices())
        verts[v.key()] = payload_to_json(v);
    out["vertices"] = std::move(verts);
    return out;
}

/// Inverse of complex_to_json. Subdivision payloads may reference other
/// keys in the same table; references are resolved recursively.
inline Complex complex_from_json(const json& doc) {
    if (!doc.contains("facets") || !doc.contains("vertices"))
        throw ConstructionError("complex JSON needs 'facets' and 'vertices'");
    const json& table = doc["vertices"];

    std::map<std::string, Vertex> resolved;
    std::function<Vertex(const std::string&)> resolve = [&](const std::string& key) -> Vertex {
        auto hit = resolved.find(key);
        if (hit != resolved.end())
            return hit->second;
        if (!table.contains(key))
            throw ConstructionError("vertex key missing from table: " + key);
        const json& p = table[key];
        const std::string kind = p.value("kind", "");
        std::optional<Vertex> v;
        if (kind == "named") {
            v = Vertex::named(p.at("name").get<std::string>());
        } else if (kind == "pool") {
            std::optional<int> view;
            if (!p.at("view").is_null())
                view = p.at("view").get<int>();
            std::optional<std::int64_t> tag;
            if (p.contains("facet") && !p["facet"].is_null())
                tag = p["facet"].get<std::int64_t>();
            v = Vertex::pool_vertex(p.at("pool").get<int>(), p.at("index").get<int>(), view, tag);
        } else if (kind == "agent") {
            std::optional<int> value;
            if (!p.at("value").is_null())
                value = p.at("value").get<int>();
            v = Vertex::agent(p.at("member").get<int>(), value);
        } else if (kind == "subdiv") {
            std::optional<Vertex> color;
            if (!p.at("color").is_null())
                color = resolve(p.at("color").get<std::string>());
            std::vector<Vertex> carrier;
            for (const auto& ck : p.at("carrier"))
                carrier.push_back(resolve(ck.get<std::string>()));
            v = Vertex::subdiv(color, carrier);
        } else {
            throw ConstructionError("unknown vertex kind in JSON: " + kind);
        }
        if (v->key() != key)
            throw ConstructionError("vertex key does not match payload: " + key);
        resolved.emplace(key, *v);
        return *v;
    };

    std::vector<Simplex> facets;
    for (const auto& row : doc["facets"]) {
        std::vector<Vertex> verts;
        for (const auto& k : row)
            verts.push_back(resolve(k.get<std::string>()));
        facets.push_back(Simplex::of(std::move(verts)));
    }
    return make_complex(std::move(facets));
}

namespace detail {

inline std::string dot_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char ch : s) {
        if (ch == '"' || ch == '\\')
            out.push_back('\\');
        out.push_back(ch);
    }
    return out;
}

// Fixed palette for coloring subdivision vertices by base color.
inline const char* dot_palette(std::size_t i) {
    static const char* kColors[] = {"lightblue", "lightsalmon",  "palegreen",  "gold",
                                    "plum",      "lightskyblue", "peachpuff",  "aquamarine",
                                    "khaki",     "thistle",      "lightcoral", "honeydew"};
    return kColors[i % (sizeof(kColors) / sizeof(kColors[0]))];
}

} // namespace detail

/// Graphviz export: one cluster per path-connected component, nodes
/// labeled for humans, undirected 1-skeleton edges. Subdivision nodes
/// are filled by base color.
inline std::string complex_to_dot(const Complex& c, const std::string& name = "complex") {
    std::ostringstream os;
    os << "graph \"" << detail::dot_escape(name) << "\" {\n";
    os << "  node [shape=ellipse];\n";

    std::map<Vertex, std::size_t> color_rank;
    for (const Vertex& v : c.vertices())
        if (v.is_subdiv())
            color_rank.emplace(v.base_color(), 0);
    std::size_t rank = 0;
    for (auto& [color, r] : color_rank)
        r = rank++;

    const auto comps = components(c);
    for (std::size_t ci = 0; ci < comps.size(); ++ci) {
        os << "  subgraph cluster_" << ci << " {\n";
        for (const Vertex& v : comps[ci].vertices()) {
            os << "    \"" << detail::dot_escape(v.key()) << "\" [label=\""
               << detail::dot_escape(display_label(v)) << "\"";
            if (v.is_subdiv())
                os << ", style=filled, fillcolor="
                   << detail::dot_palette(color_rank.at(v.base_color()));
            os << "];\n";
        }
        std::set<std::pair<Vertex, Vertex>> edges;
        for (const Simplex& f : comps[ci].facets())
            for (std::size_t i = 0; i < f.size(); ++i)
                for (std::size_t j = i + 1; j < f.size(); ++j)
                    edges.emplace(f.vertices()[i], f.vertices()[j]);
        for (const auto& [a, b] : edges)
            os << "    \"" << detail::dot_escape(a.key()) << "\" -- \""
               << detail::dot_escape(b.key()) << "\";\n";
        os << "  }\n";
    }
    os << "}\n";
    return std::move(os).str();
}

} // namespace topopools
