#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include <json.hpp>

#include "topopools/complex.hpp"
#include "topopools/errors.hpp"
#include "topopools/vertex.hpp"

namespace topopools {

/// Vertex map between two complexes: total on the domain's vertices,
/// images must exist in the codomain. No structure beyond that is
/// required at construction; simpliciality is a separate check.
class VertexMap {
  public:
    VertexMap(Complex domain, Complex codomain, std::map<Vertex, Vertex> table)
        : domain_(std::move(domain)), codomain_(std::move(codomain)), table_(std::move(table)) {
        for (const Vertex& v : domain_.vertices()) {
            auto it = table_.find(v);
            if (it == table_.end())
                throw ConstructionError("vertex map not total, missing: " + v.key());
            if (!codomain_.contains_vertex(it->second))
                throw ConstructionError("image vertex not in codomain: " + it->second.key());
        }
    }

    const Complex& domain() const& { return domain_; }
    Complex domain() const&& { return domain_; }
    const Complex& codomain() const& { return codomain_; }
    Complex codomain() const&& { return codomain_; }
    const std::map<Vertex, Vertex>& table() const& { return table_; }
    std::map<Vertex, Vertex> table() const&& { return table_; } // safe on temporaries

    const Vertex& apply(const Vertex& v) const {
        auto it = table_.find(v);
        if (it == table_.end())
            throw DomainError("vertex outside map domain: " + v.key());
        return it->second;
    }

    /// Image of a simplex as a simplex (collapsed vertices merge).
    Simplex image(const Simplex& s) const {
        std::set<Vertex> out;
        for (const Vertex& v : s.vertices())
            out.insert(apply(v));
        return Simplex::of_set(out);
    }

    friend bool operator==(const VertexMap& a, const VertexMap& b) {
        return a.table_ == b.table_;
    }

  private:
    Complex domain_;
    Complex codomain_;
    std::map<Vertex, Vertex> table_;
};

struct CheckResult {
    bool ok = false;
    std::optional<Simplex> witness; // first violation when !ok

    explicit operator bool() const { return ok; }
};

inline nlohmann::ordered_json check_result_to_json(const CheckResult& r) {
    nlohmann::ordered_json out;
    out["ok"] = r.ok;
    if (r.witness) {
        nlohmann::ordered_json w = nlohmann::ordered_json::array();
        for (const Vertex& v : r.witness->vertices())
            w.push_back(v.key());
        out["witness"] = std::move(w);
    } else {
        out["witness"] = nullptr;
    }
    return out;
}

inline nlohmann::ordered_json vertex_map_to_json(const VertexMap& m) {
    nlohmann::ordered_json table = nlohmann::ordered_json::object();
    for (const auto& [from, to] : m.table())
        table[from.key()] = to.key();
    nlohmann::ordered_json out;
    out["map"] = std::move(table);
    return out;
}

/// A vertex map is simplicial when it carries every simplex of the
/// domain to a simplex of the codomain. Checking facets suffices:
/// images of faces are faces of images.
inline CheckResult is_simplicial(const VertexMap& m) {
    for (const Simplex& f : m.domain().facets()) {
        if (!m.codomain().contains(m.image(f)))
            return {false, f};
    }
    return {true, std::nullopt};
}

/// g after f. Requires the codomain vertices f produces to be mapped by g.
inline VertexMap compose(const VertexMap& g, const VertexMap& f) {
    std::map<Vertex, Vertex> table;
    for (const auto& [v, fv] : f.table())
        table.emplace(v, g.apply(fv));
    return VertexMap(f.domain(), g.codomain(), std::move(table));
}

/// Carrier map: assigns each simplex of the domain a subcomplex of the
/// codomain, given by generating simplices. Values are stored on facets
/// (plus optional per-simplex overrides); faces evaluate to the
/// intersection of the images of the facets containing them. Identical
/// value vectors share storage, so constant carriers stay cheap to
/// evaluate and compare.
class CarrierMap {
  public:
    using Value = std::shared_ptr<const std::vector<Simplex>>;

    CarrierMap(Complex domain, Complex codomain,
               std::map<Simplex, std::vector<Simplex>> facet_table,
               std::map<Simplex, std::vector<Simplex>> overrides = {})
        : domain_(std::move(domain)), codomain_(std::move(codomain)) {
        for (const Simplex& f : domain_.facets())
            if (facet_table.find(f) == facet_table.end())
                throw ConstructionError("carrier map missing a facet value");
        std::map<std::vector<Simplex>, Value> pool;
        auto intern = [&pool](std::vector<Simplex> value) {
            canonicalize(value);
            auto it = pool.find(value);
            if (it != pool.end())
                return it->second;
            auto shared = std::make_shared<const std::vector<Simplex>>(std::move(value));
            pool.emplace(*shared, shared);
            return shared;
        };
        for (auto& [s, value] : facet_table)
            facet_table_.emplace(s, intern(std::move(value)));
        for (auto& [s, value] : overrides)
            overrides_.emplace(s, intern(std::move(value)));
    }

    /// Shared-value constructor: every listed facet maps to the same
    /// (already canonical) generator list. Copy-free for large constant
    /// carriers.
    CarrierMap(Complex domain, Complex codomain, Value constant_value)
        : domain_(std::move(domain)), codomain_(std::move(codomain)) {
        if (!constant_value)
            throw ConstructionError("carrier map needs a value");
        for (const Simplex& f : domain_.facets())
            facet_table_.emplace(f, constant_value);
    }

    const Complex& domain() const& { return domain_; }
    Complex domain() const&& { return domain_; }
    const Complex& codomain() const& { return codomain_; }
    Complex codomain() const&& { return codomain_; }

    /// Generating simplices of the image subcomplex of s.
    Value value(const Simplex& s) const {
        auto ov = overrides_.find(s);
        if (ov != overrides_.end())
            return ov->second;
        auto ft = facet_table_.find(s);
        if (ft != facet_table_.end())
            return ft->second;
        if (!domain_.contains(s))
            throw DomainError("simplex outside carrier map domain");
        Value acc;
        for (int fi : domain_.facets_with_vertex(s.min_vertex())) {
            const Simplex& facet = domain_.facets()[fi];
            if (!s.is_face_of(facet))
                continue;
            const Value& img = facet_table_.at(facet);
            if (!acc || acc == img) {
                acc = img;
            } else {
                acc = std::make_shared<const std::vector<Simplex>>(
                    intersect_subcomplexes(*acc, *img));
            }
        }
        return acc; // s is in some facet, so acc is set
    }

    /// Subcomplex membership: s lies in the subcomplex generated by the
    /// value of t.
    bool value_contains(const Simplex& t, const Simplex& s) const {
        return generators_contain(*value(t), s);
    }

    static bool generators_contain(const std::vector<Simplex>& generators, const Simplex& s) {
        // Generators are sorted; an exact hit binary-searches, a proper
        // face falls back to the scan.
        if (std::binary_search(generators.begin(), generators.end(), s))
            return true;
        for (const Simplex& g : generators)
            if (s.is_face_of(g))
                return true;
        return false;
    }

  private:
    static void canonicalize(std::vector<Simplex>& value) {
        std::sort(value.begin(), value.end());
        value.erase(std::unique(value.begin(), value.end()), value.end());
    }

    static std::vector<Simplex> intersect_subcomplexes(const std::vector<Simplex>& a,
                                                       const std::vector<Simplex>& b) {
        // Maximal pairwise intersections generate the subcomplex meet.
        std::vector<Simplex> raw;
        for (const Simplex& x : a)
            for (const Simplex& y : b) {
                std::vector<Vertex> shared;
                for (const Vertex& v : x.vertices())
                    if (y.contains(v))
                        shared.push_back(v);
                if (!shared.empty())
                    raw.push_back(Simplex::of(std::move(shared)));
            }
        if (raw.empty())
            return raw;
        std::sort(raw.begin(), raw.end());
        raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
        std::vector<Simplex> maximal;
        for (std::size_t i = 0; i < raw.size(); ++i) {
            bool dominated = false;
            for (std::size_t j = 0; j < raw.size() && !dominated; ++j)
                if (i != j && raw[i].size() < raw[j].size() && raw[i].is_face_of(raw[j]))
                    dominated = true;
            if (!dominated)
                maximal.push_back(raw[i]);
        }
        return maximal;
    }

    Complex domain_;
    Complex codomain_;
    std::map<Simplex, Value> facet_table_;
    std::map<Simplex, Value> overrides_;
};

/// Monotonicity: s subset-of t implies value(s) subcomplex-of value(t).
/// Checks every face pair within each facet down to the given
/// codimension (pass dim+1 or more for an exhaustive sweep). Returns
/// the smaller simplex of the first violating pair.
inline CheckResult check_monotonic(const CarrierMap& cm, int sample_depth) {
    if (sample_depth < 1)
        throw ArgumentError("sample_depth must be at least 1");
    for (const Simplex& facet : cm.domain().facets()) {
        const int lowest = std::max(0, facet.dim() - sample_depth);
        std::vector<Simplex> faces;
        for (int k = lowest; k <= facet.dim(); ++k) {
            auto fs = facet.faces_of_dim(k);
            faces.insert(faces.end(), fs.begin(), fs.end());
        }
        std::vector<CarrierMap::Value> values;
        values.reserve(faces.size());
        for (const Simplex& face : faces)
            values.push_back(cm.value(face));
        for (std::size_t i = 0; i < faces.size(); ++i) {
            for (std::size_t j = 0; j < faces.size(); ++j) {
                if (values[i] == values[j]) // shared storage, containment trivial
                    continue;
                if (faces[i].size() >= faces[j].size() || !faces[i].is_face_of(faces[j]))
                    continue;
                for (const Simplex& gen : *values[i])
                    if (!CarrierMap::generators_contain(*values[j], gen))
                        return {false, faces[i]};
            }
        }
    }
    return {true, std::nullopt};
}

/// Decision check: a protocol (xi) with decision map delta solves the
/// task whose carrier is task_delta when, for every input facet s,
/// delta maps every facet of xi(s) into task_delta(s).
inline CheckResult check_decision(const VertexMap& delta, const CarrierMap& xi,
                                  const CarrierMap& task_delta) {
    for (const Simplex& input_facet : xi.domain().facets()) {
        const auto allowed = task_delta.value(input_facet);
        for (const Simplex& proto : *xi.value(input_facet)) {
            if (!CarrierMap::generators_contain(*allowed, delta.image(proto)))
                return {false, input_facet};
        }
    }
    return {true, std::nullopt};
}

/// Simulation check: phi carries the real protocol into the virtual one
/// when phi(xi_r(s)) is contained in xi_v(s) for every input facet s.
inline CheckResult check_simulation(const VertexMap& phi, const CarrierMap& xi_r,
                                    const CarrierMap& xi_v) {
    for (const Simplex& input_facet : xi_r.domain().facets()) {
        const auto allowed = xi_v.value(input_facet);
        for (const Simplex& proto : *xi_r.value(input_facet)) {
            if (!CarrierMap::generators_contain(*allowed, phi.image(proto)))
                return {false, input_facet};
        }
    }
    return {true, std::nullopt};
}

/// Combinatorial homeomorphism test for pool simplices: the index-set
/// bijection U -> V with index(U) = index(V) is a homeomorphism of the
/// induced discrete spaces exactly when the two index sets coincide.
inline bool are_homeomorphic_pools(const Simplex& s, const Simplex& t) {
    auto index_set = [](const Simplex& x) {
        std::set<int> out;
        for (const Vertex& v : x.vertices())
            out.insert(v.pool_label().index); // throws DomainError on non-pool payload
        return out;
    };
    return index_set(s) == index_set(t);
}

} // namespace topopools
