#pragma once

#include <algorithm>
#include <cstdlib>
#include <map>
#include <memory>
#include <numeric>
#include <set>
#include <vector>

#include "topopools/errors.hpp"
#include "topopools/vertex.hpp"

namespace topopools {

/// Finite set of vertices, stored sorted in canonical order.
/// dim = number of vertices - 1; the empty simplex is not representable.
class Simplex {
  public:
    /// Builds a simplex from a vertex list. Duplicates are rejected.
    static Simplex of(std::vector<Vertex> vertices) {
        if (vertices.empty())
            throw ArgumentError("simplex needs at least one vertex");
        std::sort(vertices.begin(), vertices.end());
        for (std::size_t i = 1; i < vertices.size(); ++i)
            if (vertices[i] == vertices[i - 1])
                throw ArgumentError("duplicate vertex in simplex: " + vertices[i].key());
        return Simplex(std::move(vertices));
    }

    /// Builds from an already-deduplicated set.
    static Simplex of_set(const std::set<Vertex>& vertices) {
        if (vertices.empty())
            throw ArgumentError("simplex needs at least one vertex");
        return Simplex(std::vector<Vertex>(vertices.begin(), vertices.end()));
    }

    int dim() const { return static_cast<int>(verts_.size()) - 1; }
    std::size_t size() const { return verts_.size(); }
    const std::vector<Vertex>& vertices() const& { return verts_; }
    std::vector<Vertex> vertices() const&& { return verts_; } // safe on temporaries
    const Vertex& min_vertex() const { return verts_.front(); }

    bool contains(const Vertex& v) const {
        return std::binary_search(verts_.begin(), verts_.end(), v);
    }

    /// Subset test (face relation, not necessarily proper).
    bool is_face_of(const Simplex& other) const {
        if (size() > other.size())
            return false;
        return std::includes(other.verts_.begin(), other.verts_.end(), verts_.begin(),
                             verts_.end());
    }

    bool disjoint_from(const Simplex& other) const {
        auto a = verts_.begin();
        auto b = other.verts_.begin();
        while (a != verts_.end() && b != other.verts_.end()) {
            if (*a == *b)
                return false;
            if (*a < *b)
                ++a;
            else
                ++b;
        }
        return true;
    }

    /// All nonempty faces of dimension exactly k, in canonical order.
    std::vector<Simplex> faces_of_dim(int k) const {
        std::vector<Simplex> out;
        if (k < 0 || k > dim())
            return out;
        std::vector<Vertex> current;
        enumerate_faces(0, k + 1, current, out);
        return out;
    }

    /// All nonempty faces (all dimensions), canonical order within dims.
    std::vector<Simplex> all_faces() const {
        std::vector<Simplex> out;
        for (int k = 0; k <= dim(); ++k) {
            auto fs = faces_of_dim(k);
            out.insert(out.end(), fs.begin(), fs.end());
        }
        return out;
    }

    friend bool operator==(const Simplex& a, const Simplex& b) { return a.verts_ == b.verts_; }
    friend bool operator!=(const Simplex& a, const Simplex& b) { return !(a == b); }
    friend bool operator<(const Simplex& a, const Simplex& b) {
        return std::lexicographical_compare(a.verts_.begin(), a.verts_.end(), b.verts_.begin(),
                                            b.verts_.end());
    }

  private:
    explicit Simplex(std::vector<Vertex> verts) : verts_(std::move(verts)) {}

    void enumerate_faces(std::size_t start, std::size_t want, std::vector<Vertex>& current,
                         std::vector<Simplex>& out) const {
        if (current.size() == want) {
            out.push_back(Simplex(current));
            return;
        }
        for (std::size_t i = start; i + (want - current.size()) <= verts_.size(); ++i) {
            current.push_back(verts_[i]);
            enumerate_faces(i + 1, want, current, out);
            current.pop_back();
        }
    }

    std::vector<Vertex> verts_;
};

/// Abstract simplicial complex represented by its facets (maximal
/// simplices). Downward closure is implicit: a simplex belongs to the
/// complex iff it is a face of some facet. Immutable after construction;
/// copies share storage.
class Complex {
  public:
    Complex() = delete;

    const std::vector<Simplex>& facets() const& { return data_->facets; }
    std::vector<Simplex> facets() const&& { return data_->facets; } // safe on temporaries
    const std::vector<Vertex>& vertices() const& { return data_->vertices; }
    std::vector<Vertex> vertices() const&& { return data_->vertices; }
    std::size_t facet_count() const { return data_->facets.size(); }
    int dim() const { return data_->dim; }

    bool contains_vertex(const Vertex& v) const {
        return data_->vertex_facets.find(v) != data_->vertex_facets.end();
    }

    /// Membership: s is a face of some facet.
    bool contains(const Simplex& s) const {
        auto it = data_->vertex_facets.find(s.min_vertex());
        if (it == data_->vertex_facets.end())
            return false;
        for (int fi : it->second)
            if (s.is_face_of(data_->facets[fi]))
                return true;
        return false;
    }

    /// Indices of facets containing the given vertex.
    const std::vector<int>& facets_with_vertex(const Vertex& v) const {
        auto it = data_->vertex_facets.find(v);
        if (it == data_->vertex_facets.end())
            throw DomainError("vertex not in complex: " + v.key());
        return it->second;
    }

    bool same_storage(const Complex& other) const { return data_ == other.data_; }

    friend bool operator==(const Complex& a, const Complex& b) {
        return a.data_ == b.data_ || a.data_->facets == b.data_->facets;
    }
    friend bool operator!=(const Complex& a, const Complex& b) { return !(a == b); }

    friend Complex make_complex(std::vector<Simplex> facets);

  private:
    struct Data {
        std::vector<Simplex> facets;
        std::vector<Vertex> vertices;
        std::map<Vertex, std::vector<int>> vertex_facets;
        int dim = -1;
    };

    explicit Complex(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

    std::shared_ptr<const Data> data_;
};

namespace detail {

/// Optional fuzzing hook: when TOPO_POOLS_SEED_ORDER is set to an
/// integer, internal facet storage is permuted by a deterministic
/// seeded shuffle. Membership and all serialized output are unaffected;
/// the hook exists to expose accidental dependence on storage order.
inline std::optional<unsigned> seed_order_env() {
    const char* raw = std::getenv("TOPO_POOLS_SEED_ORDER");
    if (!raw || !*raw)
        return std::nullopt;
    char* end = nullptr;
    unsigned long v = std::strtoul(raw, &end, 10);
    if (end == raw)
        return std::nullopt;
    return static_cast<unsigned>(v);
}

inline void seeded_shuffle(std::vector<Simplex>& facets, unsigned seed) {
    // Small deterministic LCG; std::shuffle's result is
    // implementation-defined across standard libraries.
    std::uint64_t state = seed * 6364136223846793005ULL + 1442695040888963407ULL;
    for (std::size_t i = facets.size(); i > 1; --i) {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        std::size_t j = static_cast<std::size_t>((state >> 33) % i);
        std::swap(facets[i - 1], facets[j]);
    }
}

} // namespace detail

/// Builds a complex from the given simplices: sorts canonically, drops
/// duplicates, absorbs any simplex contained in another. The input must
/// be nonempty.
inline Complex make_complex(std::vector<Simplex> facets) {
    if (facets.empty())
        throw ConstructionError("complex needs at least one facet");
    std::sort(facets.begin(), facets.end());
    facets.erase(std::unique(facets.begin(), facets.end()), facets.end());

    // Absorption: a simplex that is a face of a larger one is not a
    // facet. Skipped when all candidates share one dimension (equal-size
    // sets can only contain each other if equal, already deduplicated).
    bool mixed_dims = false;
    for (std::size_t i = 1; i < facets.size(); ++i)
        if (facets[i].size() != facets[0].size()) {
            mixed_dims = true;
            break;
        }
    if (mixed_dims) {
        std::map<Vertex, std::vector<int>> by_vertex;
        for (std::size_t i = 0; i < facets.size(); ++i)
            for (const Vertex& v : facets[i].vertices())
                by_vertex[v].push_back(static_cast<int>(i));
        std::vector<bool> absorbed(facets.size(), false);
        for (std::size_t i = 0; i < facets.size(); ++i) {
            const auto& candidates = by_vertex[facets[i].min_vertex()];
            for (int j : candidates) {
                if (static_cast<std::size_t>(j) == i || absorbed[j])
                    continue;
                if (facets[i].size() < facets[j].size() && facets[i].is_face_of(facets[j])) {
                    absorbed[i] = true;
                    break;
                }
            }
        }
        std::vector<Simplex> kept;
        kept.reserve(facets.size());
        for (std::size_t i = 0; i < facets.size(); ++i)
            if (!absorbed[i])
                kept.push_back(facets[i]);
        facets = std::move(kept);
    }

    if (auto seed = detail::seed_order_env())
        detail::seeded_shuffle(facets, *seed);

    auto data = std::make_shared<Complex::Data>();
    data->facets = std::move(facets);
    std::set<Vertex> verts;
    for (std::size_t i = 0; i < data->facets.size(); ++i) {
        data->dim = std::max(data->dim, data->facets[i].dim());
        for (const Vertex& v : data->facets[i].vertices()) {
            verts.insert(v);
            data->vertex_facets[v].push_back(static_cast<int>(i));
        }
    }
    data->vertices.assign(verts.begin(), verts.end());
    return Complex(std::move(data));
}

inline Complex make_complex(std::initializer_list<Simplex> facets) {
    return make_complex(std::vector<Simplex>(facets));
}

/// Dimension of the complex: max over facets.
inline int dim(const Complex& c) { return c.dim(); }

/// k-skeleton: every simplex of dimension at most k. Facets of the
/// result are the k-faces, plus any original facet of dimension < k.
inline Complex skeleton(const Complex& c, int k) {
    if (k < 0)
        throw ArgumentError("skeleton dimension must be non-negative");
    std::vector<Simplex> out;
    for (const Simplex& f : c.facets()) {
        if (f.dim() <= k) {
            out.push_back(f);
        } else {
            auto faces = f.faces_of_dim(k);
            out.insert(out.end(), faces.begin(), faces.end());
        }
    }
    return make_complex(std::move(out));
}

/// Join A * B: all unions of a facet of A with a facet of B.
/// Vertex sets must be disjoint; dim(A*B) = dim(A) + dim(B) + 1.
inline Complex join(const Complex& a, const Complex& b) {
    for (const Vertex& v : a.vertices())
        if (b.contains_vertex(v))
            throw JoinError("join arguments share vertex: " + v.key());
    std::vector<Simplex> out;
    out.reserve(a.facet_count() * b.facet_count());
    for (const Simplex& f : a.facets())
        for (const Simplex& g : b.facets()) {
            std::vector<Vertex> verts = f.vertices();
            verts.insert(verts.end(), g.vertices().begin(), g.vertices().end());
            out.push_back(Simplex::of(std::move(verts)));
        }
    return make_complex(std::move(out));
}

/// Path-connected components, as sub-complexes. Facets are grouped by
/// vertex sharing (union-find); components are ordered by their least
/// vertex.
inline std::vector<Complex> components(const Complex& c) {
    const auto& facets = c.facets();
    std::vector<int> parent(facets.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    auto unite = [&](int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b)
            parent[std::max(a, b)] = std::min(a, b);
    };

    std::map<Vertex, int> first_seen;
    for (std::size_t i = 0; i < facets.size(); ++i)
        for (const Vertex& v : facets[i].vertices()) {
            auto [it, inserted] = first_seen.emplace(v, static_cast<int>(i));
            if (!inserted)
                unite(it->second, static_cast<int>(i));
        }

    std::map<int, std::vector<Simplex>> groups;
    for (std::size_t i = 0; i < facets.size(); ++i)
        groups[find(static_cast<int>(i))].push_back(facets[i]);

    std::vector<Complex> out;
    out.reserve(groups.size());
    std::vector<std::pair<Vertex, Complex>> keyed;
    for (auto& [root, group] : groups) {
        Complex comp = make_complex(std::move(group));
        keyed.emplace_back(comp.vertices().front(), comp);
    }
    std::sort(keyed.begin(), keyed.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    for (auto& [v, comp] : keyed)
        out.push_back(comp);
    return out;
}

} // namespace topopools
