#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "topopools/errors.hpp"

namespace topopools {

class Vertex;
struct VertexData;

/// Plain named vertex, used for ad-hoc complexes ("a", "b", ...).
struct NamedLabel {
    std::string name;
};

/// Miner-state vertex: pool id, index within the pool, current view
/// (nullopt = the miner has not joined any pool yet), and an optional
/// tag separating otherwise-equal vertices of distinct output facets.
struct PoolLabel {
    int pool = 0;
    int index = 0;
    std::optional<int> view;
    std::optional<std::int64_t> facet_tag;
};

/// Generic process/value vertex used by agreement tasks and standard
/// simplices: member id plus an optional decided value.
struct AgentLabel {
    int member = 0;
    std::optional<int> value;
};

/// Subdivision vertex: an optional color (a vertex of the complex being
/// subdivided; absent for barycentric centers) plus the carrier face it
/// sits on, given by that face's vertices.
struct SubdivLabel {
    std::optional<std::shared_ptr<const VertexData>> color;
    std::vector<std::shared_ptr<const VertexData>> carrier;
};

using VertexPayload = std::variant<NamedLabel, PoolLabel, AgentLabel, SubdivLabel>;

struct VertexData {
    VertexPayload payload;
    std::string key; // canonical token, computed once at construction
};

namespace detail {

int compare_data(const VertexData& a, const VertexData& b);

inline int compare_int(std::int64_t a, std::int64_t b) {
    return a < b ? -1 : (a > b ? 1 : 0);
}

template <typename T>
int compare_opt(const std::optional<T>& a, const std::optional<T>& b) {
    if (a.has_value() != b.has_value())
        return a.has_value() ? 1 : -1; // absent sorts first
    if (!a.has_value())
        return 0;
    if constexpr (std::is_arithmetic_v<T>)
        return compare_int(*a, *b);
    else
        return compare_data(**a, **b); // shared_ptr<const VertexData>
}

} // namespace detail

/// Immutable vertex identifier. The payload is the identity: two
/// vertices are equal exactly when their payloads are. Total order is
/// structural (payload kind first, then fields, recursively for
/// subdivision vertices), so enumeration order is reproducible.
class Vertex {
  public:
    static Vertex named(std::string name) {
        return make(NamedLabel{std::move(name)});
    }

    static Vertex pool_vertex(int pool, int index, std::optional<int> view = std::nullopt,
                              std::optional<std::int64_t> facet_tag = std::nullopt) {
        return make(PoolLabel{pool, index, view, facet_tag});
    }

    static Vertex agent(int member, std::optional<int> value = std::nullopt) {
        return make(AgentLabel{member, value});
    }

    static Vertex subdiv(std::optional<Vertex> color, const std::vector<Vertex>& carrier) {
        SubdivLabel label;
        if (color)
            label.color = color->data_;
        label.carrier.reserve(carrier.size());
        for (const Vertex& v : carrier)
            label.carrier.push_back(v.data_);
        return make(std::move(label));
    }

    const std::string& key() const { return data_->key; }
    const VertexPayload& payload() const { return data_->payload; }

    bool is_pool() const { return std::holds_alternative<PoolLabel>(data_->payload); }
    bool is_subdiv() const { return std::holds_alternative<SubdivLabel>(data_->payload); }

    const PoolLabel& pool_label() const {
        const auto* p = std::get_if<PoolLabel>(&data_->payload);
        if (!p)
            throw DomainError("vertex is not a pool vertex: " + key());
        return *p;
    }

    /// Color of a chromatic-subdivision vertex, as a Vertex of the
    /// complex that was subdivided. Absent for barycentric vertices.
    std::optional<Vertex> subdiv_color() const {
        const auto* s = std::get_if<SubdivLabel>(&data_->payload);
        if (!s || !s->color)
            return std::nullopt;
        return Vertex(*s->color);
    }

    std::vector<Vertex> subdiv_carrier() const {
        const auto* s = std::get_if<SubdivLabel>(&data_->payload);
        if (!s)
            throw DomainError("vertex is not a subdivision vertex: " + key());
        std::vector<Vertex> out;
        out.reserve(s->carrier.size());
        for (const auto& d : s->carrier)
            out.emplace_back(Vertex(d));
        return out;
    }

    /// Follows chromatic color links down to a vertex of the base
    /// complex. Barycentric and base vertices are their own base color.
    Vertex base_color() const {
        Vertex v = *this;
        while (true) {
            auto c = v.subdiv_color();
            if (!c)
                return v;
            v = *c;
        }
    }

    friend bool operator==(const Vertex& a, const Vertex& b) {
        return a.data_ == b.data_ || a.data_->key == b.data_->key;
    }
    friend bool operator!=(const Vertex& a, const Vertex& b) { return !(a == b); }
    friend bool operator<(const Vertex& a, const Vertex& b) {
        if (a.data_ == b.data_)
            return false;
        return detail::compare_data(*a.data_, *b.data_) < 0;
    }
    friend bool operator>(const Vertex& a, const Vertex& b) { return b < a; }
    friend bool operator<=(const Vertex& a, const Vertex& b) { return !(b < a); }
    friend bool operator>=(const Vertex& a, const Vertex& b) { return !(a < b); }

  private:
    explicit Vertex(std::shared_ptr<const VertexData> data) : data_(std::move(data)) {}

    static Vertex make(VertexPayload payload) {
        auto data = std::make_shared<VertexData>();
        data->payload = std::move(payload);
        data->key = encode_key(data->payload);
        return Vertex(std::move(data));
    }

    static std::string encode_key(const VertexPayload& payload) {
        std::string out;
        if (const auto* n = std::get_if<NamedLabel>(&payload)) {
            out.reserve(n->name.size() + 2);
            out += "n:";
            out += n->name;
        } else if (const auto* p = std::get_if<PoolLabel>(&payload)) {
            out.reserve(16);
            out += 'p';
            out += std::to_string(p->pool);
            out += '^';
            out += std::to_string(p->index);
            out += '|';
            if (p->view)
                out += std::to_string(*p->view);
            else
                out += '_';
            if (p->facet_tag) {
                out += '@';
                out += std::to_string(*p->facet_tag);
            }
        } else if (const auto* a = std::get_if<AgentLabel>(&payload)) {
            out.reserve(12);
            out += 'm';
            out += std::to_string(a->member);
            out += '=';
            if (a->value)
                out += std::to_string(*a->value);
            else
                out += '_';
        } else {
            const auto& s = std::get<SubdivLabel>(payload);
            out += '[';
            if (s.color)
                out += (*s.color)->key;
            else
                out += '*';
            out += ':';
            for (std::size_t i = 0; i < s.carrier.size(); ++i) {
                if (i)
                    out += ',';
                out += s.carrier[i]->key;
            }
            out += ']';
        }
        return out;
    }

    std::shared_ptr<const VertexData> data_;
};

namespace detail {

inline int compare_data(const VertexData& a, const VertexData& b) {
    const int ka = static_cast<int>(a.payload.index());
    const int kb = static_cast<int>(b.payload.index());
    if (ka != kb)
        return ka < kb ? -1 : 1;
    switch (ka) {
    case 0: {
        const auto& x = std::get<NamedLabel>(a.payload);
        const auto& y = std::get<NamedLabel>(b.payload);
        return x.name.compare(y.name) < 0 ? -1 : (x.name == y.name ? 0 : 1);
    }
    case 1: {
        const auto& x = std::get<PoolLabel>(a.payload);
        const auto& y = std::get<PoolLabel>(b.payload);
        if (int c = compare_int(x.pool, y.pool))
            return c;
        if (int c = compare_int(x.index, y.index))
            return c;
        if (int c = compare_opt(x.view, y.view))
            return c;
        return compare_opt(x.facet_tag, y.facet_tag);
    }
    case 2: {
        const auto& x = std::get<AgentLabel>(a.payload);
        const auto& y = std::get<AgentLabel>(b.payload);
        if (int c = compare_int(x.member, y.member))
            return c;
        return compare_opt(x.value, y.value);
    }
    default: {
        const auto& x = std::get<SubdivLabel>(a.payload);
        const auto& y = std::get<SubdivLabel>(b.payload);
        if (int c = compare_opt(x.color, y.color))
            return c;
        const std::size_t n = std::min(x.carrier.size(), y.carrier.size());
        for (std::size_t i = 0; i < n; ++i)
            if (int c = compare_data(*x.carrier[i], *y.carrier[i]))
                return c;
        return compare_int(static_cast<std::int64_t>(x.carrier.size()),
                           static_cast<std::int64_t>(y.carrier.size()));
    }
    }
}

} // namespace detail

} // namespace topopools

template <>
struct std::hash<topopools::Vertex> {
    std::size_t operator()(const topopools::Vertex& v) const noexcept {
        return std::hash<std::string>{}(v.key());
    }
};
