#include "flipcycles/tcd.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "flipcycles/errors.hpp"

namespace flipcycles::tcd {

using plabic::Color;
using plabic::Move;
using plabic::MoveKind;
using plabic::Triangle;

namespace {

std::vector<Triangle> white_triangles(const PlabicTriangulation& s) {
    std::vector<Triangle> out;
    for (const auto& t : s.triangles())
        if (t.color == Color::white) out.push_back(t);
    return out;
}

combinat::LabelCollection collection(const PlabicTriangulation& s) {
    return combinat::LabelCollection::from(s.n(), s.k(), s.labels());
}

bool on_boundary(const PlabicTriangulation& s, Subset v) {
    const auto& sets = s.boundary().sets();
    return std::find(sets.begin(), sets.end(), v) != sets.end();
}

}  // namespace

PlabicTriangulation normalize(const PlabicTriangulation& s) {
    return plabic::triangulation_from_labels(collection(s), s.boundary(), white_triangles(s));
}

PlabicGraph contract_black(const PlabicGraph& g) {
    const int count = static_cast<int>(g.vertices.size());
    std::vector<int> parent(count);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto black_internal = [&](int v) { return !g.vertices[v].boundary && g.vertices[v].color == Color::black; };
    std::vector<std::vector<int>> rotation(count);
    for (int v = 0; v < count; ++v) rotation[v] = g.vertices[v].rotation;
    std::vector<bool> contracted(g.edges.size(), false);
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        auto [u, v] = g.edges[e];
        if (!black_internal(u) || !black_internal(v)) continue;
        int ru = find(u), rv = find(v);
        if (ru == rv) throw InternalError("black edges form a cycle");
        auto after = [&](const std::vector<int>& rot) {
            const auto it = std::find(rot.begin(), rot.end(), static_cast<int>(e));
            std::vector<int> out(it + 1, rot.end());
            out.insert(out.end(), rot.begin(), it);
            return out;
        };
        std::vector<int> merged = after(rotation[ru]);
        const std::vector<int> tail = after(rotation[rv]);
        merged.insert(merged.end(), tail.begin(), tail.end());
        parent[rv] = ru;
        rotation[ru] = std::move(merged);
        rotation[rv].clear();
        contracted[e] = true;
    }
    PlabicGraph out;
    std::vector<int> new_id(count, -1);
    for (int v = 0; v < count; ++v)
        if (g.vertices[v].boundary) new_id[v] = out.add_boundary(g.vertices[v].index);
    for (int v = 0; v < count; ++v) {
        if (g.vertices[v].boundary || find(v) != v) continue;
        new_id[v] = out.add_internal(g.vertices[v].color);
        out.vertices[new_id[v]].triangle = g.vertices[v].triangle;
    }
    std::vector<int> new_edge(g.edges.size(), -1);
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        if (contracted[e]) continue;
        auto [u, v] = g.edges[e];
        out.edges.emplace_back(new_id[find(u)], new_id[find(v)]);
        new_edge[e] = static_cast<int>(out.edges.size()) - 1;
    }
    for (int v = 0; v < count; ++v) {
        if (find(v) != v) continue;
        auto& rot = out.vertices[new_id[v]].rotation;
        for (int e : rotation[v]) rot.push_back(new_edge[e]);
    }
    return out;
}

TripleCrossingDiagram as_tcd(const PlabicGraph& g) {
    for (std::size_t v = 0; v < g.vertices.size(); ++v) {
        const auto& x = g.vertices[v];
        if (x.boundary || x.color != Color::white) continue;
        const int d = g.degree(static_cast<int>(v));
        // A white fixed point is a leaf hanging off its boundary vertex.
        if (d == 1 && g.vertices[g.other(x.rotation[0], static_cast<int>(v))].boundary) continue;
        if (d != 3) throw ValidationError("white vertex degree");
    }
    for (const auto& [a, b] : g.edges) {
        const auto& x = g.vertices[a];
        const auto& y = g.vertices[b];
        if (!x.boundary && !y.boundary && x.color == Color::black && y.color == Color::black)
            throw ValidationError("black-black edge");
    }
    const auto report = plabic::is_reduced(g);
    if (!report.reduced) throw ValidationError("not reduced: " + report.witness);
    return TripleCrossingDiagram{g, plabic::strand_permutation(g), std::nullopt};
}

TripleCrossingDiagram tcd_of(const PlabicTriangulation& s) {
    PlabicTriangulation normal = normalize(s);
    TripleCrossingDiagram d = as_tcd(contract_black(plabic::dual_graph(normal)));
    d.normal_form = std::move(normal);
    return d;
}

std::vector<Neighbor> tcd_neighbors(const TripleCrossingDiagram& d) {
    if (!d.normal_form) throw PreconditionError("diagram has no plabic normal form");
    const PlabicTriangulation& s = *d.normal_form;
    std::vector<Neighbor> out;
    for (const auto& m : plabic::available_moves(s))
        if (m.kind == MoveKind::white_trivalent) out.push_back({m.label(), tcd_of(plabic::apply_move(s, m))});
    const std::vector<Triangle> whites = white_triangles(s);
    for (Subset v : s.labels()) {
        if (on_boundary(s, v)) continue;
        // Make v an ear of every black polygon around it.
        std::map<Subset, std::vector<std::pair<int, Subset>>> polygons;
        for (Subset x : s.labels())
            for (int a = 1; a <= s.n(); ++a)
                if (!has(x, a) && ((x | bit(a)) & v) == v)
                    polygons[x | bit(a)].emplace_back(a, x);
        std::vector<Triangle> fixed = whites;
        for (auto& [top, members] : polygons) {
            if (members.size() < 3) continue;
            std::sort(members.begin(), members.end());
            const int m = static_cast<int>(members.size());
            int at = -1;
            for (int i = 0; i < m; ++i)
                if (members[i].second == v) at = i;
            if (at < 0) continue;
            fixed.push_back(plabic::make_triangle(members[(at + m - 1) % m].second, v, members[(at + 1) % m].second));
        }
        PlabicTriangulation prepared;
        try {
            prepared = plabic::triangulation_from_labels(collection(s), s.boundary(), fixed);
        } catch (const ValidationError&) {
            continue;
        }
        for (const auto& m : plabic::available_moves(prepared)) {
            if (m.kind != MoveKind::square || m.old_label != v) continue;
            out.push_back({m.label() + " with black contractions", tcd_of(plabic::apply_move(prepared, m))});
        }
    }
    return out;
}

plabic::PlabicComplex build_t_complex(const DecoratedPermutation& p, Execution exec, std::size_t cap) {
    return plabic::build_plabic_complex(p, plabic::ComplexKind::T, exec, cap);
}

}  // namespace flipcycles::tcd
