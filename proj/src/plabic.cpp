#include "flipcycles/plabic.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "flipcycles/errors.hpp"

namespace flipcycles::plabic {

namespace {

Side side_of(Subset a, Subset b) { return a < b ? Side{a, b} : Side{b, a}; }

void append_subset(std::string& out, Subset s) {
    out.push_back(static_cast<char>(s & 0xff));
    out.push_back(static_cast<char>((s >> 8) & 0xff));
    out.push_back(static_cast<char>((s >> 16) & 0xff));
}

struct SideUse {
    int triangle = 0;
    Subset opposite = 0;
};

std::map<Side, std::vector<SideUse>> side_map(const std::vector<Triangle>& tris) {
    std::map<Side, std::vector<SideUse>> out;
    for (std::size_t t = 0; t < tris.size(); ++t) {
        const auto& l = tris[t].labels;
        out[side_of(l[0], l[1])].push_back({static_cast<int>(t), l[2]});
        out[side_of(l[1], l[2])].push_back({static_cast<int>(t), l[0]});
        out[side_of(l[0], l[2])].push_back({static_cast<int>(t), l[1]});
    }
    return out;
}

// Walk edges of the boundary curve, keyed by side, with the walk indices.
std::map<Side, std::vector<int>> walk_map(const GrassmannNecklace& I) {
    std::map<Side, std::vector<int>> out;
    for (int i = 1; i <= I.n(); ++i)
        if (I[i] != I[i + 1]) out[side_of(I[i], I[i + 1])].push_back(i);
    return out;
}

std::string label_pair(Side s) { return compact(s.first) + "-" + compact(s.second); }

Side shared_side(const Triangle& a, const Triangle& b) {
    std::vector<Subset> common;
    for (Subset x : a.labels)
        if (b.has(x)) common.push_back(x);
    if (common.size() != 2) throw InternalError("triangles do not share a side");
    return side_of(common[0], common[1]);
}

bool is_boundary_label(const GrassmannNecklace& I, Subset s) {
    for (Subset b : I.sets())
        if (b == s) return true;
    return false;
}

PlabicTriangulation apply_unchecked(const PlabicTriangulation& s, const Move& m) {
    std::vector<Triangle> tris;
    tris.reserve(s.triangles().size());
    for (const auto& t : s.triangles())
        if (std::find(m.removed.begin(), m.removed.end(), t) == m.removed.end()) tris.push_back(t);
    for (const auto& t : m.added) tris.push_back(t);
    std::vector<Subset> labels = s.labels();
    if (m.kind == MoveKind::square) {
        for (auto& l : labels)
            if (l == m.old_label) l = m.new_label;
    }
    return PlabicTriangulation(s.boundary(), std::move(labels), std::move(tris));
}

// Chords (i, j) of a convex polygon with vertices 0..m-1 cross when they
// share no endpoint and exactly one of c, d lies strictly between a and b.
bool chords_cross(int a, int b, int c, int d) {
    if (a == c || a == d || b == c || b == d) return false;
    if (a > b) std::swap(a, b);
    const bool c_in = a < c && c < b;
    const bool d_in = a < d && d < b;
    return c_in != d_in;
}

std::vector<Triangle> triangulate_polygon(const std::vector<Subset>& poly, const std::vector<Triangle>& fixed,
                                          const std::vector<Side>& required) {
    const int m = static_cast<int>(poly.size());
    auto index_of = [&](Subset x) {
        auto it = std::find(poly.begin(), poly.end(), x);
        return it == poly.end() ? -1 : static_cast<int>(it - poly.begin());
    };
    auto is_side = [&](int i, int j) { return (i + 1) % m == j || (j + 1) % m == i; };
    std::vector<std::pair<int, int>> chords;
    auto present = [&](int i, int j) {
        for (auto [a, b] : chords)
            if ((a == i && b == j) || (a == j && b == i)) return true;
        return false;
    };
    auto crosses_any = [&](int i, int j) {
        for (auto [a, b] : chords)
            if (chords_cross(a, b, i, j)) return true;
        return false;
    };
    for (const auto& t : fixed) {
        int idx[3] = {index_of(t.labels[0]), index_of(t.labels[1]), index_of(t.labels[2])};
        if (idx[0] < 0 || idx[1] < 0 || idx[2] < 0) continue;
        for (int a = 0; a < 3; ++a)
            for (int b = a + 1; b < 3; ++b) {
                int i = idx[a], j = idx[b];
                if (is_side(i, j) || present(i, j)) continue;
                if (crosses_any(i, j)) throw ValidationError("fixed triangles overlap");
                chords.emplace_back(i, j);
            }
    }
    for (const auto& [a, b] : required) {
        const int i = index_of(a), j = index_of(b);
        if (i < 0 || j < 0 || is_side(i, j) || present(i, j)) continue;
        if (crosses_any(i, j)) throw ValidationError("required sides cross");
        chords.emplace_back(i, j);
    }
    const int fan = static_cast<int>(std::min_element(poly.begin(), poly.end()) - poly.begin());
    auto try_add = [&](int i, int j) {
        if (i == j || is_side(i, j) || present(i, j) || crosses_any(i, j)) return;
        chords.emplace_back(i, j);
    };
    for (int j = 0; j < m; ++j) try_add(fan, j);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) try_add(i, j);
    auto joined = [&](int i, int j) { return is_side(i, j) || present(i, j); };
    std::vector<Triangle> out;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            for (int l = j + 1; l < m; ++l)
                if (joined(i, j) && joined(j, l) && joined(i, l)) out.push_back(make_triangle(poly[i], poly[j], poly[l]));
    if (static_cast<int>(out.size()) != m - 2) throw InternalError("polygon triangulation has the wrong size");
    return out;
}

}  // namespace

Point position(Subset label) {
    Point p;
    for (int i : elements(label)) {
        p.x += i;
        p.y += static_cast<long long>(i) * i;
    }
    return p;
}

long long orientation(Point a, Point b, Point c) { return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x); }

Triangle make_triangle(Subset a, Subset b, Subset c) {
    Triangle t;
    t.labels = {a, b, c};
    std::sort(t.labels.begin(), t.labels.end());
    const int k = card(a);
    if (card(b) != k || card(c) != k || a == b || b == c || a == c)
        throw ValidationError("triangle labels must be distinct sets of equal size");
    const Subset u = a | b | c;
    const Subset i = a & b & c;
    if (card(u) == k + 1)
        t.color = Color::black;
    else if (card(i) == k - 1)
        t.color = Color::white;
    else
        throw ValidationError("labels " + compact(a) + "," + compact(b) + "," + compact(c) + " span no triangle");
    return t;
}

PlabicTriangulation::PlabicTriangulation(GrassmannNecklace boundary, std::vector<Subset> labels,
                                         std::vector<Triangle> triangles)
    : boundary_(std::move(boundary)), labels_(std::move(labels)), triangles_(std::move(triangles)) {
    std::sort(labels_.begin(), labels_.end());
    labels_.erase(std::unique(labels_.begin(), labels_.end()), labels_.end());
    std::sort(triangles_.begin(), triangles_.end());
    triangles_.erase(std::unique(triangles_.begin(), triangles_.end()), triangles_.end());
}

bool PlabicTriangulation::has_label(Subset s) const { return std::binary_search(labels_.begin(), labels_.end(), s); }

bool PlabicTriangulation::has_triangle(const Triangle& t) const {
    return std::binary_search(triangles_.begin(), triangles_.end(), t);
}

std::string PlabicTriangulation::key() const {
    std::string out;
    out.reserve(3 * labels_.size() + 9 * triangles_.size() + 2);
    for (Subset s : labels_) append_subset(out, s);
    out.push_back('|');
    for (const auto& t : triangles_)
        for (Subset s : t.labels) append_subset(out, s);
    return out;
}

std::string check(const PlabicTriangulation& s) {
    const int n = s.n(), k = s.k();
    const auto& labels = s.labels();
    for (Subset l : labels)
        if (card(l) != k || (l & ~full_set(n))) return "label " + to_string(l) + " has the wrong size";
    for (Subset b : s.boundary().sets())
        if (!s.has_label(b)) return "boundary label " + compact(b) + " missing";
    for (std::size_t i = 0; i < labels.size(); ++i)
        for (std::size_t j = i + 1; j < labels.size(); ++j)
            if (!combinat::is_weakly_separated(labels[i], labels[j]))
                return compact(labels[i]) + " and " + compact(labels[j]) + " are not weakly separated";
    std::set<Subset> used;
    for (const auto& t : s.triangles()) {
        for (Subset l : t.labels) {
            if (!s.has_label(l)) return "triangle uses unknown label " + compact(l);
            used.insert(l);
        }
        Triangle again;
        try {
            again = make_triangle(t.labels[0], t.labels[1], t.labels[2]);
        } catch (const ValidationError& e) {
            return e.what();
        }
        if (again.color != t.color) return "triangle color is inconsistent with its labels";
    }
    for (Subset b : s.boundary().sets()) used.insert(b);
    for (Subset l : labels)
        if (!used.count(l)) return "label " + compact(l) + " is in no triangle";

    const auto sides = side_map(s.triangles());
    const auto walk = walk_map(s.boundary());
    long long curve_sign = 0;
    for (const auto& [side, uses] : sides) {
        auto w = walk.find(side);
        const int walked = w == walk.end() ? 0 : static_cast<int>(w->second.size());
        const Point a = position(side.first), b = position(side.second);
        if (uses.size() > 2) return "side " + label_pair(side) + " lies in more than two triangles";
        if (uses.size() == 2) {
            if (walked) return "boundary side " + label_pair(side) + " lies in two triangles";
            long long o1 = orientation(a, b, position(uses[0].opposite));
            long long o2 = orientation(a, b, position(uses[1].opposite));
            if ((o1 > 0) == (o2 > 0)) return "triangles on side " + label_pair(side) + " overlap";
        } else {
            if (walked != 1) return "side " + label_pair(side) + " is on the boundary of the triangulation only";
            // Interior lies on the same side of every walk edge.
            const int i = w->second[0];
            Point p = position(s.boundary()[i]), q = position(s.boundary()[i + 1]);
            long long o = orientation(p, q, position(uses[0].opposite));
            long long sign = o > 0 ? 1 : -1;
            if (curve_sign == 0) curve_sign = sign;
            if (sign != curve_sign) return "boundary curve changes orientation at " + label_pair(side);
        }
    }
    for (const auto& [side, idx] : walk) {
        if (sides.count(side)) continue;
        if (idx.size() != 2) return "boundary side " + label_pair(side) + " bounds nothing";
    }
    long long area = 0;
    for (const auto& t : s.triangles()) {
        long long o = orientation(position(t.labels[0]), position(t.labels[1]), position(t.labels[2]));
        if (o == 0) return "degenerate triangle";
        area += o > 0 ? o : -o;
    }
    long long curve = 0;
    for (int i = 1; i <= n; ++i) {
        Point p = position(s.boundary()[i]), q = position(s.boundary()[i + 1]);
        curve += p.x * q.y - p.y * q.x;
    }
    if (curve < 0) curve = -curve;
    if (area != curve) return "triangles do not fill the boundary curve";
    return {};
}

int PlabicGraph::add_internal(Color c) {
    Vertex v;
    v.color = c;
    vertices.push_back(v);
    return static_cast<int>(vertices.size()) - 1;
}

int PlabicGraph::add_boundary(int i) {
    Vertex v;
    v.boundary = true;
    v.index = i;
    vertices.push_back(v);
    const int id = static_cast<int>(vertices.size()) - 1;
    if (static_cast<int>(boundary_vertex.size()) < i) boundary_vertex.resize(i, -1);
    boundary_vertex[i - 1] = id;
    n = std::max(n, i);
    return id;
}

int PlabicGraph::connect(int u, int v) {
    edges.emplace_back(u, v);
    const int e = static_cast<int>(edges.size()) - 1;
    vertices[u].rotation.push_back(e);
    vertices[v].rotation.push_back(e);
    return e;
}

PlabicGraph dual_graph(const PlabicTriangulation& s) {
    const auto& I = s.boundary();
    const int n = s.n();
    const auto& tris = s.triangles();
    PlabicGraph g;
    for (int i = 1; i <= n; ++i) g.add_boundary(i);
    for (std::size_t t = 0; t < tris.size(); ++t) {
        int v = g.add_internal(tris[t].color);
        g.vertices[v].triangle = static_cast<int>(t);
    }
    const auto sides = side_map(tris);
    const auto walk = walk_map(I);
    std::map<std::pair<int, Side>, int> side_edge;
    auto add_edge = [&](int u, int v) {
        g.edges.emplace_back(u, v);
        return static_cast<int>(g.edges.size()) - 1;
    };
    for (int i = 1; i <= n; ++i) {
        const int bi = i - 1;
        if (I[i] == I[i + 1]) {
            Color c = has(I[i], i) ? Color::black : Color::white;
            int f = g.add_internal(c);
            g.connect(bi, f);
            continue;
        }
        const Side side = side_of(I[i], I[i + 1]);
        auto it = sides.find(side);
        if (it != sides.end()) {
            if (it->second.size() != 1) throw ValidationError("boundary side lies in two triangles");
            int e = add_edge(bi, n + it->second[0].triangle);
            side_edge[{it->second[0].triangle, side}] = e;
            g.vertices[bi].rotation.push_back(e);
            continue;
        }
        const auto& idx = walk.at(side);
        if (idx.size() != 2) throw ValidationError("boundary side bounds nothing");
        const int j = idx[0] == i ? idx[1] : idx[0];
        if (i < j) {
            g.connect(bi, j - 1);
        }
    }
    for (const auto& [side, uses] : sides) {
        if (uses.size() == 2) {
            int e = add_edge(n + uses[0].triangle, n + uses[1].triangle);
            side_edge[{uses[0].triangle, side}] = e;
            side_edge[{uses[1].triangle, side}] = e;
        } else if (!walk.count(side)) {
            throw ValidationError("side " + label_pair(side) + " is not matched");
        }
    }
    for (std::size_t t = 0; t < tris.size(); ++t) {
        auto l = tris[t].labels;
        Point p[3] = {position(l[0]), position(l[1]), position(l[2])};
        if (orientation(p[0], p[1], p[2]) < 0) std::swap(l[1], l[2]);
        // Sides in counterclockwise order of the plane; with the y axis
        // pointing down in the drawing this is clockwise.
        Side order[3] = {side_of(l[0], l[1]), side_of(l[1], l[2]), side_of(l[2], l[0])};
        auto& rot = g.vertices[n + t].rotation;
        for (const Side& sd : order) rot.push_back(side_edge.at({static_cast<int>(t), sd}));
    }
    return g;
}

std::vector<Strand> trace_strands(const PlabicGraph& g) {
    std::vector<Strand> out;
    const std::size_t limit = 2 * g.edges.size() + 2;
    for (int i = 1; i <= g.n; ++i) {
        Strand st;
        st.start = i;
        int v = g.boundary_vertex[i - 1];
        if (g.degree(v) != 1) throw ValidationError("boundary vertex " + std::to_string(i) + " must have degree 1");
        int e = g.vertices[v].rotation[0];
        while (true) {
            const int w = g.other(e, v);
            st.steps.emplace_back(e, g.edges[e].first == v);
            if (st.steps.size() > limit) throw InternalError("strand does not terminate");
            if (g.vertices[w].boundary) {
                st.end = g.vertices[w].index;
                break;
            }
            const auto& rot = g.vertices[w].rotation;
            const int d = static_cast<int>(rot.size());
            const int pos = static_cast<int>(std::find(rot.begin(), rot.end(), e) - rot.begin());
            e = g.vertices[w].color == Color::white ? rot[(pos + 1) % d] : rot[(pos - 1 + d) % d];
            v = w;
        }
        out.push_back(std::move(st));
    }
    return out;
}

DecoratedPermutation strand_permutation(const PlabicGraph& g) {
    const auto strands = trace_strands(g);
    std::vector<int> image(g.n);
    std::vector<std::optional<Color>> deco(g.n);
    for (const auto& st : strands) {
        image[st.start - 1] = st.end;
        if (st.start == st.end) {
            int b = g.boundary_vertex[st.start - 1];
            int w = g.other(g.vertices[b].rotation[0], b);
            deco[st.start - 1] = g.vertices[w].color;
        }
    }
    return DecoratedPermutation(std::move(image), std::move(deco));
}

ReducedReport is_reduced(const PlabicGraph& g) {
    std::vector<Strand> strands;
    try {
        strands = trace_strands(g);
    } catch (const InternalError& e) {
        return {false, e.what()};
    }
    struct Use {
        int strand;
        int pos;
    };
    std::vector<std::vector<Use>> uses(g.edges.size());
    for (std::size_t s = 0; s < strands.size(); ++s)
        for (std::size_t p = 0; p < strands[s].steps.size(); ++p)
            uses[strands[s].steps[p].first].push_back({static_cast<int>(s), static_cast<int>(p)});
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        auto [a, b] = g.edges[e];
        if (g.vertices[a].boundary || g.vertices[b].boundary) continue;
        if (uses[e].size() != 2) return {false, "edge " + std::to_string(e) + " lies on a closed strand"};
        if (uses[e][0].strand == uses[e][1].strand)
            return {false, "strand " + std::to_string(strands[uses[e][0].strand].start) + " crosses itself"};
    }
    std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> common;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        if (uses[e].size() != 2) continue;
        Use x = uses[e][0], y = uses[e][1];
        if (x.strand == y.strand) continue;
        if (x.strand > y.strand) std::swap(x, y);
        common[{x.strand, y.strand}].emplace_back(x.pos, y.pos);
    }
    for (auto& [pair, pos] : common) {
        std::sort(pos.begin(), pos.end());
        for (std::size_t i = 1; i < pos.size(); ++i)
            if (pos[i].second >= pos[i - 1].second)
                return {false, "strands " + std::to_string(strands[pair.first].start) + " and " +
                                   std::to_string(strands[pair.second].start) + " form a bad double crossing"};
    }
    for (const auto& st : strands) {
        if (st.start != st.end) continue;
        int b = g.boundary_vertex[st.start - 1];
        int w = g.other(g.vertices[b].rotation[0], b);
        if (g.vertices[w].boundary || g.degree(w) != 1)
            return {false, "fixed point " + std::to_string(st.start) + " is not an isolated vertex"};
    }
    return {true, {}};
}

const char* move_kind_name(MoveKind k) {
    switch (k) {
        case MoveKind::white_trivalent: return "M1";
        case MoveKind::square: return "M2";
        case MoveKind::black_trivalent: return "M3";
        case MoveKind::contract: return "contract";
        case MoveKind::uncontract: return "uncontract";
    }
    return "?";
}

std::string Move::label() const {
    std::string out = move_kind_name(kind);
    out += ' ';
    if (kind == MoveKind::square) {
        Subset a = std::min(old_label, new_label), b = std::max(old_label, new_label);
        return out + compact(a) + "~" + compact(b);
    }
    if (removed.size() != 2 || added.size() != 2) return out + "?";
    Side d1 = shared_side(removed[0], removed[1]);
    Side d2 = shared_side(added[0], added[1]);
    if (d2 < d1) std::swap(d1, d2);
    return out + label_pair(d1) + "~" + label_pair(d2);
}

Move Move::inverse() const {
    Move m = *this;
    std::swap(m.removed, m.added);
    std::swap(m.old_label, m.new_label);
    return m;
}

std::vector<Move> available_moves(const PlabicTriangulation& s) {
    std::vector<Move> out;
    const auto& tris = s.triangles();
    const auto sides = side_map(tris);
    for (const auto& [side, uses] : sides) {
        if (uses.size() != 2) continue;
        const Triangle& t1 = tris[uses[0].triangle];
        const Triangle& t2 = tris[uses[1].triangle];
        if (t1.color != t2.color) continue;
        const Subset o1 = uses[0].opposite, o2 = uses[1].opposite;
        Point a = position(side.first), b = position(side.second), p = position(o1), q = position(o2);
        long long s1 = orientation(p, q, a), s2 = orientation(p, q, b);
        if (s1 == 0 || s2 == 0 || (s1 > 0) == (s2 > 0)) continue;
        Move m;
        m.kind = t1.color == Color::white ? MoveKind::white_trivalent : MoveKind::black_trivalent;
        m.removed = {t1, t2};
        m.added = {make_triangle(side.first, o1, o2), make_triangle(side.second, o1, o2)};
        std::sort(m.removed.begin(), m.removed.end());
        std::sort(m.added.begin(), m.added.end());
        if (m.added[0].color != t1.color || m.added[1].color != t1.color) continue;
        out.push_back(std::move(m));
    }
    std::map<Subset, std::vector<int>> star;
    for (std::size_t t = 0; t < tris.size(); ++t)
        for (Subset l : tris[t].labels) star[l].push_back(static_cast<int>(t));
    for (const auto& [v, ts] : star) {
        if (ts.size() != 4 || is_boundary_label(s.boundary(), v)) continue;
        std::map<Subset, std::pair<int, int>> around;  // neighbor -> (white count, black count)
        for (int t : ts)
            for (Subset x : tris[t].labels)
                if (x != v) (tris[t].color == Color::white ? around[x].first : around[x].second)++;
        if (around.size() != 4) continue;
        bool alternating = true;
        Subset inter = v, uni = v;
        for (const auto& [x, c] : around) {
            if (c.first != 1 || c.second != 1) alternating = false;
            inter &= x;
            uni |= x;
        }
        if (!alternating || card(inter) != s.k() - 2 || card(uni) != s.k() + 2) continue;
        const Subset w = inter | ((uni & ~inter) & ~v);
        Move m;
        m.kind = MoveKind::square;
        m.old_label = v;
        m.new_label = w;
        for (int t : ts) {
            m.removed.push_back(tris[t]);
            std::vector<Subset> rest;
            for (Subset x : tris[t].labels)
                if (x != v) rest.push_back(x);
            m.added.push_back(make_triangle(w, rest[0], rest[1]));
        }
        std::sort(m.removed.begin(), m.removed.end());
        std::sort(m.added.begin(), m.added.end());
        out.push_back(std::move(m));
    }
    std::sort(out.begin(), out.end(), [](const Move& a, const Move& b) { return a.label() < b.label(); });
    return out;
}

PlabicTriangulation apply_move(const PlabicTriangulation& s, const Move& m) {
    const auto moves = available_moves(s);
    if (std::find(moves.begin(), moves.end(), m) == moves.end())
        throw PreconditionError("move " + m.label() + " is not available");
    auto out = apply_unchecked(s, m);
#ifndef NDEBUG
    if (!(strand_permutation(dual_graph(out)) == strand_permutation(dual_graph(s))))
        throw InternalError("move " + m.label() + " changed the strand permutation");
#endif
    return out;
}

std::vector<Side> curve_sides(const GrassmannNecklace& I) {
    std::vector<Side> out;
    for (const auto& [side, idx] : walk_map(I)) out.push_back(side);
    return out;
}

PlabicTriangulation triangulation_from_labels(const LabelCollection& c, const GrassmannNecklace& boundary,
                                              const std::vector<Triangle>& fixed, const std::vector<Side>& required) {
    if (c.n != boundary.n() || c.k != boundary.k()) throw ArgumentError("labels and boundary disagree on (n, k)");
    if (!combinat::is_weakly_separated(c.labels)) throw ValidationError("labels are not weakly separated");
    for (Subset b : boundary.sets())
        if (!c.contains(b)) throw ValidationError("boundary label " + compact(b) + " missing from the collection");
    const int n = c.n;
    std::map<Subset, std::vector<std::pair<int, Subset>>> white, black;
    for (Subset l : c.labels)
        for (int x = 1; x <= n; ++x) {
            if (has(l, x))
                white[l & ~bit(x)].emplace_back(x, l);
            else
                black[l | bit(x)].emplace_back(x, l);
        }
    std::vector<Triangle> tris;
    auto run = [&](const std::map<Subset, std::vector<std::pair<int, Subset>>>& cliques, Color color) {
        std::vector<Triangle> same;
        for (const auto& t : fixed)
            if (t.color == color) same.push_back(t);
        for (const auto& [key, members] : cliques) {
            if (members.size() < 3) continue;
            std::vector<Subset> poly;
            for (const auto& [x, l] : members) poly.push_back(l);  // members are ordered by x
            for (auto& t : triangulate_polygon(poly, same, required)) tris.push_back(t);
        }
    };
    run(white, Color::white);
    run(black, Color::black);
    PlabicTriangulation out(boundary, c.labels, std::move(tris));
    for (const auto& t : fixed)
        if (!out.has_triangle(t)) throw ValidationError("fixed triangle is not a face of the label collection");
    if (auto problem = check(out); !problem.empty()) throw ValidationError("labels do not triangulate: " + problem);
    return out;
}

PlabicTriangulation seed_triangulation(const DecoratedPermutation& p, SeedOrder order) {
    const GrassmannNecklace I = combinat::necklace_of(p);
    const auto base = LabelCollection::from(p.n(), I.k(), I.sets());
    std::vector<Subset> candidates = combinat::positroid_labels(I);
    std::sort(candidates.begin(), candidates.end());
    if (order == SeedOrder::reverse_colex) std::reverse(candidates.begin(), candidates.end());
    return triangulation_from_labels(combinat::extend_within(base, candidates), I);
}

FlipGraph<PlabicTriangulation> enumerate_plabic(const DecoratedPermutation& p, Execution exec, std::size_t cap,
                                                SeedOrder order) {
    auto key_of = [](const PlabicTriangulation& s) { return s.key(); };
    auto expand = [](const PlabicTriangulation& s) {
        std::vector<detail::Discovered<PlabicTriangulation>> out;
        for (const auto& m : available_moves(s)) {
            PlabicTriangulation t = apply_unchecked(s, m);
            std::string key = t.key();
            out.push_back({std::move(key), std::move(t), m.label()});
        }
        return out;
    };
    PlabicTriangulation root = seed_triangulation(p, order);
    return bfs_levels(std::move(root), key_of, expand, exec, cap);
}

FlipGraph<PlabicTriangulation> enumerate_plabic_reference(const DecoratedPermutation& p, std::size_t cap) {
    auto key_of = [](const PlabicTriangulation& s) { return s.key(); };
    auto expand = [](const PlabicTriangulation& s) {
        std::vector<detail::Discovered<PlabicTriangulation>> out;
        for (const auto& m : available_moves(s)) {
            PlabicTriangulation t = apply_move(s, m);
            std::string key = t.key();
            out.push_back({std::move(key), std::move(t), m.label()});
        }
        return out;
    };
    return bfs_serial(seed_triangulation(p), key_of, expand, cap);
}

}  // namespace flipcycles::plabic
