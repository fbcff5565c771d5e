#include <algorithm>
#include <functional>

#include "flipcycles/errors.hpp"
#include "flipcycles/plabic.hpp"

namespace flipcycles::plabic {

namespace {

using zonotope::FlipSite;
using zonotope::SignedSubset;
using zonotope::Tiling;

void require_cyclic(const PlabicTriangulation& s) {
    if (s.k() <= 0 || s.k() >= s.n() || !(s.boundary() == combinat::cyclic_necklace(s.n(), s.k())))
        throw PreconditionError("operation needs the cyclic boundary");
}

std::vector<Subset> labels_of(const std::vector<Triangle>& tris) {
    std::vector<Subset> out;
    for (const auto& t : tris)
        for (Subset l : t.labels) out.push_back(l);
    return out;
}

bool has_edge(const PlabicTriangulation& s, Subset a, Subset b) {
    for (const auto& t : s.triangles())
        if (t.has(a) && t.has(b)) return true;
    const auto& I = s.boundary();
    for (int i = 1; i <= I.n(); ++i)
        if ((I[i] == a && I[i + 1] == b) || (I[i] == b && I[i + 1] == a)) return true;
    return false;
}

std::vector<PlabicTriangulation> all_sections(const Tiling& t) {
    std::vector<PlabicTriangulation> out;
    for (int k = 1; k < t.n(); ++k) out.push_back(cross_section(t, k));
    return out;
}

class Realizer {
public:
    explicit Realizer(int n) : depth_limit_(n + 2) {}

    void realize(Tiling& cur, int k, const Move& m, std::vector<FlipSite>& seq, int depth) {
        if (depth > depth_limit_) throw InternalError("move realization recursed too deeply");
        const PlabicTriangulation here = cross_section(cur, k);
        const auto moves = available_moves(here);
        if (std::find(moves.begin(), moves.end(), m) == moves.end()) {
            if (depth == 0) throw PreconditionError("move " + m.label() + " is not available at level " + std::to_string(k));
            throw InternalError("nested move " + m.label() + " is not available");
        }
        if (m.kind != MoveKind::white_trivalent && m.kind != MoveKind::black_trivalent)
            throw ArgumentError("only trivalent moves are realized");
        Subset uni = 0, inter = ~Subset{0};
        std::vector<Subset> diagonal;
        for (Subset x : m.removed[0].labels) {
            uni |= x;
            inter &= x;
            if (m.removed[1].has(x)) diagonal.push_back(x);
        }
        for (Subset x : m.removed[1].labels) {
            uni |= x;
            inter &= x;
        }
        const bool black = m.kind == MoveKind::black_trivalent;
        const Subset prefix = inter;
        const Subset quad = uni & ~inter;
        Subset ones = 0;
        std::vector<Triangle> needed;
        for (int a : elements(quad)) {
            const Subset vertex = black ? uni & ~bit(a) : prefix | bit(a);
            const bool on_diagonal = std::find(diagonal.begin(), diagonal.end(), vertex) != diagonal.end();
            if (black != on_diagonal) ones |= bit(a);
            if (!on_diagonal) continue;
            std::vector<int> rest;
            for (int x : elements(quad))
                if (x != a) rest.push_back(x);
            if (black) {
                needed.push_back(make_triangle(prefix | bit(rest[0]) | bit(rest[1]), prefix | bit(rest[0]) | bit(rest[2]),
                                               prefix | bit(rest[1]) | bit(rest[2])));
            } else {
                const Subset base = prefix | bit(a);
                needed.push_back(make_triangle(base | bit(rest[0]), base | bit(rest[1]), base | bit(rest[2])));
            }
        }
        const int below = black ? k - 1 : k + 1;
        for (int guard = 0;; ++guard) {
            if (guard > 100000) throw InternalError("move realization does not converge");
            const PlabicTriangulation there = cross_section(cur, below);
            const Triangle* missing = nullptr;
            for (const auto& t : needed)
                if (!there.has_triangle(t)) {
                    missing = &t;
                    break;
                }
            if (!missing) break;
            auto next = move_toward(there, *missing);
            if (!next) throw InternalError("no move toward a missing triangle");
            realize(cur, below, *next, seq, depth + 1);
        }
        const FlipSite site{quad, prefix, ones};
        try {
            cur = zonotope::apply_flip(cur, site);
        } catch (const PreconditionError&) {
            throw InternalError("prepared flip " + site.label() + " is not available");
        }
        seq.push_back(site);
    }

private:
    int depth_limit_;
};

}  // namespace

PlabicTriangulation cross_section(const Tiling& t, int k) {
    if (t.d() != 3) throw ArgumentError("cross-sections need a tiling of a three-dimensional zonotope");
    const int n = t.n();
    if (k < 1 || k > n - 1) throw ArgumentError("level must lie in [1, n-1]");
    std::vector<Triangle> tris;
    for (const auto& x : t.tiles()) {
        const auto z = elements(x.zero(n));
        const Subset p = x.plus;
        if (card(p) == k - 1)
            tris.push_back(make_triangle(p | bit(z[0]), p | bit(z[1]), p | bit(z[2])));
        else if (card(p) == k - 2)
            tris.push_back(make_triangle(p | bit(z[0]) | bit(z[1]), p | bit(z[0]) | bit(z[2]), p | bit(z[1]) | bit(z[2])));
    }
    auto boundary = combinat::cyclic_necklace(n, k);
    std::vector<Subset> labels = labels_of(tris);
    for (Subset b : boundary.sets()) labels.push_back(b);
    return PlabicTriangulation(boundary, std::move(labels), std::move(tris));
}

PlabicTriangulation layer_step(const PlabicTriangulation& s, Shift dir) {
    require_cyclic(s);
    const int n = s.n();
    const int k = s.k() + (dir == Shift::up ? 1 : -1);
    if (k < 1 || k > n - 1) throw ArgumentError("no level beyond the ends of the zonotope");
    std::vector<Triangle> fixed;
    for (const auto& t : s.triangles()) {
        const Subset inter = t.labels[0] & t.labels[1] & t.labels[2];
        const Subset uni = t.labels[0] | t.labels[1] | t.labels[2];
        if (dir == Shift::up && t.color == Color::white) {
            const auto z = elements(uni & ~inter);
            fixed.push_back(make_triangle(inter | bit(z[0]) | bit(z[1]), inter | bit(z[0]) | bit(z[2]),
                                          inter | bit(z[1]) | bit(z[2])));
        } else if (dir == Shift::down && t.color == Color::black) {
            const auto z = elements(uni & ~inter);
            fixed.push_back(make_triangle(inter | bit(z[0]), inter | bit(z[1]), inter | bit(z[2])));
        }
    }
    auto boundary = combinat::cyclic_necklace(n, k);
    std::vector<Subset> labels = labels_of(fixed);
    for (Subset b : boundary.sets()) labels.push_back(b);
    return triangulation_from_labels(LabelCollection::from(n, k, std::move(labels)), boundary, fixed);
}

Tiling extend_to_tiling(const PlabicTriangulation& s) {
    require_cyclic(s);
    const int n = s.n();
    std::vector<SignedSubset> tiles;
    auto collect = [&](const PlabicTriangulation& level) {
        for (const auto& t : level.triangles()) {
            if (t.color != Color::white) continue;
            const Subset inter = t.labels[0] & t.labels[1] & t.labels[2];
            const Subset uni = t.labels[0] | t.labels[1] | t.labels[2];
            tiles.push_back({inter, full_set(n) & ~uni});
        }
    };
    collect(s);
    PlabicTriangulation cur = s;
    for (int k = s.k() + 1; k <= n - 1; ++k) {
        cur = layer_step(cur, Shift::up);
        collect(cur);
    }
    cur = s;
    for (int k = s.k() - 1; k >= 1; --k) {
        cur = layer_step(cur, Shift::down);
        collect(cur);
    }
    if (tiles.size() != binomial(n, 3)) throw InternalError("layers do not assemble into a tiling");
    return Tiling(n, 3, std::move(tiles));
}

PlabicTriangulation restrict_to(const PlabicTriangulation& whole, const GrassmannNecklace& region) {
    std::vector<Subset> labels;
    for (Subset l : whole.labels())
        if (combinat::in_positroid(region, l)) labels.push_back(l);
    std::vector<Triangle> tris;
    for (const auto& t : whole.triangles()) {
        bool inside = true;
        for (Subset l : t.labels)
            if (!std::binary_search(labels.begin(), labels.end(), l)) inside = false;
        if (inside) tris.push_back(t);
    }
    return PlabicTriangulation(region, std::move(labels), std::move(tris));
}

Embedding embed_in_cyclic(const PlabicTriangulation& s) {
    const int n = s.n(), k = s.k();
    if (k == 0 || k == n) return {s, s.boundary()};
    const auto cyclic = combinat::cyclic_necklace(n, k);
    if (s.boundary() == cyclic) return {s, cyclic};
    const auto labels = combinat::extend_to_maximal_ws(LabelCollection::from(n, k, s.labels()));
    PlabicTriangulation whole = triangulation_from_labels(labels, cyclic, s.triangles(), curve_sides(s.boundary()));
    if (!(restrict_to(whole, s.boundary()) == s)) throw InternalError("embedding does not restrict to the input");
    for (const auto& [a, b] : curve_sides(s.boundary()))
        if (!has_edge(whole, a, b)) throw InternalError("embedding loses the side " + compact(a) + "-" + compact(b));
    return {std::move(whole), s.boundary()};
}

PlabicTriangulation up_down_graph(const PlabicTriangulation& s, Shift dir) {
    const GrassmannNecklace& I = s.boundary();
    if (combinat::decorated_of(I).is_identity()) throw PreconditionError("the identity has no up or down graph");
    const GrassmannNecklace J = combinat::necklace_shift(I, dir);
    const auto target = combinat::decorated_of(J);
    if (target.is_identity()) {
        if (dir == Shift::down) throw PreconditionError("the down shift is the identity");
        return PlabicTriangulation(J, {J[1]}, {});
    }
    const Embedding emb = embed_in_cyclic(s);
    const PlabicTriangulation next = layer_step(emb.whole, dir);
    const Color determined = dir == Shift::up ? Color::black : Color::white;
    const PlabicTriangulation cut = restrict_to(next, J);
    for (Subset b : J.sets())
        if (!cut.has_label(b)) throw InternalError("shifted boundary label " + compact(b) + " missing from the layer");
    std::vector<Triangle> fixed;
    for (const auto& t : cut.triangles())
        if (t.color == determined) fixed.push_back(t);
    return triangulation_from_labels(LabelCollection::from(J.n(), J.k(), cut.labels()), J, fixed);
}

std::vector<FlipSquarePair> flip_move_correspondence(const Tiling& t) {
    std::vector<FlipSquarePair> out;
    for (const auto& f : zonotope::available_flips(t)) {
        const int level = card(f.prefix) + 2;
        const Subset v = f.prefix | f.ones;
        const Subset w = f.prefix | (f.set & ~f.ones);
        const auto section = cross_section(t, level);
        const Move* found = nullptr;
        const auto moves = available_moves(section);
        for (const auto& m : moves)
            if (m.kind == MoveKind::square && m.old_label == v && m.new_label == w) found = &m;
        if (!found) throw InternalError("flip " + f.label() + " has no square move");
        out.push_back({f, level, *found});
    }
    return out;
}

std::optional<FlipSite> flip_for_square_move(const Tiling& t, int level, const Move& m) {
    if (m.kind != MoveKind::square) return std::nullopt;
    const Subset set = m.old_label ^ m.new_label;
    const Subset prefix = m.old_label & m.new_label;
    if (card(set) != 4 || card(prefix) != level - 2) return std::nullopt;
    for (const auto& f : zonotope::available_flips(t))
        if (f.set == set && f.prefix == prefix && f.ones == (set & m.old_label)) return f;
    return std::nullopt;
}

std::optional<Move> move_toward(const PlabicTriangulation& s, const Triangle& target) {
    if (s.has_triangle(target)) return std::nullopt;
    const auto& l = target.labels;
    const bool white = target.color == Color::white;
    const Subset core = white ? (l[0] & l[1] & l[2]) : (l[0] | l[1] | l[2]);
    // Clique members in convex order.
    std::vector<std::pair<int, Subset>> members;
    for (Subset x : s.labels()) {
        if (white && (x & core) == core) members.emplace_back(min_elem(x & ~core), x);
        if (!white && (x | core) == core) members.emplace_back(min_elem(core & ~x), x);
    }
    std::sort(members.begin(), members.end());
    auto index_of = [&](Subset x) {
        for (std::size_t i = 0; i < members.size(); ++i)
            if (members[i].second == x) return static_cast<int>(i);
        return -1;
    };
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b) {
            const Subset u = l[a], w = l[b];
            if (has_edge(s, u, w)) continue;
            const int iu = index_of(u), iw = index_of(w);
            if (iu < 0 || iw < 0) throw InternalError("target triangle is not in a clique of the triangulation");
            const int lo = std::min(iu, iw), hi = std::max(iu, iw);
            for (const auto& t : s.triangles()) {
                if (t.color != target.color || !t.has(u)) continue;
                std::vector<int> others;
                for (Subset x : t.labels)
                    if (x != u) others.push_back(index_of(x));
                if (others[0] < 0 || others[1] < 0) continue;
                const bool in0 = lo < others[0] && others[0] < hi;
                const bool in1 = lo < others[1] && others[1] < hi;
                if (in0 == in1 || others[0] == iw || others[1] == iw) continue;
                const Subset x = members[others[0]].second, y = members[others[1]].second;
                for (const auto& m : available_moves(s)) {
                    if (m.kind == MoveKind::square) continue;
                    if (m.removed[0].has(x) && m.removed[0].has(y) && m.removed[1].has(x) && m.removed[1].has(y)) return m;
                }
                throw InternalError("crossing diagonal cannot be flipped");
            }
            throw InternalError("no triangle crosses the missing diagonal");
        }
    throw InternalError("target triangle has all sides but is missing");
}

std::vector<FlipSite> realize_trivalent_move(const Tiling& t, int k, const Move& m) {
    if (t.d() != 3) throw ArgumentError("realization needs a tiling of a three-dimensional zonotope");
    if (k < 1 || k > t.n() - 1) throw ArgumentError("level must lie in [1, n-1]");
    Tiling cur = t;
    std::vector<FlipSite> seq;
    Realizer(t.n()).realize(cur, k, m, seq, 0);
    return seq;
}

std::string verify_realization(const Tiling& t, int k, const Move& m, const std::vector<FlipSite>& seq) {
    if (seq.empty()) return "empty sequence";
    const bool black = m.kind == MoveKind::black_trivalent;
    const auto before = all_sections(t);
    auto is_protected = [&](int level) { return black ? level >= k : level <= k; };
    Tiling cur = t;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        try {
            cur = zonotope::apply_flip(cur, seq[i]);
        } catch (const PreconditionError&) {
            return "flip " + std::to_string(i) + " is not available";
        }
        const bool last = i + 1 == seq.size();
        for (int level = 1; level < t.n(); ++level) {
            if (!is_protected(level)) continue;
            const auto now = cross_section(cur, level);
            if (last && level == k) {
                if (!(now == apply_move(before[level - 1], m))) return "last flip does not perform the move";
            } else if (!(now == before[level - 1])) {
                return "flip " + std::to_string(i) + " changes protected level " + std::to_string(level);
            }
        }
    }
    return {};
}

std::vector<FlipSite> align_tilings(const Tiling& from, const Tiling& to, int k) {
    if (from.n() != to.n() || from.d() != 3 || to.d() != 3) throw ArgumentError("tilings of different zonotopes");
    if (!(cross_section(from, k) == cross_section(to, k))) throw PreconditionError("cross-sections at level k differ");
    const int n = from.n();
    Tiling cur = from;
    std::vector<FlipSite> seq;
    Realizer realizer(n);
    auto align_level = [&](int level, Color color) {
        const auto target = cross_section(to, level);
        for (int guard = 0;; ++guard) {
            if (guard > 100000) throw InternalError("alignment does not converge");
            const auto here = cross_section(cur, level);
            if (here == target) return;
            const Triangle* missing = nullptr;
            for (const auto& t : target.triangles())
                if (t.color == color && !here.has_triangle(t)) {
                    missing = &t;
                    break;
                }
            if (!missing) throw InternalError("levels differ beyond their free triangles");
            auto m = move_toward(here, *missing);
            if (!m) throw InternalError("no move toward a missing triangle");
            realizer.realize(cur, level, *m, seq, 0);
        }
    };
    for (int level = k + 1; level <= n - 1; ++level) align_level(level, Color::white);
    for (int level = k - 1; level >= 1; --level) align_level(level, Color::black);
    if (!(cur == to)) throw InternalError("aligned tilings differ");
    return seq;
}

std::string verify_alignment(const Tiling& from, const Tiling& to, int k, const std::vector<FlipSite>& seq) {
    const auto fixed = cross_section(from, k);
    Tiling cur = from;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        try {
            cur = zonotope::apply_flip(cur, seq[i]);
        } catch (const PreconditionError&) {
            return "flip " + std::to_string(i) + " is not available";
        }
        if (!(cross_section(cur, k) == fixed)) return "flip " + std::to_string(i) + " changes level " + std::to_string(k);
    }
    if (!(cur == to)) return "sequence does not end at the target";
    return {};
}

}  // namespace flipcycles::plabic
