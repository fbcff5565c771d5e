#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "flipcycles/errors.hpp"
#include "flipcycles/plabic.hpp"
#include "flipcycles/plabic_complex.hpp"
#include "flipcycles/topology.hpp"

using namespace flipcycles;
using namespace flipcycles::plabic;
using combinat::cyclic_decorated;
using combinat::cyclic_necklace;

namespace {

DecoratedPermutation perm(const std::string& s) { return DecoratedPermutation::parse(s); }

Subset L(const std::string& digits) {
    Subset s = 0;
    for (char c : digits) s |= bit(c - '0');
    return s;
}

GrassmannNecklace necklace(int n, const std::vector<std::string>& sets) {
    std::vector<Subset> v;
    for (const auto& s : sets) v.push_back(L(s));
    return GrassmannNecklace(n, v);
}

// Oracle: triangulations of a convex m-gon by the Catalan recursion.
long catalan_triangulations(int m) {
    std::vector<long> c(m + 1, 0);
    c[0] = 1;
    for (int i = 1; i <= m; ++i)
        for (int j = 0; j < i; ++j) c[i] += c[j] * c[i - 1 - j];
    return m >= 2 ? c[m - 2] : 1;
}

// Oracle: maximal weakly separated collections inside the positroid that
// contain the necklace, by exhaustive clique search.
long count_maximal_ws(const GrassmannNecklace& I) {
    std::vector<Subset> pool;
    for (Subset s : combinat::positroid_labels(I)) {
        bool ok = true;
        for (Subset b : I.sets()) ok = ok && combinat::is_weakly_separated(s, b);
        const auto& sets = I.sets();
        if (ok && std::find(sets.begin(), sets.end(), s) == sets.end()) pool.push_back(s);
    }
    const std::size_t m = pool.size();
    std::vector<std::vector<bool>> compatible(m, std::vector<bool>(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) compatible[i][j] = i != j && combinat::is_weakly_separated(pool[i], pool[j]);
    long count = 0;
    // Bron-Kerbosch without pivoting; pools are tiny.
    std::function<void(std::vector<int>, std::vector<int>)> extend = [&](std::vector<int> p, std::vector<int> x) {
        if (p.empty() && x.empty()) {
            ++count;
            return;
        }
        while (!p.empty()) {
            int v = p.back();
            std::vector<int> p2, x2;
            for (int u : p)
                if (compatible[v][u]) p2.push_back(u);
            for (int u : x)
                if (compatible[v][u]) x2.push_back(u);
            extend(p2, x2);
            p.pop_back();
            x.push_back(v);
        }
    };
    std::vector<int> all(m);
    for (std::size_t i = 0; i < m; ++i) all[i] = static_cast<int>(i);
    extend(all, {});
    return count;
}

std::set<std::string> keys_of(const FlipGraph<PlabicTriangulation>& g) {
    return std::set<std::string>(g.keys.begin(), g.keys.end());
}

int count_kind(const std::vector<Move>& moves, MoveKind kind) {
    return static_cast<int>(std::count_if(moves.begin(), moves.end(), [&](const Move& m) { return m.kind == kind; }));
}

const Move* find_move(const std::vector<Move>& moves, MoveKind kind) {
    for (const auto& m : moves)
        if (m.kind == kind) return &m;
    return nullptr;
}

std::vector<DecoratedPermutation> small_permutations(int nmax) {
    std::vector<DecoratedPermutation> out;
    for (int n = 1; n <= nmax; ++n)
        for (auto& p : combinat::all_decorated_permutations(n)) out.push_back(p);
    return out;
}

}  // namespace

TEST_CASE("triangle colors and positions") {
    CHECK(position(L("13")) == Point{4, 10});
    CHECK(make_triangle(L("12"), L("13"), L("14")).color == Color::white);
    CHECK(make_triangle(L("12"), L("13"), L("23")).color == Color::black);
    CHECK_THROWS_AS(make_triangle(L("12"), L("34"), L("13")), ValidationError);
    CHECK_THROWS_AS(make_triangle(L("12"), L("12"), L("13")), ValidationError);
}

TEST_CASE("structural check rejects broken triangulations") {
    auto I = cyclic_necklace(4, 2);
    std::vector<Subset> labels{L("12"), L("23"), L("34"), L("14"), L("13")};
    std::vector<Triangle> good{make_triangle(L("12"), L("13"), L("14")), make_triangle(L("13"), L("23"), L("34")),
                               make_triangle(L("12"), L("13"), L("23")), make_triangle(L("13"), L("14"), L("34"))};
    CHECK(check(PlabicTriangulation(I, labels, good)).empty());
    auto missing = good;
    missing.pop_back();
    CHECK_FALSE(check(PlabicTriangulation(I, labels, missing)).empty());
    auto extra = labels;
    extra.push_back(L("24"));
    CHECK_FALSE(check(PlabicTriangulation(I, extra, good)).empty());
}

TEST_CASE("cross-sections of every tiling dualize to pi(n,k)") {
    for (int n : {4, 5, 6}) {
        auto g = zonotope::enumerate_tilings(zonotope::zonotope_spec(n, 3));
        for (const auto& t : g.vertices)
            for (int k = 1; k < n; ++k) {
                auto s = cross_section(t, k);
                REQUIRE(check(s).empty());
                auto G = dual_graph(s);
                for (const auto& v : G.vertices)
                    if (!v.boundary) CHECK(G.degree(&v - G.vertices.data()) == 3);
                CHECK(strand_permutation(G) == cyclic_decorated(n, k));
                CHECK(is_reduced(G).reduced);
                if (k == 1) {
                    for (const auto& tri : s.triangles()) CHECK(tri.color == Color::white);
                    for (Subset l : s.labels()) CHECK(card(l) == 1);
                }
            }
    }
    CHECK_THROWS_AS(cross_section(zonotope::minimal_tiling(zonotope::zonotope_spec(5, 3)), 0), ArgumentError);
    CHECK_THROWS_AS(cross_section(zonotope::minimal_tiling(zonotope::zonotope_spec(5, 3)), 5), ArgumentError);
    CHECK_THROWS_AS(cross_section(zonotope::minimal_tiling(zonotope::zonotope_spec(5, 2)), 2), ArgumentError);
}

TEST_CASE("Z(4,3) sections at level 2") {
    auto g = zonotope::enumerate_tilings(zonotope::zonotope_spec(4, 3));
    REQUIRE(g.size() == 2);
    std::set<Subset> centers;
    for (const auto& t : g.vertices) {
        auto s = cross_section(t, 2);
        CHECK(s.labels().size() == 5);
        CHECK(s.triangles().size() == 4);
        CHECK(count_if(s.triangles().begin(), s.triangles().end(), [](auto& x) { return x.color == Color::white; }) == 2);
        for (Subset l : s.labels())
            if (l == L("13") || l == L("24")) centers.insert(l);
        auto moves = available_moves(s);
        REQUIRE(moves.size() == 1);
        CHECK(moves[0].kind == MoveKind::square);
    }
    CHECK(centers == std::set<Subset>{L("13"), L("24")});
}

TEST_CASE("hand-built plabic graphs") {
    SUBCASE("black lollipop") {
        PlabicGraph g;
        int b = g.add_boundary(1);
        int v = g.add_internal(Color::black);
        g.connect(b, v);
        auto p = strand_permutation(g);
        CHECK(p(1) == 1);
        CHECK(p.fixed_color(1) == Color::black);
        CHECK(is_reduced(g).reduced);
    }
    SUBCASE("isolated whites") {
        PlabicGraph g;
        for (int i = 1; i <= 4; ++i) g.add_boundary(i);
        for (int i = 1; i <= 4; ++i) g.connect(i - 1, g.add_internal(Color::white));
        auto p = strand_permutation(g);
        CHECK(p.is_identity());
        for (int i = 1; i <= 4; ++i) CHECK(p.fixed_color(i) == Color::white);
        CHECK(is_reduced(g).reduced);
    }
    SUBCASE("alternating square") {
        // Square w1 b2 w3 b4, b_i attached to the i-th corner; clockwise rotations.
        PlabicGraph g;
        for (int i = 1; i <= 4; ++i) g.add_boundary(i);
        int w1 = g.add_internal(Color::white), b2 = g.add_internal(Color::black);
        int w3 = g.add_internal(Color::white), b4 = g.add_internal(Color::black);
        auto& V = g.vertices;
        auto edge = [&](int u, int v) {
            g.edges.emplace_back(u, v);
            return static_cast<int>(g.edges.size()) - 1;
        };
        int e1 = edge(0, w1), e2 = edge(1, b2), e3 = edge(2, w3), e4 = edge(3, b4);
        int a = edge(w1, b2), b = edge(b2, w3), c = edge(w3, b4), d = edge(b4, w1);
        V[0].rotation = {e1};
        V[1].rotation = {e2};
        V[2].rotation = {e3};
        V[3].rotation = {e4};
        V[w1].rotation = {e1, a, d};
        V[b2].rotation = {e2, b, a};
        V[w3].rotation = {e3, c, b};
        V[b4].rotation = {e4, d, c};
        auto dual = dual_graph(cross_section(zonotope::minimal_tiling(zonotope::zonotope_spec(4, 3)), 2));
        CHECK(strand_permutation(dual) == perm("3,4,1,2"));
        CHECK(strand_permutation(g) == perm("3,4,1,2"));
        CHECK(is_reduced(g).reduced);
    }
    SUBCASE("doubled edge is not reduced") {
        // b1 - w - (two parallel edges) - b - b2
        PlabicGraph g;
        g.add_boundary(1);
        g.add_boundary(2);
        int w = g.add_internal(Color::white), b = g.add_internal(Color::black);
        g.connect(0, w);
        g.connect(w, b);
        g.connect(w, b);
        g.connect(b, 1);
        auto r = is_reduced(g);
        CHECK_FALSE(r.reduced);
        CHECK_FALSE(r.witness.empty());
    }
}

TEST_CASE("degenerate necklace with a hanging edge") {
    auto I = necklace(5, {"134", "234", "134", "145", "135"});
    auto p = combinat::decorated_of(I);
    CHECK(p == perm("2,1,5,3,4"));
    auto s = seed_triangulation(p);
    CHECK(s.labels() == std::vector<Subset>{L("134"), L("234"), L("135"), L("145")});
    REQUIRE(s.triangles().size() == 1);
    CHECK(s.triangles()[0].color == Color::black);
    auto G = dual_graph(s);
    CHECK(strand_permutation(G) == p);
    CHECK(is_reduced(G).reduced);
    // The hanging edge joins b_1 and b_2 directly.
    CHECK(G.other(G.vertices[G.boundary_vertex[0]].rotation[0], G.boundary_vertex[0]) == G.boundary_vertex[1]);

    auto emb = embed_in_cyclic(s);
    CHECK(emb.whole.boundary() == cyclic_necklace(5, 3));
    for (Subset l : s.labels()) CHECK(emb.whole.has_label(l));
    CHECK(restrict_to(emb.whole, I) == s);
    CHECK(strand_permutation(dual_graph(emb.whole)) == cyclic_decorated(5, 3));
}

TEST_CASE("available moves and their involution") {
    auto g = zonotope::enumerate_tilings(zonotope::zonotope_spec(4, 3));
    for (const auto& t : g.vertices) {
        auto s = cross_section(t, 2);
        auto m = available_moves(s)[0];
        auto u = apply_move(s, m);
        CHECK(u.has_label(m.new_label));
        CHECK_FALSE(u.has_label(m.old_label));
        CHECK((std::set<Subset>{m.old_label, m.new_label} == std::set<Subset>{L("13"), L("24")}));
        CHECK(apply_move(u, m.inverse()) == s);
        CHECK(m.label() == available_moves(u)[0].label());
        CHECK_THROWS_AS(apply_move(u, m), PreconditionError);
    }
    auto fan = triangulation_from_labels(LabelCollection::from(5, 1, {L("1"), L("2"), L("3"), L("4"), L("5")}),
                                         cyclic_necklace(5, 1));
    auto moves = available_moves(fan);
    CHECK(moves.size() == 2);
    CHECK(count_kind(moves, MoveKind::white_trivalent) == 2);
    for (const auto& m : moves) CHECK(apply_move(apply_move(fan, m), m.inverse()) == fan);
    auto tri = seed_triangulation(cyclic_decorated(3, 1));
    CHECK(tri.triangles().size() == 1);
    CHECK(available_moves(tri).empty());
}

TEST_CASE("triangulation_from_labels") {
    auto s = triangulation_from_labels(LabelCollection::from(4, 2, {L("12"), L("23"), L("34"), L("14"), L("13")}),
                                       cyclic_necklace(4, 2));
    CHECK(s.has_label(L("13")));
    CHECK(s.triangles().size() == 4);
    auto fan = triangulation_from_labels(LabelCollection::from(5, 1, {L("1"), L("2"), L("3"), L("4"), L("5")}),
                                         cyclic_necklace(5, 1));
    for (const auto& t : fan.triangles()) CHECK(t.has(L("1")));
    auto one = triangulation_from_labels(LabelCollection::from(3, 1, {L("1"), L("2"), L("3")}), cyclic_necklace(3, 1));
    CHECK(one.triangles().size() == 1);
    CHECK_THROWS_AS(triangulation_from_labels(LabelCollection::from(4, 2, {L("12"), L("23"), L("34"), L("14"), L("13"), L("24")}),
                                              cyclic_necklace(4, 2)),
                    ValidationError);
    CHECK_THROWS_AS(triangulation_from_labels(LabelCollection::from(4, 2, {L("12"), L("23"), L("34")}), cyclic_necklace(4, 2)),
                    ValidationError);
}

TEST_CASE("seeds from every decorated permutation") {
    for (const auto& p : small_permutations(6)) {
        auto s = seed_triangulation(p);
        REQUIRE(check(s).empty());
        auto G = dual_graph(s);
        CHECK(strand_permutation(G) == p);
        CHECK(is_reduced(G).reduced);
        CHECK(combinat::is_weakly_separated(s.labels()));
        for (Subset b : s.boundary().sets()) CHECK(s.has_label(b));
    }
}

TEST_CASE("Catalan counts for k = 1") {
    for (int n = 3; n <= 8; ++n) {
        auto g = enumerate_plabic(cyclic_decorated(n, 1));
        CHECK(static_cast<long>(g.size()) == catalan_triangulations(n));
        CHECK(static_cast<long>(g.edges.size()) == catalan_triangulations(n) * (n - 3) / 2);
    }
}

TEST_CASE("plabic flip graphs agree with cross-sections of all tilings") {
    for (int n : {4, 5, 6}) {
        auto tilings = zonotope::enumerate_tilings(zonotope::zonotope_spec(n, 3));
        for (int k = 1; k < n; ++k) {
            std::set<std::string> sections;
            for (const auto& t : tilings.vertices) sections.insert(cross_section(t, k).key());
            CHECK(keys_of(enumerate_plabic(cyclic_decorated(n, k))) == sections);
        }
    }
}

TEST_CASE("square-move classes match maximal weakly separated collections") {
    auto perms = small_permutations(5);
    for (int k = 1; k <= 5; ++k) perms.push_back(cyclic_decorated(6, k));
    for (const auto& p : perms) {
        auto c = build_plabic_complex(p, ComplexKind::Y);
        CHECK(static_cast<long>(c.complex.vertex_count) == count_maximal_ws(combinat::necklace_of(p)));
    }
}

TEST_CASE("enumeration invariants") {
    for (const auto& p : small_permutations(5)) {
        auto g = enumerate_plabic(p);
        auto serial = enumerate_plabic(p, Execution::serial);
        auto other = enumerate_plabic(p, Execution::parallel, kDefaultVertexCap, SeedOrder::reverse_colex);
        auto reference = enumerate_plabic_reference(p);
        CHECK(g.keys == serial.keys);
        CHECK(g.edges == serial.edges);
        CHECK(keys_of(g) == keys_of(other));
        CHECK(keys_of(g) == keys_of(reference));
        CHECK(g.edges.size() == reference.edges.size());
        for (const auto& s : g.vertices) {
            CHECK(combinat::is_weakly_separated(s.labels()));
            for (const auto& m : available_moves(s)) {
                auto t = apply_move(s, m);
                auto G = dual_graph(t);
                CHECK(strand_permutation(G) == p);
                CHECK(is_reduced(G).reduced);
            }
        }
    }
    CHECK_THROWS_AS(enumerate_plabic(cyclic_decorated(6, 3), Execution::parallel, 20), ResourceError);
}

TEST_CASE("pi(5,2) contains the decagon of the Z(5,3) cycle") {
    auto g = enumerate_plabic(cyclic_decorated(5, 2));
    CHECK(g.size() == 10);
    CHECK(g.edges.size() == 10);
    int square = 0, white = 0;
    for (const auto& e : g.edges) {
        if (e.label.rfind("M2", 0) == 0) ++square;
        if (e.label.rfind("M1", 0) == 0) ++white;
    }
    CHECK(square == 5);
    CHECK(white == 5);
}

TEST_CASE("layer steps") {
    auto fan = triangulation_from_labels(LabelCollection::from(5, 1, {L("1"), L("2"), L("3"), L("4"), L("5")}),
                                         cyclic_necklace(5, 1));
    auto up = layer_step(fan, Shift::up);
    CHECK(up.boundary() == cyclic_necklace(5, 2));
    int black = 0;
    for (const auto& t : up.triangles()) black += t.color == Color::black;
    CHECK(black == 3);
    CHECK(strand_permutation(dual_graph(up)) == cyclic_decorated(5, 2));
    auto sq = cross_section(zonotope::minimal_tiling(zonotope::zonotope_spec(4, 3)), 2);
    auto down = layer_step(sq, Shift::down);
    CHECK(down.boundary() == cyclic_necklace(4, 1));
    CHECK(down.labels() == std::vector<Subset>{L("1"), L("2"), L("3"), L("4")});
    CHECK(down.triangles().size() == 2);
    CHECK_THROWS_AS(layer_step(fan, Shift::down), ArgumentError);
    CHECK_THROWS_AS(layer_step(seed_triangulation(perm("2,1,5,3,4")), Shift::up), PreconditionError);

    // Up then down keeps the white part.
    auto tilings = zonotope::enumerate_tilings(zonotope::zonotope_spec(6, 3));
    for (std::size_t i = 0; i < tilings.size(); i += 37)
        for (int k = 2; k <= 4; ++k) {
            auto s = cross_section(tilings.vertices[i], k);
            auto back = layer_step(layer_step(s, Shift::up), Shift::down);
            CHECK(back.labels() == s.labels());
            for (const auto& t : s.triangles())
                if (t.color == Color::white) CHECK(back.has_triangle(t));
            // Neighboring layers agree with the tiling outside free regions.
            auto next = cross_section(tilings.vertices[i], k + 1);
            auto step = layer_step(s, Shift::up);
            CHECK(step.labels() == next.labels());
            for (const auto& t : next.triangles())
                if (t.color == Color::black) CHECK(step.has_triangle(t));
        }
}

TEST_CASE("extend_to_tiling round-trips") {
    for (int n : {4, 5, 6}) {
        auto spec = zonotope::zonotope_spec(n, 3);
        auto tilings = zonotope::enumerate_tilings(spec);
        for (std::size_t i = 0; i < tilings.size(); i += n == 6 ? 11 : 1)
            for (int k = 1; k < n; ++k) {
                auto s = cross_section(tilings.vertices[i], k);
                auto t = extend_to_tiling(s);
                CHECK(zonotope::validate_tiling(spec, t).ok);
                CHECK(cross_section(t, k) == s);
            }
    }
    auto tri = seed_triangulation(cyclic_decorated(3, 1));
    CHECK(extend_to_tiling(tri).tiles().size() == 1);
}

TEST_CASE("up and down graphs") {
    auto sq = cross_section(zonotope::minimal_tiling(zonotope::zonotope_spec(4, 3)), 2);
    auto up = up_down_graph(sq, Shift::up);
    CHECK(up.boundary() == cyclic_necklace(4, 3));
    CHECK(up.triangles().size() == 2);
    CHECK_THROWS_AS(up_down_graph(seed_triangulation(cyclic_decorated(5, 1)), Shift::down), PreconditionError);
    CHECK_THROWS_AS(up_down_graph(seed_triangulation(perm("1w,2b,3w")), Shift::up), PreconditionError);

    for (const auto& p : small_permutations(6)) {
        if (p.is_identity()) continue;
        auto g = enumerate_plabic(p);
        const auto I = combinat::necklace_of(p);
        for (std::size_t i = 0; i < g.size(); i += p.n() == 6 ? 7 : 1) {
            const auto& s = g.vertices[i];
            for (Shift dir : {Shift::up, Shift::down}) {
                const auto J = combinat::necklace_shift(I, dir);
                const auto q = combinat::decorated_of(J);
                if (dir == Shift::down && q.is_identity()) {
                    CHECK_THROWS_AS(up_down_graph(s, dir), PreconditionError);
                    continue;
                }
                auto u = up_down_graph(s, dir);
                CHECK(check(u).empty());
                CHECK(u.boundary() == J);
                auto G = dual_graph(u);
                CHECK(strand_permutation(G) == q);
                CHECK(is_reduced(G).reduced);
            }
            // Embedding keeps the triangulation verbatim.
            auto emb = embed_in_cyclic(s);
            CHECK(restrict_to(emb.whole, I) == s);
        }
    }
}

TEST_CASE("nested necklace after down then up") {
    for (const auto& p : small_permutations(6)) {
        if (p.is_identity()) continue;
        const auto I = combinat::necklace_of(p);
        const auto down = combinat::necklace_shift(I, Shift::down);
        if (combinat::decorated_of(down).is_identity()) continue;
        const auto J = combinat::necklace_shift(down, Shift::up);
        for (Subset x : combinat::positroid_labels(J)) CHECK(combinat::in_positroid(I, x));
        auto s = seed_triangulation(p);
        auto ud = up_down_graph(up_down_graph(s, Shift::down), Shift::up);
        CHECK(ud.boundary() == J);
    }
}

TEST_CASE("flips correspond to square moves") {
    for (int n : {4, 5, 6}) {
        auto tilings = zonotope::enumerate_tilings(zonotope::zonotope_spec(n, 3));
        for (const auto& t : tilings.vertices) {
            auto flips = zonotope::available_flips(t);
            std::size_t squares = 0;
            for (int k = 1; k < n; ++k) squares += count_kind(available_moves(cross_section(t, k)), MoveKind::square);
            auto pairs = flip_move_correspondence(t);
            CHECK(pairs.size() == flips.size());
            CHECK(squares == flips.size());
            std::set<std::pair<int, std::string>> seen;
            for (const auto& pr : pairs) {
                auto back = flip_for_square_move(t, pr.level, pr.move);
                REQUIRE(back.has_value());
                CHECK(*back == pr.flip);
                seen.insert({pr.level, pr.move.label()});
                // Layer coherence: M1 below, M2 at, M3 above, nothing else.
                auto after = zonotope::apply_flip(t, pr.flip);
                const int p = card(pr.flip.prefix);
                for (int k = 1; k < n; ++k) {
                    auto before_k = cross_section(t, k), after_k = cross_section(after, k);
                    if (k == p + 1 || k == p + 2 || k == p + 3) {
                        const MoveKind kind = k == p + 1   ? MoveKind::white_trivalent
                                              : k == p + 2 ? MoveKind::square
                                                           : MoveKind::black_trivalent;
                        bool performed = false;
                        for (const auto& m : available_moves(before_k))
                            if (m.kind == kind && apply_move(before_k, m) == after_k) performed = true;
                        CHECK(performed);
                    } else {
                        CHECK(before_k == after_k);
                    }
                }
            }
            CHECK(seen.size() == pairs.size());
        }
        if (n == 4)
            for (const auto& t : tilings.vertices) {
                auto pairs = flip_move_correspondence(t);
                REQUIRE(pairs.size() == 1);
                CHECK(pairs[0].level == 2);
            }
    }
}

TEST_CASE("realizing trivalent moves") {
    SUBCASE("Z(4,3) black move") {
        auto tilings = zonotope::enumerate_tilings(zonotope::zonotope_spec(4, 3));
        for (const auto& t : tilings.vertices) {
            auto s = cross_section(t, 3);
            const auto moves = available_moves(s);
            const Move* m = find_move(moves, MoveKind::black_trivalent);
            REQUIRE(m);
            auto seq = realize_trivalent_move(t, 3, *m);
            REQUIRE(seq.size() == 1);
            CHECK(seq[0] == zonotope::available_flips(t)[0]);
            CHECK(verify_realization(t, 3, *m, seq).empty());
        }
    }
    SUBCASE("every move of Z(5,3)") {
        auto tilings = zonotope::enumerate_tilings(zonotope::zonotope_spec(5, 3));
        int checked = 0;
        for (const auto& t : tilings.vertices)
            for (int k = 1; k < 5; ++k)
                for (const auto& m : available_moves(cross_section(t, k))) {
                    if (m.kind == MoveKind::square) {
                        CHECK_THROWS_AS(realize_trivalent_move(t, k, m), ArgumentError);
                        continue;
                    }
                    auto seq = realize_trivalent_move(t, k, m);
                    CHECK(verify_realization(t, k, m, seq) == "");
                    ++checked;
                }
        CHECK(checked > 0);
    }
    SUBCASE("unavailable move") {
        auto tilings = zonotope::enumerate_tilings(zonotope::zonotope_spec(5, 3));
        auto s = cross_section(tilings.vertices[0], 1);
        auto m = available_moves(s)[0];
        auto other = apply_move(s, m);
        CHECK_THROWS_AS(realize_trivalent_move(tilings.vertices[0], 1, available_moves(other)[0].kind == MoveKind::white_trivalent
                                                                          ? available_moves(other)[1]
                                                                          : available_moves(other)[0]),
                        PreconditionError);
    }
    SUBCASE("verifier catches tampering") {
        auto tilings = zonotope::enumerate_tilings(zonotope::zonotope_spec(5, 3));
        const auto& t = tilings.vertices[3];
        for (int k = 1; k < 5; ++k)
            for (const auto& m : available_moves(cross_section(t, k))) {
                if (m.kind == MoveKind::square) continue;
                auto seq = realize_trivalent_move(t, k, m);
                auto bad = seq;
                bad.pop_back();
                CHECK_FALSE(verify_realization(t, k, m, bad).empty());
            }
    }
}

TEST_CASE("aligning tilings with a common section") {
    for (int n : {5, 6}) {
        auto tilings = zonotope::enumerate_tilings(zonotope::zonotope_spec(n, 3));
        std::mt19937 rng(7);
        for (int k = 1; k < n; ++k) {
            std::map<std::string, std::vector<int>> by_section;
            for (std::size_t i = 0; i < tilings.size(); ++i)
                by_section[cross_section(tilings.vertices[i], k).key()].push_back(static_cast<int>(i));
            int tested = 0;
            for (const auto& [key, members] : by_section)
                for (int a : members)
                    for (int b : members) {
                        if (n == 6 && (rng() % 200 != 0)) continue;
                        auto seq = align_tilings(tilings.vertices[a], tilings.vertices[b], k);
                        CHECK(verify_alignment(tilings.vertices[a], tilings.vertices[b], k, seq) == "");
                        if (a == b) CHECK(seq.empty());
                        ++tested;
                    }
            CHECK(tested > 0);
        }
        const auto& t0 = tilings.vertices[0];
        int other = -1;
        for (std::size_t i = 1; i < tilings.size() && other < 0; ++i)
            if (!(cross_section(tilings.vertices[i], 2) == cross_section(t0, 2))) other = static_cast<int>(i);
        REQUIRE(other > 0);
        CHECK_THROWS_AS(align_tilings(t0, tilings.vertices[other], 2), PreconditionError);
    }
}

TEST_CASE("cycle templates") {
    CHECK(cycle_template(ComplexKind::X, 1).size() == 5);
    CHECK(cycle_template(ComplexKind::X, 2).size() == 10);
    CHECK(cycle_template(ComplexKind::X, 3).size() == 10);
    CHECK(cycle_template(ComplexKind::X, 4).size() == 5);
    CHECK(cycle_template(ComplexKind::Y, 1).empty());
    CHECK(cycle_template(ComplexKind::Y, 2).size() == 5);
    CHECK(cycle_template(ComplexKind::Y, 3).size() == 5);
    CHECK(cycle_template(ComplexKind::Y, 4).empty());
    CHECK(cycle_template(ComplexKind::T, 1).size() == 5);
    CHECK(cycle_template(ComplexKind::T, 2).size() == 10);
    CHECK(cycle_template(ComplexKind::T, 3).size() == 5);
    CHECK(cycle_template(ComplexKind::T, 4).empty());
}

TEST_CASE("plabic complexes") {
    auto x51 = build_plabic_complex(cyclic_decorated(5, 1), ComplexKind::X);
    CHECK(x51.complex.vertex_count == 5);
    CHECK(x51.complex.edges.size() == 5);
    REQUIRE(x51.complex.cells.size() == 1);
    CHECK(x51.complex.cell_kinds[0] == "pentagon pi(5,1)");
    CHECK(topology::h1(x51.complex).betti1 == 0);

    auto x52 = build_plabic_complex(cyclic_decorated(5, 2), ComplexKind::X);
    CHECK(std::count(x52.complex.cell_kinds.begin(), x52.complex.cell_kinds.end(), "decagon pi(5,2)") == 1);

    auto y52 = build_plabic_complex(cyclic_decorated(5, 2), ComplexKind::Y);
    CHECK(y52.complex.vertex_count == 5);
    REQUIRE(y52.complex.cells.size() == 1);
    CHECK(y52.complex.cell_kinds[0] == "pentagon pi(5,2)");
    auto cert = topology::certify(y52.complex, true);
    CHECK(cert.h1_trivial());
    CHECK(cert.pi1_trivial());

    auto x54 = build_plabic_complex(cyclic_decorated(5, 4), ComplexKind::X);
    CHECK(std::count(x54.complex.cell_kinds.begin(), x54.complex.cell_kinds.end(), "pentagon pi(5,4)") == 1);

    // Quadrilaterals come from moves in separate parts.
    auto x63 = build_plabic_complex(cyclic_decorated(6, 3), ComplexKind::X);
    CHECK(std::count(x63.complex.cell_kinds.begin(), x63.complex.cell_kinds.end(), "quadrilateral") > 0);
    CHECK(x63.complex.check().empty());

    auto serial = build_plabic_complex(cyclic_decorated(6, 3), ComplexKind::X, Execution::serial);
    CHECK(serial.complex.edges == x63.complex.edges);
    CHECK(serial.complex.cell_kinds == x63.complex.cell_kinds);

    // Every quotient edge is a square move in Y.
    for (const auto& e : y52.graph.edges) {
        const bool crosses = y52.class_of[e.u] != y52.class_of[e.v];
        CHECK(crosses == (e.label.rfind("M2", 0) == 0));
    }
    CHECK_THROWS_AS(parse_complex_kind("Z"), ArgumentError);
}
