#include <algorithm>
#include <set>

#include "doctest.h"
#include "flipcycles/errors.hpp"
#include "flipcycles/tcd.hpp"
#include "flipcycles/topology.hpp"

using namespace flipcycles;
using namespace flipcycles::plabic;
using combinat::cyclic_decorated;
using tcd::tcd_neighbors;
using tcd::tcd_of;

namespace {

Subset L(const std::string& digits) {
    Subset s = 0;
    for (char c : digits) s |= bit(c - '0');
    return s;
}

std::vector<DecoratedPermutation> t_permutations() {
    std::vector<DecoratedPermutation> out;
    for (int n = 1; n <= 5; ++n)
        for (auto& p : combinat::all_permutations(n)) out.push_back(p);
    for (int k = 1; k <= 5; ++k) out.push_back(cyclic_decorated(6, k));
    return out;
}

int find_config(const PlabicComplex& c, const PlabicTriangulation& s) {
    const auto key = config_key(project(s, ComplexKind::T));
    for (std::size_t w = 0; w < c.configs.size(); ++w)
        if (config_key(c.configs[w]) == key) return static_cast<int>(w);
    return -1;
}

std::set<int> neighbors_in(const topology::TwoComplex& k, int v) {
    std::set<int> out;
    for (auto [a, b] : k.edges) {
        if (a == v) out.insert(b);
        if (b == v) out.insert(a);
    }
    return out;
}

}  // namespace

TEST_CASE("as_tcd accepts contracted duals and rejects bad graphs") {
    auto sq = cross_section(zonotope::minimal_tiling(zonotope::zonotope_spec(4, 3)), 2);
    auto d = tcd_of(sq);
    CHECK(d.connectivity == cyclic_decorated(4, 2));
    for (std::size_t v = 0; v < d.graph.vertices.size(); ++v) {
        const auto& x = d.graph.vertices[v];
        if (!x.boundary && x.color == Color::white) CHECK(d.graph.degree(static_cast<int>(v)) == 3);
    }

    SUBCASE("uncontracted black edge") {
        // Z(5,3) level 3 has black triangles sharing a side.
        auto s = cross_section(zonotope::minimal_tiling(zonotope::zonotope_spec(5, 3)), 3);
        auto g = dual_graph(s);
        bool adjacent_black = false;
        for (auto [a, b] : g.edges)
            adjacent_black = adjacent_black || (!g.vertices[a].boundary && !g.vertices[b].boundary &&
                                                g.vertices[a].color == Color::black && g.vertices[b].color == Color::black);
        if (adjacent_black) CHECK_THROWS_WITH_AS(tcd::as_tcd(g), "black-black edge", ValidationError);
        CHECK_NOTHROW(tcd::as_tcd(tcd::contract_black(g)));
    }
    SUBCASE("white vertex of degree two") {
        PlabicGraph g;
        g.add_boundary(1);
        g.add_boundary(2);
        int w = g.add_internal(Color::white);
        g.connect(0, w);
        g.connect(w, 1);
        CHECK_THROWS_WITH_AS(tcd::as_tcd(g), "white vertex degree", ValidationError);
    }
    SUBCASE("white fixed points are leaves") {
        PlabicGraph g;
        g.add_boundary(1);
        g.connect(0, g.add_internal(Color::white));
        auto t = tcd::as_tcd(g);
        CHECK(t.connectivity.is_identity());
    }
    SUBCASE("not reduced") {
        // Two white trivalent vertices joined by a double edge.
        PlabicGraph g;
        g.add_boundary(1);
        g.add_boundary(2);
        int a = g.add_internal(Color::white), b = g.add_internal(Color::white);
        int x = g.add_internal(Color::black), y = g.add_internal(Color::black);
        g.connect(0, a);
        g.connect(a, x);
        g.connect(a, y);
        g.connect(x, b);
        g.connect(y, b);
        g.connect(b, 1);
        CHECK_THROWS_AS(tcd::as_tcd(g), ValidationError);
    }
}

TEST_CASE("normalization") {
    for (const auto& p : t_permutations()) {
        auto g = enumerate_plabic(p);
        for (const auto& s : g.vertices) {
            auto once = tcd::normalize(s);
            CHECK(check(once).empty());
            CHECK(tcd::normalize(once) == once);
            CHECK(once.labels() == s.labels());
            for (const auto& t : s.triangles())
                if (t.color == Color::white) CHECK(once.has_triangle(t));
            CHECK(config_key(project(once, ComplexKind::T)) == config_key(project(s, ComplexKind::T)));
        }
    }
}

TEST_CASE("tcd neighbors") {
    SUBCASE("pi(4,2)") {
        auto d = tcd_of(cross_section(zonotope::minimal_tiling(zonotope::zonotope_spec(4, 3)), 2));
        auto nbs = tcd_neighbors(d);
        REQUIRE(nbs.size() == 1);
        auto back = tcd_neighbors(nbs[0].diagram);
        REQUIRE(back.size() == 1);
        CHECK(*back[0].diagram.normal_form == *d.normal_form);
        const bool has13 = d.normal_form->has_label(L("13"));
        CHECK(nbs[0].diagram.normal_form->has_label(L(has13 ? "24" : "13")));
    }
    SUBCASE("pi(5,1)") {
        auto d = tcd_of(seed_triangulation(cyclic_decorated(5, 1)));
        CHECK(tcd_neighbors(d).size() == 2);
    }
    SUBCASE("identity") {
        auto d = tcd_of(seed_triangulation(DecoratedPermutation::parse("1w,2w,3w")));
        CHECK(tcd_neighbors(d).empty());
    }
    SUBCASE("diagram without a normal form") {
        PlabicGraph g;
        g.add_boundary(1);
        g.connect(0, g.add_internal(Color::white));
        CHECK_THROWS_AS(tcd_neighbors(tcd::as_tcd(g)), PreconditionError);
    }
}

TEST_CASE("neighbors are exactly the edges of the T complex") {
    int checked = 0;
    for (const auto& p : t_permutations()) {
        auto c = tcd::build_t_complex(p);
        for (std::size_t v = 0; v < c.configs.size(); ++v) {
            auto d = tcd_of(c.graph.vertices[c.representative[v]]);
            CHECK(d.connectivity == p);
            auto nbs = tcd_neighbors(d);
            std::set<int> got;
            for (const auto& nb : nbs) {
                CHECK(nb.diagram.connectivity == p);
                const int w = find_config(c, *nb.diagram.normal_form);
                CHECK(w >= 0);
                got.insert(w);
                // Moves are involutions on diagrams.
                bool returns = false;
                for (const auto& nb2 : tcd_neighbors(nb.diagram))
                    returns = returns || find_config(c, *nb2.diagram.normal_form) == static_cast<int>(v);
                CHECK(returns);
            }
            CHECK(got.size() == nbs.size());
            CHECK(got == neighbors_in(c.complex, static_cast<int>(v)));
            ++checked;
        }
    }
    CHECK(checked > 300);
}

TEST_CASE("T complexes") {
    auto t51 = tcd::build_t_complex(cyclic_decorated(5, 1));
    CHECK(t51.complex.vertex_count == 5);
    REQUIRE(t51.complex.cells.size() == 1);
    CHECK(t51.complex.cell_kinds[0] == "pentagon pi(5,1)");

    auto t52 = tcd::build_t_complex(cyclic_decorated(5, 2));
    CHECK(std::count(t52.complex.cell_kinds.begin(), t52.complex.cell_kinds.end(), "decagon pi(5,2)") == 1);

    auto id = tcd::build_t_complex(DecoratedPermutation::parse("1w,2w"));
    CHECK(id.complex.vertex_count == 1);
    CHECK(id.complex.edges.empty());

    CHECK_THROWS_AS(tcd::build_t_complex(DecoratedPermutation::parse("1b,2w")), ArgumentError);

    for (const auto& p : t_permutations()) {
        auto c = tcd::build_t_complex(p);
        auto cert = topology::certify(c.complex, true);
        CHECK(cert.h1_trivial());
        CHECK(cert.pi1_trivial());
    }
}
