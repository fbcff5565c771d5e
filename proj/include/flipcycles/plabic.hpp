#pragma once

#include <array>
#include <compare>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "flipcycles/combinat.hpp"
#include "flipcycles/flip_graph.hpp"
#include "flipcycles/subset.hpp"
#include "flipcycles/zonotope.hpp"

namespace flipcycles::plabic {

using combinat::Color;
using combinat::DecoratedPermutation;
using combinat::GrassmannNecklace;
using combinat::LabelCollection;
using combinat::Shift;

// Exact position of a label: the last two coordinates of the sum of the
// moment-curve vectors (1, i, i^2).
struct Point {
    long long x = 0;
    long long y = 0;
    friend bool operator==(const Point&, const Point&) = default;
};

Point position(Subset label);
// Twice the signed area of (a, b, c); positive when counterclockwise.
long long orientation(Point a, Point b, Point c);

struct Triangle {
    std::array<Subset, 3> labels{};  // ascending
    Color color = Color::white;

    bool has(Subset label) const { return labels[0] == label || labels[1] == label || labels[2] == label; }
    auto operator<=>(const Triangle&) const = default;
};

// Sorts the labels and derives the color; throws ValidationError if the
// three labels form neither a white nor a black triangle.
Triangle make_triangle(Subset a, Subset b, Subset c);

class PlabicTriangulation {
public:
    PlabicTriangulation() = default;
    // Sorts labels and triangles. Structural checks live in check().
    PlabicTriangulation(GrassmannNecklace boundary, std::vector<Subset> labels, std::vector<Triangle> triangles);

    int n() const { return boundary_.n(); }
    int k() const { return boundary_.k(); }
    const GrassmannNecklace& boundary() const { return boundary_; }
    const std::vector<Subset>& labels() const { return labels_; }
    const std::vector<Triangle>& triangles() const { return triangles_; }
    bool has_label(Subset s) const;
    bool has_triangle(const Triangle& t) const;
    std::string key() const;

    friend bool operator==(const PlabicTriangulation& a, const PlabicTriangulation& b) {
        return a.boundary_ == b.boundary_ && a.labels_ == b.labels_ && a.triangles_ == b.triangles_;
    }

private:
    GrassmannNecklace boundary_;
    std::vector<Subset> labels_;
    std::vector<Triangle> triangles_;
};

// Empty when the triangulation satisfies every structural invariant:
// label sizes and weak separation, triangle colors, edge multiplicities,
// local planarity, and area matching the boundary curve.
std::string check(const PlabicTriangulation& s);

struct PlabicGraph {
    struct Vertex {
        bool boundary = false;
        int index = 0;  // i for b_i
        Color color = Color::white;
        std::vector<int> rotation;  // incident edge ids, clockwise in the drawing
        int triangle = -1;          // triangle of the source triangulation
    };

    int n = 0;
    std::vector<Vertex> vertices;
    std::vector<std::pair<int, int>> edges;
    std::vector<int> boundary_vertex;  // b_i is vertices[boundary_vertex[i-1]]

    int add_internal(Color c);
    int add_boundary(int i);
    // Appends the edge to both rotations.
    int connect(int u, int v);
    int degree(int v) const { return static_cast<int>(vertices[v].rotation.size()); }
    int other(int edge, int v) const { return edges[edge].first == v ? edges[edge].second : edges[edge].first;}
};

PlabicGraph dual_graph(const PlabicTriangulation& s);

struct Strand {
    int start = 0;  // boundary index
    int end = 0;    // boundary index
    std::vector<std::pair<int, bool>> steps;  // (edge, traversed first->second)
};

std::vector<Strand> trace_strands(const PlabicGraph& g);
DecoratedPermutation strand_permutation(const PlabicGraph& g);

struct ReducedReport {
    bool reduced = false;
    std::string witness;
};

ReducedReport is_reduced(const PlabicGraph& g);

enum class MoveKind { white_trivalent, square, black_trivalent, contract, uncontract };
const char* move_kind_name(MoveKind k);

struct Move {
    MoveKind kind = MoveKind::white_trivalent;
    std::vector<Triangle> removed;
    std::vector<Triangle> added;
    Subset old_label = 0;  // square moves only
    Subset new_label = 0;

    // Same string from either side of the move.
    std::string label() const;
    Move inverse() const;
    friend bool operator==(const Move&, const Move&) = default;
};

std::vector<Move> available_moves(const PlabicTriangulation& s);
// Throws PreconditionError unless m is available.
PlabicTriangulation apply_move(const PlabicTriangulation& s, const Move& m);

using Side = std::pair<Subset, Subset>;

// Each clique polygon is triangulated keeping the fixed triangles and the
// required sides, then by a fan from its colex-smallest label.
PlabicTriangulation triangulation_from_labels(const LabelCollection& c, const GrassmannNecklace& boundary,
                                              const std::vector<Triangle>& fixed = {},
                                              const std::vector<Side>& required = {});
// Consecutive distinct labels of the necklace.
std::vector<Side> curve_sides(const GrassmannNecklace& I);

enum class SeedOrder { colex, reverse_colex };
PlabicTriangulation seed_triangulation(const DecoratedPermutation& p, SeedOrder order = SeedOrder::colex);

FlipGraph<PlabicTriangulation> enumerate_plabic(const DecoratedPermutation& p, Execution exec = Execution::parallel,
                                                std::size_t cap = kDefaultVertexCap,
                                                SeedOrder order = SeedOrder::colex);
// FIFO search from the colex seed with fully checked moves.
FlipGraph<PlabicTriangulation> enumerate_plabic_reference(const DecoratedPermutation& p,
                                                          std::size_t cap = kDefaultVertexCap);

PlabicTriangulation cross_section(const zonotope::Tiling& t, int k);
PlabicTriangulation layer_step(const PlabicTriangulation& s, Shift dir);
zonotope::Tiling extend_to_tiling(const PlabicTriangulation& s);

struct Embedding {
    PlabicTriangulation whole;   // cyclic boundary
    GrassmannNecklace region;    // curve enclosing the original
};

Embedding embed_in_cyclic(const PlabicTriangulation& s);
// Labels in the positroid of the curve and the triangles spanned by them.
PlabicTriangulation restrict_to(const PlabicTriangulation& whole, const GrassmannNecklace& region);
PlabicTriangulation up_down_graph(const PlabicTriangulation& s, Shift dir);

struct FlipSquarePair {
    zonotope::FlipSite flip;
    int level = 0;
    Move move;
};

std::vector<FlipSquarePair> flip_move_correspondence(const zonotope::Tiling& t);
std::optional<zonotope::FlipSite> flip_for_square_move(const zonotope::Tiling& t, int level, const Move& m);

// Next diagonal flip bringing `target` (a triangle of some clique polygon)
// into s; nullopt when it is already present.
std::optional<Move> move_toward(const PlabicTriangulation& s, const Triangle& target);

std::vector<zonotope::FlipSite> realize_trivalent_move(const zonotope::Tiling& t, int k, const Move& m);
// Empty string when the sequence meets the layer-protection contract.
std::string verify_realization(const zonotope::Tiling& t, int k, const Move& m,
                               const std::vector<zonotope::FlipSite>& seq);

std::vector<zonotope::FlipSite> align_tilings(const zonotope::Tiling& from, const zonotope::Tiling& to, int k);
std::string verify_alignment(const zonotope::Tiling& from, const zonotope::Tiling& to, int k,
                             const std::vector<zonotope::FlipSite>& seq);

}  // namespace flipcycles::plabic
