#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace flipcycles::topology {

using Int = boost::multiprecision::cpp_int;
using IntMatrix = std::vector<std::vector<Int>>;

struct OrientedEdge {
    int edge = 0;
    bool forward = true;  // traversed from edges[edge].first to .second
    friend bool operator==(const OrientedEdge&, const OrientedEdge&) = default;
};

struct TwoComplex {
    int vertex_count = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<OrientedEdge>> cells;
    std::vector<std::string> cell_kinds;

    int add_edge(int u, int v);
    // Looks up an edge between u and v in either direction, -1 if absent.
    int find_edge(int u, int v) const;
    // Adds the cell bounded by the closed vertex walk cycle[0], cycle[1], ...
    void add_cell(const std::vector<int>& cycle, const std::string& kind);
    // Empty when every cell is a closed walk over existing edges.
    std::string check() const;
    int components() const;

private:
    std::map<std::pair<int, int>, int> lookup_;
};

struct GroupPresentation {
    int generators = 0;
    // Letters are +-(g+1) for generator g.
    std::vector<std::vector<int>> relators;
};

struct SmithResult {
    std::vector<Int> diagonal;  // d1 | d2 | ... followed by zeros
    int rank = 0;
};

SmithResult smith_normal_form(IntMatrix m);

struct Homology {
    int betti1 = 0;
    std::vector<Int> torsion;
    int rank_boundary2 = 0;
};

Homology h1(const TwoComplex& k);

// Boundary matrix of the 2-cells, rows indexed by edges.
IntMatrix boundary2(const TwoComplex& k);

GroupPresentation pi1_presentation(const TwoComplex& k);

constexpr std::uint64_t kDefaultBudget = 10'000'000;

enum class Pi1Status { trivial, inconclusive };

struct Pi1Result {
    Pi1Status status = Pi1Status::inconclusive;
    std::uint64_t steps = 0;
    int generators_after_tietze = 0;
    int cosets = 0;  // live cosets when enumeration finished or gave up
};

// Tietze eliminations only; the result presents the same group.
GroupPresentation simplify(const GroupPresentation& p, std::uint64_t budget, std::uint64_t* steps = nullptr);

Pi1Result certify_trivial(const GroupPresentation& p, std::uint64_t budget = kDefaultBudget);

struct Certificate {
    int vertices = 0;
    int edges = 0;
    int cells = 0;
    Homology homology;
    bool pi1_attempted = false;
    Pi1Result pi1;
    std::uint64_t budget = kDefaultBudget;
    double wall_ms = 0;

    bool h1_trivial() const { return homology.betti1 == 0 && homology.torsion.empty(); }
    bool pi1_trivial() const { return pi1_attempted && pi1.status == Pi1Status::trivial; }
};

Certificate certify(const TwoComplex& k, bool with_pi1, std::uint64_t budget = kDefaultBudget);

std::string summary(const Certificate& c);

}  // namespace flipcycles::topology
