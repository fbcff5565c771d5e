#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flipcycles/plabic.hpp"
#include "flipcycles/plabic_complex.hpp"

namespace flipcycles::tcd {

using combinat::DecoratedPermutation;
using plabic::PlabicGraph;
using plabic::PlabicTriangulation;

struct TripleCrossingDiagram {
    PlabicGraph graph;  // bipartite-normalized plabic graph
    DecoratedPermutation connectivity;
    std::optional<PlabicTriangulation> normal_form;  // black regions fanned
};

// Black polygons re-triangulated by the canonical fan; white triangles kept.
PlabicTriangulation normalize(const PlabicTriangulation& s);
// Merges every connected set of black internal vertices into one vertex.
PlabicGraph contract_black(const PlabicGraph& g);

// Throws ValidationError naming the first failed condition.
TripleCrossingDiagram as_tcd(const PlabicGraph& g);
TripleCrossingDiagram tcd_of(const PlabicTriangulation& s);

struct Neighbor {
    std::string description;
    TripleCrossingDiagram diagram;
};

std::vector<Neighbor> tcd_neighbors(const TripleCrossingDiagram& d);

plabic::PlabicComplex build_t_complex(const DecoratedPermutation& p, Execution exec = Execution::parallel,
                                      std::size_t cap = kDefaultVertexCap);

}  // namespace flipcycles::tcd
