#pragma once

#include <string>
#include <vector>

#include "flipcycles/plabic.hpp"
#include "flipcycles/topology.hpp"

namespace flipcycles::plabic {

// X: trivalent graphs under all moves. Y: classes modulo trivalent moves.
// T: classes modulo black trivalent moves (triple crossing diagrams).
enum class ComplexKind { X, Y, T };
const char* complex_kind_name(ComplexKind k);
ComplexKind parse_complex_kind(const std::string& s);

// The part of a triangulation a complex remembers.
struct Config {
    std::vector<Subset> labels;
    std::vector<Triangle> triangles;
    friend bool operator==(const Config&, const Config&) = default;
};

Config project(const PlabicTriangulation& s, ComplexKind kind);
std::string config_key(const Config& c);

// Cross-sections of the 10-cycle of Z(5,3) at level j as seen by a complex
// kind, with consecutive repeats removed; empty when fewer than 3 remain.
const std::vector<Config>& cycle_template(ComplexKind kind, int j);

struct PlabicComplex {
    ComplexKind kind = ComplexKind::X;
    FlipGraph<PlabicTriangulation> graph;
    std::vector<int> class_of;        // graph vertex -> complex vertex
    std::vector<int> representative;  // complex vertex -> graph vertex
    std::vector<Config> configs;      // complex vertex -> projected config
    topology::TwoComplex complex;
};

PlabicComplex build_plabic_complex(const DecoratedPermutation& p, ComplexKind kind,
                                   Execution exec = Execution::parallel, std::size_t cap = kDefaultVertexCap);

}  // namespace flipcycles::plabic
