#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "flipcycles/plabic.hpp"
#include "flipcycles/plabic_complex.hpp"
#include "flipcycles/tcd.hpp"
#include "flipcycles/topology.hpp"
#include "flipcycles/zonotope.hpp"

namespace flipcycles::harness {

using nlohmann::json;

constexpr int kSchemaVersion = 1;
constexpr const char* kOutputDirVariable = "FLIPCYCLES_OUTPUT_DIR";

enum class Format { json, dot, svg };
Format parse_format(const std::string& s);
const char* format_extension(Format f);

struct RunConfig {
    std::string command;
    int n = 0;
    int d = 0;
    int k = 0;
    std::string connectivity;
    std::size_t vertex_cap = kDefaultVertexCap;
    std::uint64_t pi1_budget = topology::kDefaultBudget;
    Format format = Format::json;
    std::string output;
    int threads = 0;  // 0 keeps the OpenMP default
    plabic::SeedOrder seed_order = plabic::SeedOrder::colex;

    // Throws ArgumentError on a non-positive cap or budget.
    void validate() const;
};

std::uint64_t fnv1a(std::string_view text);
// 16 hex digits of the FNV-1a hash.
std::string canonical_hash(std::string_view text);

json subset_json(Subset s);
Subset subset_from_json(const json& j);
json necklace_json(const combinat::GrassmannNecklace& I);
combinat::GrassmannNecklace necklace_from_json(int n, const json& j);
json permutation_json(const combinat::DecoratedPermutation& p);

json tiling_json(const zonotope::Tiling& t);
zonotope::Tiling tiling_from_json(const json& j);
json tiling_graph_json(const FlipGraph<zonotope::Tiling>& g);
std::string tiling_graph_dot(const FlipGraph<zonotope::Tiling>& g);

json triangulation_json(const plabic::PlabicTriangulation& s);
plabic::PlabicTriangulation triangulation_from_json(const json& j);
json plabic_graph_json(const plabic::PlabicGraph& g);
std::string plabic_graph_dot(const plabic::PlabicGraph& g);
std::string triangulation_svg(const plabic::PlabicTriangulation& s, bool strands);

json complex_json(const topology::TwoComplex& k);
json certificate_json(const topology::Certificate& c, const std::string& input_hash, bool timing);

// Adds schema_version and kind.
json envelope(const std::string& kind, json body);

struct RunResult {
    int status = 0;
    std::string out;
    std::string err;
};

// argv without the program name.
RunResult run(const std::vector<std::string>& args);

}  // namespace flipcycles::harness
