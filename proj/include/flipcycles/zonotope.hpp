#pragma once

#include <compare>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "flipcycles/flip_graph.hpp"
#include "flipcycles/subset.hpp"
#include "flipcycles/topology.hpp"

namespace flipcycles::zonotope {

using Int = boost::multiprecision::cpp_int;
using Vec = std::vector<Int>;

struct ZonotopeSpec {
    int n = 0;
    int d = 0;
    std::vector<Int> t;
    std::vector<Vec> v;  // v[i-1] = (1, t_i, ..., t_i^{d-1})
};

ZonotopeSpec zonotope_spec(int n, int d);

struct SignedSubset {
    Subset plus = 0;
    Subset minus = 0;

    Subset zero(int n) const { return full_set(n) & ~(plus | minus); }
    auto operator<=>(const SignedSubset&) const = default;
};

// "+0-" style, position i is element i.
std::string sign_string(const SignedSubset& x, int n);
SignedSubset parse_sign_string(const std::string& s);

// Sum of v_i over a subset.
Vec point_of(const ZonotopeSpec& spec, Subset s);

// Vertices of the tile, deduplicated and sorted.
std::vector<Vec> to_tile(const ZonotopeSpec& spec, const SignedSubset& x);

class Tiling {
public:
    Tiling() = default;
    // Tiles are sorted by (X0 in colex order, X+).
    Tiling(int n, int d, std::vector<SignedSubset> tiles);

    int n() const { return n_; }
    int d() const { return d_; }
    const std::vector<SignedSubset>& tiles() const { return tiles_; }
    // Tile with the given zero set, or nullptr.
    const SignedSubset* find(Subset zero) const;
    // Concatenated X+ masks in tile order.
    std::string key() const;
    std::vector<std::string> sign_strings() const;

    friend bool operator==(const Tiling& a, const Tiling& b) {
        return a.n_ == b.n_ && a.d_ == b.d_ && a.tiles_ == b.tiles_;
    }

private:
    int n_ = 0;
    int d_ = 0;
    bool indexed_ = false;
    std::vector<SignedSubset> tiles_;
};

struct FlipSite {
    Subset set = 0;     // S, |S| = d+1
    Subset prefix = 0;  // common X+ \ S of the d+1 tiles
    Subset ones = 0;    // {i in S : i in X_i^+}

    std::vector<int> bits() const;
    // Does not depend on which side of the flip it is read from.
    std::string label() const;
    auto operator<=>(const FlipSite&) const = default;
};

Tiling minimal_tiling(const ZonotopeSpec& spec);

struct ValidationReport {
    bool ok = false;
    bool fine = false;
    bool one_tile_per_subset = false;
    bool volume = false;
    bool faces = false;
    Int total_volume = 0;
    Int expected_volume = 0;
    std::vector<std::string> problems;
};

ValidationReport validate_tiling(const ZonotopeSpec& spec, const Tiling& t);

// True when the tiles are interior-disjoint and meet in a common face.
bool meet_properly(const ZonotopeSpec& spec, const SignedSubset& a, const SignedSubset& b);

std::vector<FlipSite> available_flips(const Tiling& t);
// Throws PreconditionError when the site is not available.
Tiling apply_flip(const Tiling& t, const FlipSite& site);

FlipGraph<Tiling> enumerate_tilings(const ZonotopeSpec& spec, Execution exec = Execution::parallel,
                                    std::size_t cap = kDefaultVertexCap);
FlipGraph<Tiling> enumerate_tilings_reference(const ZonotopeSpec& spec, std::size_t cap = kDefaultVertexCap);

topology::TwoComplex build_z_complex(const FlipGraph<Tiling>& graph, Execution exec = Execution::parallel);

// Flip at site `set` (if any) available at t.
const FlipSite* find_flip(const std::vector<FlipSite>& flips, Subset set);

}  // namespace flipcycles::zonotope
