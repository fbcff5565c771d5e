#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flipcycles/subset.hpp"

namespace flipcycles::combinat {

enum class Color : unsigned char { white, black };

inline Color opposite(Color c) { return c == Color::white ? Color::black : Color::white; }
const char* color_name(Color c);

class DecoratedPermutation {
public:
    DecoratedPermutation() = default;
    // image[i-1] = pi(i). decoration[i-1] must be set exactly on fixed points.
    DecoratedPermutation(std::vector<int> image, std::vector<std::optional<Color>> decoration);
    // Fixed points default to white.
    static DecoratedPermutation undecorated(std::vector<int> image);

    int n() const { return static_cast<int>(image_.size()); }
    int operator()(int i) const { return image_[i - 1]; }
    bool is_fixed(int i) const { return image_[i - 1] == i; }
    Color fixed_color(int i) const;
    bool is_identity() const;
    const std::vector<int>& image() const { return image_; }
    const std::vector<std::optional<Color>>& decoration() const { return decoration_; }

    // "3,4,5,1,2" with fixed points suffixed by w or b: "2,1,3b".
    std::string to_string() const;
    static DecoratedPermutation parse(const std::string& text);

    friend bool operator==(const DecoratedPermutation&, const DecoratedPermutation&) = default;

private:
    std::vector<int> image_;
    std::vector<std::optional<Color>> decoration_;
};

class GrassmannNecklace {
public:
    GrassmannNecklace() = default;
    // Throws ValidationError unless the sets form a necklace.
    explicit GrassmannNecklace(int n, std::vector<Subset> sets);

    int n() const { return n_; }
    int k() const { return sets_.empty() ? 0 : card(sets_[0]); }
    // 1-based, cyclic.
    Subset operator[](int i) const { return sets_[((i - 1) % n_ + n_) % n_]; }
    const std::vector<Subset>& sets() const { return sets_; }
    std::vector<Subset> distinct_sets() const;

    friend bool operator==(const GrassmannNecklace&, const GrassmannNecklace&) = default;

private:
    int n_ = 0;
    std::vector<Subset> sets_;
};

// Returns an empty string when the sets form a necklace, otherwise the reason.
std::string necklace_violation(int n, const std::vector<Subset>& sets);

struct LabelCollection {
    int n = 0;
    int k = 0;
    std::vector<Subset> labels;  // sorted, distinct

    static LabelCollection from(int n, int k, std::vector<Subset> labels);
    bool contains(Subset s) const;
};

enum class Shift { up, down };

DecoratedPermutation cyclic_decorated(int n, int k);
GrassmannNecklace cyclic_necklace(int n, int k);
int helicity(const DecoratedPermutation& p);
GrassmannNecklace necklace_of(const DecoratedPermutation& p);
DecoratedPermutation decorated_of(const GrassmannNecklace& I);

// iota(j): last index cyclically before j with I differing from I_j.
// lambda(j): next index cyclically after j with I differing from I_j.
int previous_distinct(const GrassmannNecklace& I, int j);
int next_distinct(const GrassmannNecklace& I, int j);
GrassmannNecklace necklace_shift(const GrassmannNecklace& I, Shift dir);

bool is_weakly_separated(Subset a, Subset b);
bool is_weakly_separated(const std::vector<Subset>& labels);

// Greedy colex scan over all k-subsets of [n].
LabelCollection extend_to_maximal_ws(const LabelCollection& c);
// Same scan restricted to the given candidates, in the order given.
LabelCollection extend_within(const LabelCollection& c, const std::vector<Subset>& candidates);

// Gale order starting at i: sort both sets along i < i+1 < ... < i-1 and
// compare entrywise.
bool gale_leq(Subset a, Subset b, int i, int n);
// Membership in the positroid of the necklace.
bool in_positroid(const GrassmannNecklace& I, Subset j);
std::vector<Subset> positroid_labels(const GrassmannNecklace& I);

std::vector<DecoratedPermutation> all_decorated_permutations(int n);
std::vector<DecoratedPermutation> all_permutations(int n);

}  // namespace flipcycles::combinat
