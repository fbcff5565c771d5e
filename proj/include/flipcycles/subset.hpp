#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace flipcycles {

// Subsets of [n] as bit masks; element i is bit i-1. Numeric order of masks
// coincides with colex order, which is used as the canonical order throughout.
using Subset = std::uint32_t;

constexpr int kMaxGround = 24;

inline int card(Subset s) { return std::popcount(s); }
inline bool has(Subset s, int i) { return (s >> (i - 1)) & 1u; }
inline Subset bit(int i) { return Subset{1} << (i - 1); }
inline Subset full_set(int n) { return n >= 32 ? ~Subset{0} : (Subset{1} << n) - 1; }
inline int min_elem(Subset s) { return std::countr_zero(s) + 1; }
inline int max_elem(Subset s) { return 32 - std::countl_zero(s); }

std::vector<int> elements(Subset s);
Subset from_elements(const std::vector<int>& xs);

// All k-subsets of [n] in colex order.
std::vector<Subset> k_subsets(int n, int k);

// Rank of s among the |s|-subsets of its ground set in colex order.
std::uint64_t colex_rank(Subset s);

std::uint64_t binomial(int n, int k);

// "{1,3,4}"
std::string to_string(Subset s);
// "134" when every element is a single digit, otherwise the braced form.
std::string compact(Subset s);

}  // namespace flipcycles
