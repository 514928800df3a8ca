#pragma once

#include <optional>
#include <string>
#include <vector>

#include "plumbing/graph.hpp"

namespace plumbing {

// Per-vertex colour strings; automorphisms and isomorphisms must preserve them.
using Colors = std::vector<std::string>;

Colors weight_colors(const WeightedDualGraph& g);
// Weight plus orbit label; only meaningful inside one graph.
Colors weight_block_colors(const WeightedDualGraph& g);

// Canonical string of a coloured forest; equal strings iff isomorphic.
std::string forest_code(const WeightedDualGraph& g, const Colors& colors);

// Orbit class per vertex under colour-preserving automorphisms of a forest.
// Classes are numbered by first appearance in index order.
std::vector<int> forest_orbits(const WeightedDualGraph& g, const Colors& colors);

// Map from vertices of g to vertices of h, or none when not isomorphic.
std::optional<std::vector<int>> forest_isomorphism(const WeightedDualGraph& g, const Colors& cg,
                                                   const WeightedDualGraph& h, const Colors& ch);

// Backtracking search; works on any graph, intended for small ones.
std::vector<int> automorphism_orbits_bruteforce(const WeightedDualGraph& g, const Colors& colors);

// Relabel orbits with the orbit classes of the full weighted automorphism group.
void assign_canonical_orbits(WeightedDualGraph& g);

} // namespace plumbing
