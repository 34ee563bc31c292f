#pragma once

#include <string>

#include "plumbline/tree.hpp"

namespace plumbline {

/// Draw the associated link of a tree: vertices laid out along a path, one
/// Hopf clasp per vertex, one closed curve per link component. Deterministic
/// output; the PD code remains the authoritative encoding.
std::string associated_link_svg(const LBTree& t);

}  // namespace plumbline
