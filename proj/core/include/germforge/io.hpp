#pragma once

#include <string>

#include "germforge/germ.hpp"
#include "germforge/pipeline.hpp"

namespace germforge {

// Germ file: {"N": n, "divisor": [a, b, c], "coords": [X, Y, Z]} where each of
// X, Y, Z lists the coefficients of one component of f - id as
// [[i, j, k], "scalar"] pairs. Output is sorted in graded order.
std::string germ_json(const Germ& f);
Germ germ_from_json(const std::string& text);

// Instance file: {"N": n, "P": T, "Q": T, "R": T} with T a list of
// [[i, j, k], "scalar"] pairs; missing tables are zero.
std::string instance_json(const ExampleInstance& inst);
ExampleInstance instance_from_json(const std::string& text);

// True when the text parses as an object with a "coords" key.
bool is_germ_json(const std::string& text);

}  // namespace germforge
