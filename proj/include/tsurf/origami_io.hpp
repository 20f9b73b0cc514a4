#pragma once

#include "tsurf/origami.hpp"

#include <string>
#include <string_view>

namespace tsurf {

// Text format:
//   n=<int> unit=<p/q>
//   h=<cycles>
//   v=<cycles>
//   marks=<square>[:<label>],...     (optional; marks the bottom-left vertex of each listed square)
std::string to_text(const Origami& o);
Origami parse_origami(std::string_view text);
Origami read_origami_file(const std::string& path);
void write_origami_file(const Origami& o, const std::string& path);

}  // namespace tsurf
