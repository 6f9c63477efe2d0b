#pragma once

// Binary portable-pixmap dumps: a blue-white-red heatmap for gridded 2D
// fields, a polyline plot for 1D fields. No image library required.

#include <string>
#include <vector>

#include "vekua/dense.hpp"

namespace vekua {

// values in row-major grid order (resolution x resolution); min-max
// normalized onto a fixed 256-entry blue-white-red palette.
void render_heatmap(const std::string& path, std::size_t resolution,
                    const std::vector<double>& values);

// xs ascending; drawn as a black polyline on a 512 x 256 white canvas.
void render_polyline(const std::string& path, const std::vector<double>& xs,
                     const std::vector<double>& values);

} // namespace vekua
