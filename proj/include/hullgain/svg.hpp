#pragma once

#include <string>

#include "hullgain/io.hpp"

namespace hullgain::svg {

/// Renders one frame: the map, the graph, the hull with label-colored
/// nodes and per-node gain discs (radius proportional to volumetric gain).
std::string render_frame(const io::FrameSnapshot& frame, double resolution);

}  // namespace hullgain::svg
