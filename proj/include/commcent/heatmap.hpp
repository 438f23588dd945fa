#pragma once

#include <array>
#include <string>
#include <string_view>

#include "commcent/ranking.hpp"

namespace commcent {

enum class Band { low, medium, high };

/// Three-band color scale: [.., low_limit) low, [low_limit, high_limit)
/// medium, [high_limit, ..] high.
struct ColorScale {
  double low_limit = 0.3;
  double high_limit = 0.6;
  std::array<std::string, 3> colors{"#2c0b4f", "#c3288d", "#f8c3dc"};
  std::array<std::string, 3> text_colors{"#ffffff", "#ffffff", "#222222"};

  Band band_of(double value) const noexcept {
    if (value < low_limit) return Band::low;
    if (value < high_limit) return Band::medium;
    return Band::high;
  }
};

/// Standalone SVG with a 5x5 grid: classical measures down the side,
/// community-aware measures across the top, each cell filled by band and
/// labelled with its value. Undefined cells are hatched and left blank.
std::string heatmap_svg(const ComparisonMatrix& matrix, std::string_view title,
                        const ColorScale& scale = {});

}  // namespace commcent
