#include <doctest.h>

#include <regex>

#include "commcent/heatmap.hpp"

using namespace commcent;

namespace {

std::string cell_band(const std::string& svg, std::string_view row, std::string_view col) {
  const std::regex re("data-row=\"" + std::string(row) + "\" data-col=\"" + std::string(col) +
                      "\" data-band=\"([a-z]+)\"");
  std::smatch m;
  if (!std::regex_search(svg, m, re)) return {};
  return m[1];
}

}  // namespace

TEST_CASE("band boundaries") {
  const ColorScale scale;
  CHECK(scale.band_of(-0.17) == Band::low);
  CHECK(scale.band_of(0.2999) == Band::low);
  CHECK(scale.band_of(0.3) == Band::medium);
  CHECK(scale.band_of(0.5999) == Band::medium);
  CHECK(scale.band_of(0.6) == Band::high);
  CHECK(scale.band_of(1.0) == Band::high);
}

TEST_CASE("svg marks every cell with its band") {
  ComparisonMatrix m;
  for (std::size_t r = 0; r < 5; ++r)
    for (std::size_t c = 0; c < 5; ++c) m.values[r][c] = 0.1 * static_cast<double>(r + c);
  m.values[0][0] = -0.17;
  m.values[1][2] = 0.3;
  m.values[4][4] = 1.0;
  m.values[2][4].reset();
  const auto svg = heatmap_svg(m, "net <a&b>");

  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("net &lt;a&amp;b&gt;") != std::string::npos);
  CHECK(cell_band(svg, "degree", "bridging") == "low");
  CHECK(cell_band(svg, "betweenness", "pc") == "medium");
  CHECK(cell_band(svg, "pagerank", "nnc") == "high");
  CHECK(cell_band(svg, "closeness", "nnc") == "undefined");
  CHECK(svg.find("fill=\"url(#undefined)\"") != std::string::npos);
  CHECK(svg.find(">-0.17<") != std::string::npos);
  CHECK(svg.find(">1.00<") != std::string::npos);

  std::size_t cells = 0;
  for (auto pos = svg.find("class=\"cell\""); pos != std::string::npos; pos = svg.find("class=\"cell\"", pos + 1))
    ++cells;
  CHECK(cells == 25);
}

TEST_CASE("axis labels use symbols with subscripts") {
  const auto svg = heatmap_svg(ComparisonMatrix{}, "t");
  CHECK(svg.find("β<tspan baseline-shift=\"sub\" font-size=\"70%\">CHB</tspan>") != std::string::npos);
  CHECK(svg.find("α<tspan baseline-shift=\"sub\" font-size=\"70%\">d</tspan>") != std::string::npos);
}

TEST_CASE("custom scale") {
  ColorScale scale;
  scale.colors = {"#000001", "#000002", "#000003"};
  ComparisonMatrix m;
  m.values[0][0] = 0.45;
  const auto svg = heatmap_svg(m, "t", scale);
  CHECK(svg.find("fill=\"#000002\"") != std::string::npos);
}
