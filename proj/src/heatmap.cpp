#include "commcent/heatmap.hpp"

#include <fmt/format.h>

namespace commcent {

namespace {

constexpr int kCell = 64;
constexpr int kLeft = 72;
constexpr int kTop = 72;

std::string escape_xml(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// "β_CHB" -> "β<tspan ...>CHB</tspan>"
std::string symbol_markup(Measure m) {
  const auto symbol = measure_symbol(m);
  const auto split = symbol.find('_');
  return fmt::format("{}<tspan baseline-shift=\"sub\" font-size=\"70%\">{}</tspan>",
                     symbol.substr(0, split), symbol.substr(split + 1));
}

std::string_view band_name(Band b) {
  switch (b) {
    case Band::low: return "low";
    case Band::medium: return "medium";
    case Band::high: return "high";
  }
  return "low";
}

}  // namespace

std::string heatmap_svg(const ComparisonMatrix& matrix, std::string_view title,
                        const ColorScale& scale) {
  const int width = kLeft + 5 * kCell + 16;
  const int height = kTop + 5 * kCell + 16;
  std::string svg = fmt::format(
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" "
      "viewBox=\"0 0 {0} {1}\" font-family=\"sans-serif\" font-size=\"13\">\n"
      "<defs><pattern id=\"undefined\" width=\"8\" height=\"8\" patternUnits=\"userSpaceOnUse\" "
      "patternTransform=\"rotate(45)\"><rect width=\"8\" height=\"8\" fill=\"#eeeeee\"/>"
      "<line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"8\" stroke=\"#999999\" stroke-width=\"3\"/>"
      "</pattern></defs>\n"
      "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n"
      "<text x=\"{2}\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">{3}</text>\n",
      width, height, kLeft + 5 * kCell / 2, escape_xml(title));

  for (std::size_t c = 0; c < 5; ++c)
    svg += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n",
                       kLeft + static_cast<int>(c) * kCell + kCell / 2, kTop - 12,
                       symbol_markup(kCommunityMeasures[c]));
  for (std::size_t r = 0; r < 5; ++r)
    svg += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{}</text>\n", kLeft - 10,
                       kTop + static_cast<int>(r) * kCell + kCell / 2 + 5,
                       symbol_markup(kClassicalMeasures[r]));

  for (std::size_t r = 0; r < 5; ++r) {
    for (std::size_t c = 0; c < 5; ++c) {
      const int x = kLeft + static_cast<int>(c) * kCell;
      const int y = kTop + static_cast<int>(r) * kCell;
      const auto row = measure_id(kClassicalMeasures[r]);
      const auto col = measure_id(kCommunityMeasures[c]);
      const auto& value = matrix.values[r][c];
      if (!value) {
        svg += fmt::format(
            "<rect class=\"cell\" data-row=\"{}\" data-col=\"{}\" data-band=\"undefined\" "
            "x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"url(#undefined)\" "
            "stroke=\"#ffffff\"/>\n",
            row, col, x, y, kCell, kCell);
        continue;
      }
      const Band band = scale.band_of(*value);
      const auto b = static_cast<std::size_t>(band);
      svg += fmt::format(
          "<rect class=\"cell\" data-row=\"{}\" data-col=\"{}\" data-band=\"{}\" x=\"{}\" "
          "y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\" stroke=\"#ffffff\"/>\n"
          "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" fill=\"{}\">{:.2f}</text>\n",
          row, col, band_name(band), x, y, kCell, kCell, scale.colors[b], x + kCell / 2,
          y + kCell / 2 + 5, scale.text_colors[b], *value);
    }
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace commcent
