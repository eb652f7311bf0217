#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vqnn/summary.hpp"

namespace vqnn {

// Minimal self-contained SVG emitters for the experiment reports. Output is
// plain XML with no external references and deterministic formatting, so
// re-rendering the same data reproduces the file byte for byte.

struct BoxSeries {
  std::string name;
  std::vector<std::pair<std::string, BoxStats>> boxes;  // label -> stats
};

struct BarSeries {
  std::string name;
  std::vector<std::pair<std::string, double>> bars;  // label -> value
};

std::string render_box_plot(std::span<const BoxSeries> series,
                            const std::string& title,
                            const std::string& x_label,
                            const std::string& y_label);

std::string render_bar_chart(std::span<const BarSeries> series,
                             const std::string& title,
                             const std::string& x_label,
                             const std::string& y_label);

}  // namespace vqnn
