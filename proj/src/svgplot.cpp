#include "vqnn/svgplot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace vqnn {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kMarginLeft = 64.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 52.0;

const char* kPalette[] = {"#4c72b0", "#c44e52", "#55a868", "#8172b2",
                          "#ccb974", "#64b5cd"};

std::string fmt(double v, const char* spec = "%.2f") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
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

struct YScale {
  double lo = 0.0, hi = 1.0;

  double to_pixel(double v) const {
    const double frac = (v - lo) / (hi - lo);
    return kHeight - kMarginBottom -
           frac * (kHeight - kMarginTop - kMarginBottom);
  }
};

// Tick spacing rounded to 1/2/5 * 10^k.
std::vector<double> nice_ticks(double lo, double hi, int target = 6) {
  const double span = hi - lo;
  if (span <= 0.0) return {lo};
  double step = std::pow(10.0, std::floor(std::log10(span / target)));
  for (double mult : {1.0, 2.0, 5.0, 10.0}) {
    if (span / (step * mult) <= target) {
      step *= mult;
      break;
    }
  }
  std::vector<double> ticks;
  for (double v = std::ceil(lo / step) * step; v <= hi + 1e-12 * span;
       v += step)
    ticks.push_back(std::abs(v) < 1e-12 * span ? 0.0 : v);
  return ticks;
}

void open_svg(std::string& svg) {
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         fmt(kWidth, "%.0f") + "\" height=\"" + fmt(kHeight, "%.0f") +
         "\" viewBox=\"0 0 " + fmt(kWidth, "%.0f") + " " +
         fmt(kHeight, "%.0f") + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

void draw_text(std::string& svg, double x, double y, const std::string& text,
               const std::string& anchor, int size,
               const std::string& extra = "") {
  svg += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(y) +
         "\" font-family=\"sans-serif\" font-size=\"" + std::to_string(size) +
         "\" text-anchor=\"" + anchor + "\"" + extra + ">" +
         escape_xml(text) + "</text>\n";
}

void draw_line(std::string& svg, double x1, double y1, double x2, double y2,
               const std::string& stroke, const std::string& extra = "") {
  svg += "<line x1=\"" + fmt(x1) + "\" y1=\"" + fmt(y1) + "\" x2=\"" +
         fmt(x2) + "\" y2=\"" + fmt(y2) + "\" stroke=\"" + stroke + "\"" +
         extra + "/>\n";
}

void draw_frame(std::string& svg, const YScale& axis, const std::string& title,
                const std::string& x_label, const std::string& y_label) {
  draw_text(svg, kWidth / 2, 24, title, "middle", 14);
  draw_text(svg, kWidth / 2, kHeight - 12, x_label, "middle", 12);
  draw_text(svg, 16, kHeight / 2, y_label, "middle", 12,
            " transform=\"rotate(-90 16 " + fmt(kHeight / 2) + ")\"");
  for (double tick : nice_ticks(axis.lo, axis.hi)) {
    const double y = axis.to_pixel(tick);
    draw_line(svg, kMarginLeft, y, kWidth - kMarginRight, y, "#dddddd");
    draw_text(svg, kMarginLeft - 6, y + 4, fmt(tick, "%.4g"), "end", 10);
  }
  draw_line(svg, kMarginLeft, kMarginTop, kMarginLeft, kHeight - kMarginBottom,
            "black");
  draw_line(svg, kMarginLeft, kHeight - kMarginBottom, kWidth - kMarginRight,
            kHeight - kMarginBottom, "black");
}

void draw_legend(std::string& svg, std::span<const std::string> names) {
  if (names.size() < 2) return;
  double x = kWidth - kMarginRight - 130.0;
  double y = kMarginTop + 6.0;
  for (std::size_t s = 0; s < names.size(); ++s) {
    svg += "<rect x=\"" + fmt(x) + "\" y=\"" + fmt(y) +
           "\" width=\"12\" height=\"12\" fill=\"" +
           kPalette[s % std::size(kPalette)] + "\"/>\n";
    draw_text(svg, x + 18, y + 10, names[s], "start", 11);
    y += 18.0;
  }
}

}  // namespace

std::string render_box_plot(std::span<const BoxSeries> series,
                            const std::string& title,
                            const std::string& x_label,
                            const std::string& y_label) {
  std::size_t num_labels = 0;
  double lo = 0.0, hi = 1.0;
  bool first = true;
  for (const BoxSeries& s : series) {
    num_labels = std::max(num_labels, s.boxes.size());
    for (const auto& [label, b] : s.boxes) {
      if (b.count == 0) continue;
      double b_lo = b.whisker_lo, b_hi = b.whisker_hi;
      for (double o : b.outliers) {
        b_lo = std::min(b_lo, o);
        b_hi = std::max(b_hi, o);
      }
      lo = first ? b_lo : std::min(lo, b_lo);
      hi = first ? b_hi : std::max(hi, b_hi);
      first = false;
    }
  }
  if (first) {
    lo = 0.0;
    hi = 1.0;
  }
  const double pad = (hi - lo) == 0.0 ? 1.0 : 0.06 * (hi - lo);
  YScale axis{lo - pad, hi + pad};

  std::string svg;
  open_svg(svg);
  draw_frame(svg, axis, title, x_label, y_label);

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double slot_w = plot_w / std::max<std::size_t>(num_labels, 1);
  const double box_w =
      std::min(28.0, slot_w / std::max<std::size_t>(series.size() + 1, 2));

  for (std::size_t s = 0; s < series.size(); ++s) {
    const std::string color = kPalette[s % std::size(kPalette)];
    for (std::size_t i = 0; i < series[s].boxes.size(); ++i) {
      const auto& [label, b] = series[s].boxes[i];
      const double center =
          kMarginLeft + slot_w * (i + 0.5) +
          (static_cast<double>(s) - (series.size() - 1) / 2.0) *
              (box_w + 4.0);
      if (s == 0)
        draw_text(svg, kMarginLeft + slot_w * (i + 0.5),
                  kHeight - kMarginBottom + 18, label, "middle", 11);
      if (b.count == 0) continue;
      const double yq1 = axis.to_pixel(b.q1);
      const double yq3 = axis.to_pixel(b.q3);
      const double ymed = axis.to_pixel(b.median);
      const double ylo = axis.to_pixel(b.whisker_lo);
      const double yhi = axis.to_pixel(b.whisker_hi);
      draw_line(svg, center, ylo, center, yq1, "black");
      draw_line(svg, center, yq3, center, yhi, "black");
      draw_line(svg, center - box_w / 4, ylo, center + box_w / 4, ylo,
                "black");
      draw_line(svg, center - box_w / 4, yhi, center + box_w / 4, yhi,
                "black");
      svg += "<rect x=\"" + fmt(center - box_w / 2) + "\" y=\"" + fmt(yq3) +
             "\" width=\"" + fmt(box_w) + "\" height=\"" + fmt(yq1 - yq3) +
             "\" fill=\"" + color + "\" fill-opacity=\"0.55\" "
             "stroke=\"black\"/>\n";
      draw_line(svg, center - box_w / 2, ymed, center + box_w / 2, ymed,
                "black", " stroke-width=\"2\"");
      for (double o : b.outliers) {
        svg += "<circle cx=\"" + fmt(center) + "\" cy=\"" +
               fmt(axis.to_pixel(o)) + "\" r=\"2.5\" fill=\"none\" stroke=\"" +
               color + "\"/>\n";
      }
    }
  }
  std::vector<std::string> names;
  for (const BoxSeries& s : series) names.push_back(s.name);
  draw_legend(svg, names);
  svg += "</svg>\n";
  return svg;
}

std::string render_bar_chart(std::span<const BarSeries> series,
                             const std::string& title,
                             const std::string& x_label,
                             const std::string& y_label) {
  std::size_t num_labels = 0;
  double hi = 0.0;
  for (const BarSeries& s : series) {
    num_labels = std::max(num_labels, s.bars.size());
    for (const auto& [label, v] : s.bars) hi = std::max(hi, v);
  }
  if (hi == 0.0) hi = 1.0;
  YScale axis{0.0, hi * 1.08};

  std::string svg;
  open_svg(svg);
  draw_frame(svg, axis, title, x_label, y_label);

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double slot_w = plot_w / std::max<std::size_t>(num_labels, 1);
  const double bar_w =
      std::min(30.0, slot_w / std::max<std::size_t>(series.size() + 1, 2));
  const double base_y = axis.to_pixel(0.0);

  for (std::size_t s = 0; s < series.size(); ++s) {
    const std::string color = kPalette[s % std::size(kPalette)];
    for (std::size_t i = 0; i < series[s].bars.size(); ++i) {
      const auto& [label, v] = series[s].bars[i];
      const double center =
          kMarginLeft + slot_w * (i + 0.5) +
          (static_cast<double>(s) - (series.size() - 1) / 2.0) *
              (bar_w + 4.0);
      if (s == 0)
        draw_text(svg, kMarginLeft + slot_w * (i + 0.5),
                  kHeight - kMarginBottom + 18, label, "middle", 11);
      const double top = axis.to_pixel(v);
      svg += "<rect x=\"" + fmt(center - bar_w / 2) + "\" y=\"" + fmt(top) +
             "\" width=\"" + fmt(bar_w) + "\" height=\"" +
             fmt(base_y - top) + "\" fill=\"" + color + "\"/>\n";
      draw_text(svg, center, top - 4, fmt(v, "%.3g"), "middle", 10);
    }
  }
  std::vector<std::string> names;
  for (const BarSeries& s : series) names.push_back(s.name);
  draw_legend(svg, names);
  svg += "</svg>\n";
  return svg;
}

}  // namespace vqnn
