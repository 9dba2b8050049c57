//
// Copyright 2026 The dpbox Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef DPBOX_IO_SVG_HPP_
#define DPBOX_IO_SVG_HPP_

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dpbox/boxplot.hpp"

namespace dpbox::io {

/// Canvas and axis of one panel. Boxes are drawn vertically, value on y.
struct RenderSpec {
  double width = 640.0;   // per panel
  double height = 420.0;
  double axis_min = 0.0;  // usually the public bounds (a, b)
  double axis_max = 1.0;
  double box_width = 36.0;
  double margin = 56.0;

  static RenderSpec for_bounds(double a, double b) {
    RenderSpec s;
    s.axis_min = a;
    s.axis_max = b;
    return s;
  }

  void validate() const {
    if (!(width > 0.0) || !(height > 0.0) || !(box_width > 0.0) || !(margin >= 0.0)) {
      throw std::invalid_argument("render: dimensions must be positive");
    }
    if (!(height > 2.0 * margin) || !(width > 2.0 * margin)) {
      throw std::invalid_argument("render: margins leave no plotting area");
    }
    if (!std::isfinite(axis_min) || !std::isfinite(axis_max) || !(axis_min < axis_max)) {
      throw std::invalid_argument("render: degenerate axis range");
    }
  }
};

struct LabeledSummary {
  std::string label;
  BoxplotSummary summary;
};

struct Panel {
  std::string title;
  std::vector<LabeledSummary> boxes;
};

/// Noisy counts are shown rounded half away from zero and floored at 0.
inline std::string display_count(double noisy) {
  const long long r = std::llround(noisy);
  return std::to_string(std::max(0LL, r));
}

namespace detail {

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline std::string xml_escape(const std::string& s) {
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

inline std::string axis_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

inline void render_panel(std::string& out, const Panel& panel, const RenderSpec& spec,
                         double x_offset) {
  if (panel.boxes.empty()) throw std::invalid_argument("render: panel without boxes");
  const double top = spec.margin;
  const double bottom = spec.height - spec.margin;
  const double left = x_offset + spec.margin;
  const double right = x_offset + spec.width - spec.margin / 2.0;
  const double lo = spec.axis_min;
  const double hi = spec.axis_max;
  auto y = [&](double v) {
    const double c = std::clamp(v, lo, hi);
    return top + (hi - c) / (hi - lo) * (bottom - top);
  };

  out += "<g class=\"panel\">\n";
  if (!panel.title.empty()) {
    out += "<text class=\"title\" x=\"" + fmt((left + right) / 2.0) + "\" y=\"" +
           fmt(top / 2.0) + "\" text-anchor=\"middle\">" + xml_escape(panel.title) +
           "</text>\n";
  }
  out += "<path class=\"axis\" d=\"M" + fmt(left) + " " + fmt(top) + " V" + fmt(bottom) +
         " H" + fmt(right) + "\" fill=\"none\" stroke=\"#444\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double v = lo + (hi - lo) * t / 4.0;
    out += "<text class=\"tick\" x=\"" + fmt(left - 6.0) + "\" y=\"" + fmt(y(v) + 4.0) +
           "\" text-anchor=\"end\" font-size=\"11\">" + axis_label(v) + "</text>\n";
  }

  const double slot = (right - left) / static_cast<double>(panel.boxes.size());
  const double half = std::min(spec.box_width, 0.8 * slot) / 2.0;
  for (std::size_t i = 0; i < panel.boxes.size(); ++i) {
    const BoxplotSummary& s = panel.boxes[i].summary;
    const double cx = left + slot * (static_cast<double>(i) + 0.5);
    // Whiskers never cross into the box on screen.
    const double lw = std::min(s.lower_whisker, s.q1);
    const double uw = std::max(s.upper_whisker, s.q3);
    const double y_q1 = y(s.q1);
    const double y_q3 = y(s.q3);
    const double y_lw = y(lw);
    const double y_uw = y(uw);
    out += "<g class=\"box\">\n";
    out += "<rect x=\"" + fmt(cx - half) + "\" y=\"" + fmt(y_q3) + "\" width=\"" +
           fmt(2.0 * half) + "\" height=\"" + fmt(y_q1 - y_q3) +
           "\" fill=\"#cfe0f3\" stroke=\"#1f4e79\"/>\n";
    auto hline = [&](double yy, double w) {
      out += "<line class=\"marker\" x1=\"" + fmt(cx - w) + "\" y1=\"" + fmt(yy) +
             "\" x2=\"" + fmt(cx + w) + "\" y2=\"" + fmt(yy) +
             "\" stroke=\"#1f4e79\" stroke-width=\"2\"/>\n";
    };
    auto vline = [&](double y1, double y2) {
      out += "<line class=\"whisker\" x1=\"" + fmt(cx) + "\" y1=\"" + fmt(y1) + "\" x2=\"" +
             fmt(cx) + "\" y2=\"" + fmt(y2) + "\" stroke=\"#1f4e79\"/>\n";
    };
    hline(y(s.median), half);
    hline(y_lw, half / 2.0);
    hline(y_uw, half / 2.0);
    vline(y_q1, y_lw);
    vline(y_uw, y_q3);
    out += "<text class=\"count\" x=\"" + fmt(cx) + "\" y=\"" + fmt(y_uw - 6.0) +
           "\" text-anchor=\"middle\" font-size=\"11\">" + display_count(s.o_upper) +
           "</text>\n";
    out += "<text class=\"count\" x=\"" + fmt(cx) + "\" y=\"" + fmt(y_lw + 14.0) +
           "\" text-anchor=\"middle\" font-size=\"11\">" + display_count(s.o_lower) +
           "</text>\n";
    out += "<text class=\"label\" x=\"" + fmt(cx) + "\" y=\"" + fmt(bottom + 18.0) +
           "\" text-anchor=\"middle\" font-size=\"12\">" +
           xml_escape(panel.boxes[i].label) + "</text>\n";
    out += "</g>\n";
  }
  out += "</g>\n";
}

}  // namespace detail

/// Panels side by side on one shared axis.
inline std::string render_panels(std::span<const Panel> panels, const RenderSpec& spec) {
  spec.validate();
  if (panels.empty()) throw std::invalid_argument("render: nothing to draw");
  const double total_width = spec.width * static_cast<double>(panels.size());
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         detail::fmt(total_width) + "\" height=\"" + detail::fmt(spec.height) +
         "\" viewBox=\"0 0 " + detail::fmt(total_width) + " " + detail::fmt(spec.height) +
         "\" font-family=\"sans-serif\">\n";
  for (std::size_t p = 0; p < panels.size(); ++p) {
    detail::render_panel(out, panels[p], spec, spec.width * static_cast<double>(p));
  }
  out += "</svg>\n";
  return out;
}

inline std::string render_svg(std::span<const LabeledSummary> summaries,
                              const RenderSpec& spec) {
  if (summaries.empty()) throw std::invalid_argument("render: no summaries");
  const Panel panel{"", {summaries.begin(), summaries.end()}};
  return render_panels(std::span<const Panel>(&panel, 1), spec);
}

}  // namespace dpbox::io

#endif  // DPBOX_IO_SVG_HPP_
