/*
 * Copyright 2026 The simplex-explain Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "simplex/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace simplex::svg {

namespace {

constexpr const char* kPalette[] = {"#1f5fbf", "#e07b00", "#2e7d32", "#8e24aa",
                                    "#6d4c41", "#c62828", "#00838f"};
constexpr double kRowHeight = 18.0;

std::string num(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.2f", value);
  return buffer;
}

std::string fmt_value(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.4g", value);
  return buffer;
}

}  // namespace

std::string escape(const std::string& text) {
  std::string out;
  for (char ch : text) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string document(double width, double height, const std::string& body) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) +
         "\" height=\"" + num(height) + "\" viewBox=\"0 0 " + num(width) + " " +
         num(height) + "\" font-family=\"sans-serif\" font-size=\"11\">\n" +
         "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n" + body + "</svg>\n";
}

double bar_chart_height(std::size_t bars) {
  return 30.0 + kRowHeight * static_cast<double>(bars) + 10.0;
}

std::string bar_chart(const std::string& title, const std::vector<Bar>& bars,
                      double x, double y, double width) {
  const double label_width = 110.0;
  const double value_width = 60.0;
  const double plot_width = width - label_width - value_width;
  double extent = 0.0;
  bool any_negative = false;
  for (const Bar& bar : bars) {
    extent = std::max(extent, std::abs(bar.value));
    any_negative = any_negative || bar.value < 0;
  }
  if (extent == 0.0) extent = 1.0;
  const double zero = x + label_width + (any_negative ? plot_width / 2 : 0.0);
  const double scale = (any_negative ? plot_width / 2 : plot_width) / extent;

  std::string out = "<g>\n<text x=\"" + num(x) + "\" y=\"" + num(y + 16) +
                    "\" font-weight=\"bold\">" + escape(title) + "</text>\n";
  double row_y = y + 30.0;
  for (const Bar& bar : bars) {
    const double length = std::abs(bar.value) * scale;
    const double left = bar.value >= 0 ? zero : zero - length;
    out += "<text x=\"" + num(x) + "\" y=\"" + num(row_y + 12) + "\">" +
           escape(bar.label) + "</text>";
    out += "<rect x=\"" + num(left) + "\" y=\"" + num(row_y + 2) + "\" width=\"" +
           num(length) + "\" height=\"" + num(kRowHeight - 4) + "\" fill=\"" +
           (bar.value >= 0 ? kPositive : kNegative) + "\"/>";
    out += "<text x=\"" + num(x + width - value_width + 4) + "\" y=\"" +
           num(row_y + 12) + "\">" + fmt_value(bar.value) + "</text>\n";
    row_y += kRowHeight;
  }
  out += "<line x1=\"" + num(zero) + "\" y1=\"" + num(y + 28) + "\" x2=\"" + num(zero) +
         "\" y2=\"" + num(row_y) + "\" stroke=\"#444\"/>\n</g>\n";
  return out;
}

std::string line_chart(const std::string& title, const std::string& x_label,
                       const std::string& y_label, const std::vector<Series>& series) {
  const double width = 640, height = 400;
  const double left = 60, right = 160, top = 40, bottom = 50;
  double x_min = INFINITY, x_max = -INFINITY, y_min = INFINITY, y_max = -INFINITY;
  for (const Series& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      const double spread = i < s.spread.size() ? s.spread[i] : 0.0;
      x_min = std::min(x_min, s.x[i]);
      x_max = std::max(x_max, s.x[i]);
      y_min = std::min(y_min, s.y[i] - spread);
      y_max = std::max(y_max, s.y[i] + spread);
    }
  }
  if (!std::isfinite(x_min)) x_min = 0, x_max = 1, y_min = 0, y_max = 1;
  if (x_max == x_min) x_max = x_min + 1;
  if (y_max == y_min) y_max = y_min + 1;
  const double plot_w = width - left - right, plot_h = height - top - bottom;
  auto px = [&](double v) { return left + (v - x_min) / (x_max - x_min) * plot_w; };
  auto py = [&](double v) { return top + (y_max - v) / (y_max - y_min) * plot_h; };

  std::string body = "<text x=\"" + num(left) + "\" y=\"24\" font-weight=\"bold\">" +
                     escape(title) + "</text>\n";
  body += "<rect x=\"" + num(left) + "\" y=\"" + num(top) + "\" width=\"" + num(plot_w) +
          "\" height=\"" + num(plot_h) + "\" fill=\"none\" stroke=\"#444\"/>\n";
  body += "<text x=\"" + num(left + plot_w / 2) + "\" y=\"" + num(height - 12) +
          "\" text-anchor=\"middle\">" + escape(x_label) + "</text>\n";
  body += "<text x=\"14\" y=\"" + num(top + plot_h / 2) + "\" transform=\"rotate(-90 14 " +
          num(top + plot_h / 2) + ")\" text-anchor=\"middle\">" + escape(y_label) +
          "</text>\n";
  for (int tick = 0; tick <= 4; ++tick) {
    const double yv = y_min + (y_max - y_min) * tick / 4.0;
    const double xv = x_min + (x_max - x_min) * tick / 4.0;
    body += "<text x=\"" + num(left - 6) + "\" y=\"" + num(py(yv) + 4) +
            "\" text-anchor=\"end\">" + fmt_value(yv) + "</text>";
    body += "<text x=\"" + num(px(xv)) + "\" y=\"" + num(top + plot_h + 16) +
            "\" text-anchor=\"middle\">" + fmt_value(xv) + "</text>\n";
  }
  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* colour = kPalette[s % std::size(kPalette)];
    const Series& line = series[s];
    if (!line.spread.empty()) {
      std::string band;
      for (std::size_t i = 0; i < line.x.size(); ++i) {
        band += num(px(line.x[i])) + "," + num(py(line.y[i] + line.spread[i])) + " ";
      }
      for (std::size_t i = line.x.size(); i-- > 0;) {
        band += num(px(line.x[i])) + "," + num(py(line.y[i] - line.spread[i])) + " ";
      }
      body += "<polygon points=\"" + band + "\" fill=\"" + colour +
              "\" fill-opacity=\"0.15\" stroke=\"none\"/>\n";
    }
    std::string points;
    for (std::size_t i = 0; i < line.x.size(); ++i) {
      points += num(px(line.x[i])) + "," + num(py(line.y[i])) + " ";
    }
    body += "<polyline points=\"" + points + "\" fill=\"none\" stroke=\"" + colour +
            "\" stroke-width=\"1.5\"/>\n";
    const double legend_y = top + 14 + 16.0 * static_cast<double>(s);
    body += "<line x1=\"" + num(width - right + 10) + "\" y1=\"" + num(legend_y - 4) +
            "\" x2=\"" + num(width - right + 30) + "\" y2=\"" + num(legend_y - 4) +
            "\" stroke=\"" + colour + "\" stroke-width=\"2\"/><text x=\"" +
            num(width - right + 34) + "\" y=\"" + num(legend_y) + "\">" +
            escape(line.name) + "</text>\n";
  }
  return document(width, height, body);
}

std::string box_plot(const std::string& title, const std::vector<BoxGroup>& groups) {
  const double width = std::max(320.0, 90.0 * static_cast<double>(groups.size()) + 80.0);
  const double height = 360, left = 60, top = 40, bottom = 60;
  double lo = INFINITY, hi = -INFINITY;
  for (const BoxGroup& g : groups) {
    for (double v : g.values) lo = std::min(lo, v), hi = std::max(hi, v);
  }
  if (!std::isfinite(lo)) lo = 0, hi = 1;
  if (hi == lo) hi = lo + 1;
  const double plot_h = height - top - bottom;
  auto py = [&](double v) { return top + (hi - v) / (hi - lo) * plot_h; };
  auto quantile = [](std::vector<double> v, double q) {
    std::sort(v.begin(), v.end());
    const double pos = q * static_cast<double>(v.size() - 1);
    const auto below = static_cast<std::size_t>(std::floor(pos));
    const auto above = std::min(below + 1, v.size() - 1);
    return v[below] + (pos - static_cast<double>(below)) * (v[above] - v[below]);
  };

  std::string body = "<text x=\"" + num(left) + "\" y=\"24\" font-weight=\"bold\">" +
                     escape(title) + "</text>\n";
  for (int tick = 0; tick <= 4; ++tick) {
    const double v = lo + (hi - lo) * tick / 4.0;
    body += "<text x=\"" + num(left - 6) + "\" y=\"" + num(py(v) + 4) +
            "\" text-anchor=\"end\">" + fmt_value(v) + "</text>\n";
  }
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const double cx = left + 50 + 90.0 * static_cast<double>(g);
    const char* colour = kPalette[g % std::size(kPalette)];
    body += "<text x=\"" + num(cx) + "\" y=\"" + num(height - 30) +
            "\" text-anchor=\"middle\">" + escape(groups[g].label) + "</text>\n";
    if (groups[g].values.empty()) continue;
    const auto& v = groups[g].values;
    const double q0 = quantile(v, 0), q1 = quantile(v, 0.25), q2 = quantile(v, 0.5),
                 q3 = quantile(v, 0.75), q4 = quantile(v, 1);
    body += "<line x1=\"" + num(cx) + "\" y1=\"" + num(py(q4)) + "\" x2=\"" + num(cx) +
            "\" y2=\"" + num(py(q0)) + "\" stroke=\"#444\"/>";
    body += "<rect x=\"" + num(cx - 20) + "\" y=\"" + num(py(q3)) +
            "\" width=\"40\" height=\"" + num(std::max(py(q1) - py(q3), 0.5)) +
            "\" fill=\"" + colour + "\" fill-opacity=\"0.5\" stroke=\"#444\"/>";
    body += "<line x1=\"" + num(cx - 20) + "\" y1=\"" + num(py(q2)) + "\" x2=\"" +
            num(cx + 20) + "\" y2=\"" + num(py(q2)) + "\" stroke=\"black\"/>\n";
  }
  return document(width, height, body);
}

}  // namespace simplex::svg
