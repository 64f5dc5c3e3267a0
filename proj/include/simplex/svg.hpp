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

#ifndef SIMPLEX_SVG_HPP_
#define SIMPLEX_SVG_HPP_

#include <string>
#include <vector>

namespace simplex::svg {

inline constexpr const char* kPositive = "#1f5fbf";  // blue
inline constexpr const char* kNegative = "#c62828";  // red

struct Bar {
  std::string label;
  double value = 0.0;
};

// Horizontal bar chart; positive bars blue, negative bars red.
std::string bar_chart(const std::string& title, const std::vector<Bar>& bars,
                      double x = 0, double y = 0, double width = 480);

double bar_chart_height(std::size_t bars);

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> spread;  // optional +- band
};

std::string line_chart(const std::string& title, const std::string& x_label,
                       const std::string& y_label, const std::vector<Series>& series);

struct BoxGroup {
  std::string label;
  std::vector<double> values;
};

// One box (quartiles, whiskers at min/max) per group.
std::string box_plot(const std::string& title, const std::vector<BoxGroup>& groups);

// Wraps fragments into a standalone SVG document.
std::string document(double width, double height, const std::string& body);

std::string escape(const std::string& text);

}  // namespace simplex::svg

#endif  // SIMPLEX_SVG_HPP_
