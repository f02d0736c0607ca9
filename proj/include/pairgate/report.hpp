// Copyright 2026 The pairgate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace pairgate::cli {

/// Fixed 12-significant-digit rendering used by every data file.
std::string format_real(double v);

using Cell = std::variant<double, long long, std::string>;

/// CSV table whose header carries a unit annotation per column, e.g. "eta1 [1]".
class CsvTable {
 public:
  struct Column {
    std::string name;
    std::string unit;
  };

  explicit CsvTable(std::vector<Column> columns) : columns_(std::move(columns)) {}

  /// Throws Error when the row width differs from the header.
  void add_row(std::vector<Cell> row);
  std::size_t rows() const { return rows_.size(); }
  std::string render() const;
  void write(const std::filesystem::path& path) const;

 private:
  std::vector<Column> columns_;
  std::vector<std::vector<Cell>> rows_;
};

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<PlotSeries> series;
};

/// Standalone SVG line plot; deterministic output for identical input.
std::string render_svg(const PlotSpec& spec);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace pairgate::cli
