// Copyright 2026 The tsui Authors
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

#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tsui {

/// Column-named numeric table backing every figure the toolkit emits.
/// Column 0 is the abscissa and must be strictly increasing; no cell may be
/// NaN.
class CurveTable {
 public:
  CurveTable(std::string figure, std::vector<std::string> columns);

  const std::string& figure() const noexcept { return figure_; }
  const std::vector<std::string>& columns() const noexcept { return columns_; }
  const std::vector<std::vector<double>>& rows() const noexcept {
    return rows_;
  }
  const std::vector<std::pair<std::string, std::string>>& metadata()
      const noexcept {
    return metadata_;
  }

  /// Throws DomainError on width mismatch, NaN, or non-increasing abscissa.
  void add_row(std::vector<double> row);
  void add_metadata(std::string key, std::string value);

  /// Index of a named column; throws DomainError if absent.
  std::size_t column_index(std::string_view name) const;
  std::vector<double> column(std::string_view name) const;

  /// `# key: value` metadata lines, a header row, then one line per row with
  /// 15 significant digits.
  std::string to_csv() const;
  /// {"figure", "metadata", "columns", "rows": [{col: value, ...}, ...]}.
  std::string to_json(int indent = 2) const;

  /// Parses the to_csv() layout back. Throws ParseError.
  static CurveTable from_csv(std::string_view text);

 private:
  std::string figure_;
  std::vector<std::string> columns_;
  std::vector<std::vector<double>> rows_;
  std::vector<std::pair<std::string, std::string>> metadata_;
};

/// Shortest round-trippable-at-15-digits rendering used by all writers.
std::string format_number(double value);

}  // namespace tsui
