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

#include "tsui/curve_table.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tsui/errors.hpp"
#include "tsui/text_util.hpp"

namespace tsui {

std::string format_number(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value,
                           std::chars_format::general, 15);
  return std::string(buf, res.ptr);
}

CurveTable::CurveTable(std::string figure, std::vector<std::string> columns)
    : figure_(std::move(figure)), columns_(std::move(columns)) {
  if (columns_.empty()) throw DomainError("curve table needs a column");
}

void CurveTable::add_row(std::vector<double> row) {
  if (row.size() != columns_.size()) {
    throw DomainError("curve table row has " + std::to_string(row.size()) +
                      " cells, expected " + std::to_string(columns_.size()));
  }
  for (double v : row) {
    if (std::isnan(v)) throw DomainError("curve table cell is NaN");
  }
  if (!rows_.empty() && !(row[0] > rows_.back()[0])) {
    throw DomainError("curve table abscissa must be strictly increasing");
  }
  rows_.push_back(std::move(row));
}

void CurveTable::add_metadata(std::string key, std::string value) {
  metadata_.emplace_back(std::move(key), std::move(value));
}

std::size_t CurveTable::column_index(std::string_view name) const {
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i] == name) return i;
  }
  throw DomainError("no column named '" + std::string(name) + "'");
}

std::vector<double> CurveTable::column(std::string_view name) const {
  const std::size_t j = column_index(name);
  std::vector<double> out;
  out.reserve(rows_.size());
  for (const auto& r : rows_) out.push_back(r[j]);
  return out;
}

std::string CurveTable::to_csv() const {
  std::ostringstream os;
  os << "# figure: " << figure_ << '\n';
  for (const auto& [k, v] : metadata_) os << "# " << k << ": " << v << '\n';
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    os << (i ? "," : "") << columns_[i];
  }
  os << '\n';
  for (const auto& r : rows_) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      os << (i ? "," : "") << format_number(r[i]);
    }
    os << '\n';
  }
  return os.str();
}

std::string CurveTable::to_json(int indent) const {
  nlohmann::ordered_json j;
  j["figure"] = figure_;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& [k, v] : metadata_) meta[k] = v;
  j["metadata"] = meta;
  j["columns"] = columns_;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : rows_) {
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < r.size(); ++i) obj[columns_[i]] = r[i];
    rows.push_back(std::move(obj));
  }
  j["rows"] = std::move(rows);
  return j.dump(indent) + "\n";
}

CurveTable CurveTable::from_csv(std::string_view text) {
  std::string figure;
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::size_t line_no = 0;
  for (std::string_view line : split_lines(text)) {
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '#') {
      std::string_view body = trim(line.substr(1));
      const auto colon = body.find(':');
      if (colon == std::string_view::npos) continue;
      std::string key(trim(body.substr(0, colon)));
      std::string value(trim(body.substr(colon + 1)));
      if (key == "figure") {
        figure = value;
      } else {
        meta.emplace_back(std::move(key), std::move(value));
      }
      continue;
    }
    const auto cells = split(line, ',');
    if (columns.empty()) {
      for (auto c : cells) columns.emplace_back(trim(c));
      continue;
    }
    if (cells.size() != columns.size()) {
      throw ParseError("expected " + std::to_string(columns.size()) +
                           " cells, got " + std::to_string(cells.size()),
                       line_no);
    }
    std::vector<double> row;
    for (auto c : cells) {
      auto v = parse_double(trim(c));
      if (!v) throw ParseError("not a number: '" + std::string(c) + "'", line_no);
      row.push_back(*v);
    }
    rows.push_back(std::move(row));
  }
  if (columns.empty()) throw ParseError("missing header row", 0);

  CurveTable t(figure, columns);
  for (auto& [k, v] : meta) t.add_metadata(k, v);
  for (auto& r : rows) t.add_row(std::move(r));
  return t;
}

}  // namespace tsui
