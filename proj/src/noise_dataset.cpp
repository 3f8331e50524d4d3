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

#include "tsui/noise_dataset.hpp"

#include <algorithm>
#include <cmath>

#include "tsui/curve_table.hpp"
#include "tsui/errors.hpp"
#include "tsui/text_util.hpp"

namespace tsui {

std::string_view source_name(DataSource s) noexcept {
  return s == DataSource::kSimulated ? "simulated" : "measured";
}

NoiseDataset::NoiseDataset(std::vector<NoisePoint> rows, DataSource source)
    : rows_(std::move(rows)), source_(source) {
  if (rows_.size() < kMinNoisePoints) {
    throw DomainError("noise dataset needs at least " +
                      std::to_string(kMinNoisePoints) + " rows, got " +
                      std::to_string(rows_.size()));
  }
  for (const auto& r : rows_) {
    if (!(r.lambda >= 0.0 && r.lambda <= 1.0)) {
      throw DomainError("lambda " + format_number(r.lambda) +
                        " outside [0,1]");
    }
    if (!std::isfinite(r.noise_db)) throw DomainError("noise_db not finite");
    if (!(r.sigma_db > 0.0) || !std::isfinite(r.sigma_db)) {
      throw DomainError("sigma_db must be finite and > 0");
    }
  }
  std::stable_sort(rows_.begin(), rows_.end(),
                   [](const NoisePoint& a, const NoisePoint& b) {
                     return a.lambda < b.lambda;
                   });
}

void NoiseDataset::add_metadata(std::string key, std::string value) {
  metadata_.emplace_back(std::move(key), std::move(value));
}

std::string NoiseDataset::to_csv() const {
  std::string out = "# source: " + std::string(source_name(source_)) + "\n";
  for (const auto& [k, v] : metadata_) out += "# " + k + ": " + v + "\n";
  out += "lambda,noise_db,sigma_db\n";
  for (const auto& r : rows_) {
    out += format_number(r.lambda) + "," + format_number(r.noise_db) + "," +
           format_number(r.sigma_db) + "\n";
  }
  return out;
}

NoiseDataset parse_noise_csv(std::string_view text) {
  const auto lines = split_lines(text);
  std::vector<NoisePoint> rows;
  DataSource source = DataSource::kMeasured;
  std::vector<std::pair<std::string, std::string>> meta;
  bool header_seen = false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string_view line = trim(lines[i]);
    const std::size_t lineno = i + 1;
    if (line.empty()) continue;
    if (line.front() == '#') {
      const std::string_view body = trim(line.substr(1));
      const auto colon = body.find(':');
      if (colon == std::string_view::npos) continue;
      const auto key = trim(body.substr(0, colon));
      const auto value = trim(body.substr(colon + 1));
      if (key == "source") {
        if (value == "simulated") {
          source = DataSource::kSimulated;
        } else if (value != "measured") {
          throw ParseError("unknown source tag '" + std::string(value) + "'",
                           lineno);
        }
      } else {
        meta.emplace_back(std::string(key), std::string(value));
      }
      continue;
    }
    if (!header_seen) {
      const auto cols = split(line, ',');
      if (cols.size() != 3 || trim(cols[0]) != "lambda" ||
          trim(cols[1]) != "noise_db" || trim(cols[2]) != "sigma_db") {
        throw ParseError("expected header 'lambda,noise_db,sigma_db'", lineno);
      }
      header_seen = true;
      continue;
    }
    const auto cells = split(line, ',');
    if (cells.size() != 3) {
      throw ParseError("expected 3 fields, got " + std::to_string(cells.size()),
                       lineno);
    }
    NoisePoint p;
    double* dst[3] = {&p.lambda, &p.noise_db, &p.sigma_db};
    for (int c = 0; c < 3; ++c) {
      const auto v = parse_double(trim(cells[c]));
      if (!v) {
        throw ParseError("bad number '" + std::string(trim(cells[c])) + "'",
                         lineno);
      }
      *dst[c] = *v;
    }
    rows.push_back(p);
  }
  if (!header_seen) throw ParseError("missing header", 0);
  NoiseDataset ds(std::move(rows), source);
  for (auto& [k, v] : meta) ds.add_metadata(std::move(k), std::move(v));
  return ds;
}

NoiseDataset load_noise_csv(const std::filesystem::path& path) {
  return parse_noise_csv(read_file(path));
}

}  // namespace tsui
