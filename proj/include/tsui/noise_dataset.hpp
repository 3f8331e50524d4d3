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

/// @file
/// Noise-vs-lambda measurements, the exchange format between the simulator
/// and the fitting code.

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tsui {

enum class DataSource { kMeasured, kSimulated };

std::string_view source_name(DataSource s) noexcept;

struct NoisePoint {
  double lambda = 0.0;
  double noise_db = 0.0;
  double sigma_db = 0.0;
};

/// At least kMinNoisePoints rows with lambda in [0,1], finite noise and
/// sigma > 0, kept sorted by lambda. Repeated lambda values are allowed and
/// treated as independent measurements.
class NoiseDataset {
 public:
  static constexpr std::size_t kMinNoisePoints = 5;

  /// Throws DomainError if any invariant fails. Sorting is stable.
  explicit NoiseDataset(std::vector<NoisePoint> rows,
                        DataSource source = DataSource::kMeasured);

  const std::vector<NoisePoint>& rows() const noexcept { return rows_; }
  std::size_t size() const noexcept { return rows_.size(); }
  DataSource source() const noexcept { return source_; }

  const std::vector<std::pair<std::string, std::string>>& metadata()
      const noexcept {
    return metadata_;
  }
  void add_metadata(std::string key, std::string value);

  /// `# key: value` lines, then `lambda,noise_db,sigma_db`.
  std::string to_csv() const;

 private:
  std::vector<NoisePoint> rows_;
  DataSource source_;
  std::vector<std::pair<std::string, std::string>> metadata_;
};

/// Parses the CSV layout above. Lines starting with `#` are skipped except
/// `# source: simulated`, which sets the source tag. Throws ParseError with
/// the offending line number on malformed input and DomainError when the
/// rows break a dataset invariant.
NoiseDataset parse_noise_csv(std::string_view text);
NoiseDataset load_noise_csv(const std::filesystem::path& path);

}  // namespace tsui
