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

#include <gtest/gtest.h>

#include "tsui/errors.hpp"

namespace tsui {
namespace {

TEST(NoiseDataset, Invariants) {
  std::vector<NoisePoint> rows{{1.0, 0.1, 0.01}, {0.0, 3.0, 0.01}, {0.5, -1.0, 0.01},
                               {0.25, 0.0, 0.01}, {0.75, -1.2, 0.01}};
  const NoiseDataset ds(rows);
  EXPECT_EQ(ds.rows().front().lambda, 0.0);
  EXPECT_EQ(ds.rows().back().lambda, 1.0);
  EXPECT_EQ(ds.source(), DataSource::kMeasured);

  rows.pop_back();
  EXPECT_THROW(NoiseDataset{rows}, DomainError);
  rows.push_back({1.1, 0.0, 0.1});
  EXPECT_THROW(NoiseDataset{rows}, DomainError);
  rows.back() = {0.9, 0.0, 0.0};
  EXPECT_THROW(NoiseDataset{rows}, DomainError);
}

TEST(NoiseCsv, ParsesAndSorts) {
  std::string text = "# source: simulated\n# gain: 1.67\nlambda,noise_db,sigma_db\n";
  for (int i = 19; i >= 0; --i) {
    text += std::to_string(i / 19.0) + "," + std::to_string(-0.1 * i) + ",0.05\n";
  }
  const NoiseDataset ds = parse_noise_csv(text);
  ASSERT_EQ(ds.size(), 20u);
  EXPECT_EQ(ds.source(), DataSource::kSimulated);
  for (std::size_t i = 1; i < ds.size(); ++i) {
    EXPECT_LE(ds.rows()[i - 1].lambda, ds.rows()[i].lambda);
  }
  ASSERT_EQ(ds.metadata().size(), 1u);
  EXPECT_EQ(ds.metadata()[0].second, "1.67");
  const NoiseDataset back = parse_noise_csv(ds.to_csv());
  EXPECT_EQ(back.to_csv(), ds.to_csv());
}

TEST(NoiseCsv, DuplicateLambdaAccepted) {
  const NoiseDataset ds = parse_noise_csv(
      "lambda,noise_db,sigma_db\n0,1,0.1\n0.5,0,0.1\n0.5,0.02,0.1\n1,0.5,0.1\n0.7,0.1,0.1\n");
  EXPECT_EQ(ds.size(), 5u);
}

TEST(NoiseCsv, Errors) {
  EXPECT_THROW(parse_noise_csv("lambda,noise_db,sigma_db\n0,1,0.1\n0.5,0,0.1\n1,0.5,0.1\n"),
               DomainError);
  try {
    parse_noise_csv("lambda,noise_db,sigma_db\n0,1,0.1\n0.5,zero,0.1\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  try {
    parse_noise_csv("# c\nlambda,noise_db\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(parse_noise_csv("lambda,noise_db,sigma_db\n0,1\n"), ParseError);
  EXPECT_THROW(parse_noise_csv(""), ParseError);
  EXPECT_THROW(load_noise_csv("/nonexistent/file.csv"), ParseError);
}

}  // namespace
}  // namespace tsui
