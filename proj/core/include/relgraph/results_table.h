// Copyright 2026 The relgraph Authors.
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

#ifndef RELGRAPH_RESULTS_TABLE_H_
#define RELGRAPH_RESULTS_TABLE_H_

#include <array>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "relgraph/corpus.h"
#include "relgraph/gnn.h"
#include "relgraph/labels.h"
#include "relgraph/trainer.h"

namespace relgraph::eval {

struct CellKey {
  std::string encoder;
  gnn::FusionMethod fusion = gnn::FusionMethod::kNone;
  Domain domain = Domain::kNews;

  friend auto operator<=>(const CellKey&, const CellKey&) = default;
  friend bool operator==(const CellKey&, const CellKey&) = default;
};

std::string CellName(const CellKey& key);

class MissingCell : public std::runtime_error {
 public:
  explicit MissingCell(std::vector<CellKey> missing);
  const std::vector<CellKey>& missing() const { return missing_; }

 private:
  std::vector<CellKey> missing_;
};

double Average(std::span<const double> values);
// 100 * (fusion - none) / none. Callers pass unrounded averages.
double PercentDelta(double fusion_average, double none_average);
// "+6.67 ↑", "0.00 -", "-22.24 ↓" (sign and arrow from the rounded value).
std::string FormatDelta(double delta);

// Axes a table is expected to cover. The "none" fusion is always part of
// the grid since every other row is compared against it.
struct GridSpec {
  std::vector<gnn::FusionMethod> fusions{gnn::kAllFusions.begin(),
                                         gnn::kAllFusions.end()};
  std::vector<Domain> domains{AllDomains().begin(), AllDomains().end()};
};

struct ResultsRow {
  std::string encoder;
  gnn::FusionMethod fusion = gnn::FusionMethod::kNone;
  std::vector<double> scores;  // One per GridSpec domain.
  double average = 0.0;
  double delta = 0.0;
};

// Macro-F1 grid over (encoder, fusion, domain). Adding the same cell more
// than once (several seeds) stores the mean.
class ResultsTable {
 public:
  ResultsTable() = default;
  explicit ResultsTable(GridSpec grid);

  const GridSpec& grid() const { return grid_; }
  void Add(const CellKey& key, double macro_f1);
  std::optional<double> Get(const CellKey& key) const;
  std::size_t size() const { return cells_.size(); }

  // Encoders in the order known models are listed, unknown ones after, by name.
  std::vector<std::string> Encoders() const;

  // Every encoder present must fill the whole grid (by default 5 fusions x
  // 6 domains); otherwise throws MissingCell listing the gaps. Cells outside
  // the grid are ignored.
  std::vector<ResultsRow> Rows() const;

  std::string RenderText() const;
  std::string RenderDelimited(char delimiter = ',') const;
  std::string RenderJson(int indent = 2) const;

 private:
  struct Accumulator {
    double sum = 0.0;
    int count = 0;
  };
  GridSpec grid_;
  std::map<CellKey, Accumulator> cells_;
};

// Builds a table from metrics records (one JSON object per element).
ResultsTable TableFromMetrics(std::span<const std::string> records,
                              GridSpec grid = {});

// Trains and tests every config. Cells are independent and run on up to
// `max_jobs` threads; the table does not depend on the job count.
ResultsTable RunMatrix(std::span<const RunConfig> configs,
                       std::span<const corpus::Document> docs, int max_jobs = 1);

// Documents of one (domain, split) in file order.
std::vector<corpus::Document> SelectDocuments(std::span<const corpus::Document> docs,
                                              Domain domain, Split split);

// Aligned per-label counts with a total line.
std::string FormatLabelDistribution(const std::array<int, kNumLabels>& counts,
                                    Domain domain);

}  // namespace relgraph::eval

#endif  // RELGRAPH_RESULTS_TABLE_H_
