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

#include "relgraph/results_table.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include "json.hpp"
#include "relgraph/encode.h"

namespace relgraph::eval {
namespace {

std::string Fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  std::string s(buf);
  if (s == "-0.00") s = "0.00";
  return s;
}

std::string FusionLabel(gnn::FusionMethod f) {
  return f == gnn::FusionMethod::kNone ? "None" : std::string(gnn::FusionName(f));
}

// Display width in code points, so the arrows count as one column.
std::size_t Width(const std::string& s) {
  return static_cast<std::size_t>(std::count_if(
      s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

std::string Pad(const std::string& s, std::size_t width, bool right) {
  const std::size_t w = Width(s);
  if (w >= width) return s;
  const std::string fill(width - w, ' ');
  return right ? fill + s : s + fill;
}

std::vector<std::string> Header(const GridSpec& grid) {
  std::vector<std::string> h = {"Base Model", "GNN"};
  for (Domain d : grid.domains) h.emplace_back(DomainTitle(d));
  h.emplace_back("Average");
  h.emplace_back("%\xCE\x94");  // "%Δ"
  return h;
}

std::vector<std::string> Cells(const ResultsRow& row) {
  std::vector<std::string> c = {row.encoder, FusionLabel(row.fusion)};
  for (double s : row.scores) c.push_back(Fixed2(s));
  c.push_back(Fixed2(row.average));
  c.push_back(FormatDelta(row.delta));
  return c;
}

}  // namespace

std::string CellName(const CellKey& key) {
  return key.encoder + "/" + std::string(gnn::FusionName(key.fusion)) + "/" +
         std::string(DomainName(key.domain));
}

MissingCell::MissingCell(std::vector<CellKey> missing)
    : std::runtime_error([&] {
        std::string msg = "results grid is missing " +
                          std::to_string(missing.size()) + " cell(s):";
        for (const auto& k : missing) msg += " " + CellName(k);
        return msg;
      }()),
      missing_(std::move(missing)) {}

double Average(std::span<const double> values) {
  if (values.empty()) return 0.0;
  return std::accumulate(values.begin(), values.end(), 0.0) /
         static_cast<double>(values.size());
}

double PercentDelta(double fusion_average, double none_average) {
  if (none_average == 0.0) return 0.0;
  return 100.0 * (fusion_average - none_average) / none_average;
}

std::string FormatDelta(double delta) {
  const std::string text = Fixed2(delta);
  if (text == "0.00") return "0.00 -";
  if (text.front() == '-') return text + " \xE2\x86\x93";  // ↓
  return "+" + text + " \xE2\x86\x91";                     // ↑
}

ResultsTable::ResultsTable(GridSpec grid) : grid_(std::move(grid)) {
  auto& f = grid_.fusions;
  std::erase(f, gnn::FusionMethod::kNone);
  f.insert(f.begin(), gnn::FusionMethod::kNone);
  std::sort(f.begin() + 1, f.end());
  f.erase(std::unique(f.begin(), f.end()), f.end());
  auto& d = grid_.domains;
  std::sort(d.begin(), d.end());
  d.erase(std::unique(d.begin(), d.end()), d.end());
}

void ResultsTable::Add(const CellKey& key, double macro_f1) {
  auto& acc = cells_[key];
  acc.sum += macro_f1;
  ++acc.count;
}

std::optional<double> ResultsTable::Get(const CellKey& key) const {
  auto it = cells_.find(key);
  if (it == cells_.end()) return std::nullopt;
  return it->second.sum / it->second.count;
}

std::vector<std::string> ResultsTable::Encoders() const {
  std::vector<std::string> seen;
  for (const auto& [key, _] : cells_) {
    if (std::find(seen.begin(), seen.end(), key.encoder) == seen.end()) {
      seen.push_back(key.encoder);
    }
  }
  const auto& known = encode::SupportedModels();
  auto rank = [&](const std::string& name) {
    auto it = std::find(known.begin(), known.end(), name);
    return static_cast<std::size_t>(it - known.begin());
  };
  std::stable_sort(seen.begin(), seen.end(), [&](const auto& a, const auto& b) {
    return std::pair(rank(a), a) < std::pair(rank(b), b);
  });
  return seen;
}

std::vector<ResultsRow> ResultsTable::Rows() const {
  std::vector<CellKey> missing;
  std::vector<ResultsRow> rows;
  for (const auto& encoder : Encoders()) {
    double none_average = 0.0;
    for (gnn::FusionMethod f : grid_.fusions) {
      ResultsRow row{encoder, f, {}, 0.0, 0.0};
      for (Domain d : grid_.domains) {
        const CellKey key{encoder, f, d};
        auto v = Get(key);
        if (!v) missing.push_back(key);
        row.scores.push_back(v.value_or(0.0));
      }
      row.average = Average(row.scores);
      if (f == gnn::FusionMethod::kNone) none_average = row.average;
      row.delta = PercentDelta(row.average, none_average);
      rows.push_back(std::move(row));
    }
  }
  if (!missing.empty()) throw MissingCell(std::move(missing));
  return rows;
}

std::string ResultsTable::RenderText() const {
  std::vector<std::vector<std::string>> lines = {Header(grid_)};
  for (const auto& row : Rows()) lines.push_back(Cells(row));
  std::vector<std::size_t> widths(lines.front().size(), 0);
  for (const auto& line : lines) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      widths[i] = std::max(widths[i], Width(line[i]));
    }
  }
  std::string out;
  for (std::size_t r = 0; r < lines.size(); ++r) {
    std::string text;
    for (std::size_t i = 0; i < lines[r].size(); ++i) {
      if (i > 0) text += "  ";
      text += Pad(lines[r][i], widths[i], i >= 2 && r > 0);
    }
    while (!text.empty() && text.back() == ' ') text.pop_back();
    out += text + "\n";
    if (r == 0) {
      std::size_t total = 0;
      for (std::size_t w : widths) total += w;
      out += std::string(total + 2 * (widths.size() - 1), '-') + "\n";
    }
  }
  return out;
}

std::string ResultsTable::RenderDelimited(char delimiter) const {
  std::string out;
  auto emit = [&](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i > 0) out.push_back(delimiter);
      out += fields[i];
    }
    out.push_back('\n');
  };
  std::vector<std::string> header = {"encoder", "fusion"};
  for (Domain d : grid_.domains) header.emplace_back(DomainName(d));
  header.emplace_back("average");
  header.emplace_back("delta_pct");
  emit(header);
  for (const auto& row : Rows()) {
    std::vector<std::string> f = {row.encoder, std::string(gnn::FusionName(row.fusion))};
    for (double s : row.scores) f.push_back(Fixed2(s));
    f.push_back(Fixed2(row.average));
    f.push_back(Fixed2(row.delta));
    emit(f);
  }
  return out;
}

std::string ResultsTable::RenderJson(int indent) const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : Rows()) {
    nlohmann::json scores = nlohmann::json::object();
    for (std::size_t d = 0; d < grid_.domains.size(); ++d) {
      scores[std::string(DomainName(grid_.domains[d]))] = row.scores[d];
    }
    rows.push_back({{"encoder", row.encoder},
                    {"fusion", gnn::FusionName(row.fusion)},
                    {"scores", std::move(scores)},
                    {"average", row.average},
                    {"delta_pct", row.delta}});
  }
  return nlohmann::json{{"rows", std::move(rows)}}.dump(indent);
}

ResultsTable TableFromMetrics(std::span<const std::string> records,
                              GridSpec grid) {
  ResultsTable table(std::move(grid));
  for (const auto& record : records) {
    const MetricsSummary s = ParseMetricsRecord(record);
    table.Add({s.config.model.encoder.model_name, s.config.model.gnn.fusion,
               s.config.domain},
              s.test_f1);
  }
  return table;
}

std::vector<corpus::Document> SelectDocuments(std::span<const corpus::Document> docs,
                                              Domain domain, Split split) {
  std::vector<corpus::Document> out;
  for (const auto& doc : docs) {
    if (doc.domain == domain && doc.split == split) out.push_back(doc);
  }
  return out;
}

ResultsTable RunMatrix(std::span<const RunConfig> configs,
                       std::span<const corpus::Document> docs, int max_jobs) {
  std::vector<double> scores(configs.size(), 0.0);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;

  auto worker = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) {
      try {
        const RunConfig& cfg = configs[i];
        const Domain source = cfg.train_domain.value_or(cfg.domain);
        const auto train = SelectDocuments(docs, source, Split::kTrain);
        const auto dev = SelectDocuments(docs, source, Split::kDev);
        const auto test = SelectDocuments(docs, cfg.domain, Split::kTest);
        scores[i] = Train(cfg, train, dev, test).test_f1;
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = configs.size();
      }
    }
  };
  {
    const int jobs = std::clamp<int>(max_jobs, 1, std::max<int>(1, static_cast<int>(configs.size())));
    std::vector<std::jthread> pool;
    for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);

  ResultsTable table;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const auto& cfg = configs[i];
    table.Add({cfg.model.encoder.model_name, cfg.model.gnn.fusion, cfg.domain},
              scores[i]);
  }
  return table;
}

std::string FormatLabelDistribution(const std::array<int, kNumLabels>& counts,
                                    Domain domain) {
  std::size_t width = 5;
  for (Label l : AllLabels()) width = std::max(width, LabelName(l).size());
  std::string out = std::string(DomainTitle(domain)) + "\n";
  int total = 0;
  for (Label l : AllLabels()) {
    const int c = counts[static_cast<int>(l)];
    total += c;
    out += "  " + Pad(std::string(LabelName(l)), width, false) + "  " +
           std::to_string(c) + "\n";
  }
  out += "  " + Pad("total", width, false) + "  " + std::to_string(total) + "\n";
  return out;
}

}  // namespace relgraph::eval
