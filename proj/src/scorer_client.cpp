// Copyright 2026 The Legalsum Authors.
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

#include <algorithm>
#include <future>
#include <nlohmann/json.hpp>

#include "http_util.hpp"
#include "legalsum/consistency.hpp"
#include "legalsum/error.hpp"

namespace legalsum::consistency {
namespace {

using json = nlohmann::json;

json post_json(const ScorerConfig& config, std::string_view route, const json& body) {
  const http::SplitUrl url = http::split_url(config.base_url);
  auto client = http::make_client(url.origin, config.timeout);
  const std::string path = http::join_path(url.path, route);
  auto res = client->Post(path, body.dump(), "application/json");
  if (!res) {
    throw ExternalServiceError("scorer " + config.base_url + path + " unreachable: " +
                               httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw ExternalServiceError("scorer " + path + " returned HTTP " + std::to_string(res->status) +
                               ": " + res->body.substr(0, 200));
  }
  try {
    return json::parse(res->body);
  } catch (const json::parse_error& e) {
    throw ExternalServiceError("scorer " + path + " returned invalid JSON: " + e.what());
  }
}

double score_value(const json& v) {
  if (!v.is_number()) throw ExternalServiceError("scorer /nli returned a non-numeric score");
  return v.get<double>();
}

// Accepts a nested row-major matrix or a flat row-major list.
std::vector<double> read_scores(const json& body, std::size_t rows, std::size_t cols) {
  if (!body.contains("scores") || !body["scores"].is_array()) {
    throw ExternalServiceError("scorer /nli response lacks a 'scores' array");
  }
  const json& scores = body["scores"];
  std::vector<double> flat;
  flat.reserve(rows * cols);
  if (!scores.empty() && scores.front().is_array()) {
    if (scores.size() != rows) throw ExternalServiceError("scorer /nli returned wrong row count");
    for (const auto& row : scores) {
      if (!row.is_array() || row.size() != cols) {
        throw ExternalServiceError("scorer /nli returned wrong column count");
      }
      for (const auto& v : row) flat.push_back(score_value(v));
    }
  } else {
    if (scores.size() != rows * cols) throw ExternalServiceError("scorer /nli returned wrong matrix size");
    for (const auto& v : scores) flat.push_back(score_value(v));
  }
  for (double v : flat) {
    if (!(v >= 0.0 && v <= 1.0)) throw ExternalServiceError("scorer /nli returned a score outside [0, 1]");
  }
  return flat;
}

struct Tile {
  std::size_t row0, rows, col0, cols;
};

}  // namespace

RemoteScorer::RemoteScorer(ScorerConfig config) : config_(std::move(config)) {
  http::split_url(config_.base_url);
  config_.max_pairs_per_request = std::max<std::size_t>(config_.max_pairs_per_request, 1);
  config_.max_in_flight = std::max<std::size_t>(config_.max_in_flight, 1);
}

NliMatrix RemoteScorer::score(const std::vector<std::string>& premises,
                              const std::vector<std::string>& hypotheses) const {
  NliMatrix out(premises.size(), hypotheses.size());
  if (out.empty()) return out;

  // Tiles of at most max_pairs_per_request cells: all hypotheses of a slice
  // against as many premises as fit.
  const std::size_t budget = config_.max_pairs_per_request;
  const std::size_t col_step = std::min(hypotheses.size(), budget);
  const std::size_t row_step = std::max<std::size_t>(1, budget / col_step);
  std::vector<Tile> tiles;
  for (std::size_t c = 0; c < hypotheses.size(); c += col_step) {
    for (std::size_t r = 0; r < premises.size(); r += row_step) {
      tiles.push_back({r, std::min(row_step, premises.size() - r), c, std::min(col_step, hypotheses.size() - c)});
    }
  }

  auto run_tile = [&](const Tile& t) {
    json body;
    body["premises"] = std::vector<std::string>(premises.begin() + static_cast<std::ptrdiff_t>(t.row0),
                                                premises.begin() + static_cast<std::ptrdiff_t>(t.row0 + t.rows));
    body["hypotheses"] = std::vector<std::string>(hypotheses.begin() + static_cast<std::ptrdiff_t>(t.col0),
                                                  hypotheses.begin() + static_cast<std::ptrdiff_t>(t.col0 + t.cols));
    return read_scores(post_json(config_, "/nli", body), t.rows, t.cols);
  };

  for (std::size_t start = 0; start < tiles.size(); start += config_.max_in_flight) {
    const std::size_t end = std::min(tiles.size(), start + config_.max_in_flight);
    std::vector<std::future<std::vector<double>>> pending;
    for (std::size_t k = start; k < end; ++k) {
      pending.push_back(std::async(std::launch::async, run_tile, tiles[k]));
    }
    for (std::size_t k = start; k < end; ++k) {
      const std::vector<double> flat = pending[k - start].get();
      const Tile& t = tiles[k];
      for (std::size_t r = 0; r < t.rows; ++r) {
        for (std::size_t c = 0; c < t.cols; ++c) out.set(t.row0 + r, t.col0 + c, flat[r * t.cols + c]);
      }
    }
  }
  return out;
}

std::vector<EntityMention> RemoteScorer::extract(std::string_view text) const {
  std::vector<EntityMention> out;
  if (text.empty()) return out;
  const json body = post_json(config_, "/ner", json{{"text", std::string(text)}});
  if (!body.contains("entities") || !body["entities"].is_array()) {
    throw ExternalServiceError("scorer /ner response lacks an 'entities' array");
  }
  std::size_t search_from = 0;
  for (const auto& e : body["entities"]) {
    if (!e.is_object()) throw ExternalServiceError("scorer /ner returned a malformed entity");
    if ((e.contains("text") && !e["text"].is_string()) || (e.contains("label") && !e["label"].is_string()) ||
        (e.contains("start") && !e["start"].is_number_unsigned()) ||
        (e.contains("end") && !e["end"].is_number_unsigned())) {
      throw ExternalServiceError("scorer /ner returned a malformed entity");
    }
    EntityMention m;
    m.text = e.value("text", std::string());
    m.label = e.value("label", std::string());
    if (m.text.empty()) continue;
    // Offsets from the service may count code points rather than bytes;
    // trust them only when they address the entity text.
    const std::size_t start = e.value("start", std::size_t{0});
    const std::size_t end = e.value("end", std::size_t{0});
    if (end > start && end <= text.size() && text.substr(start, end - start) == m.text) {
      m.span = {start, end};
    } else {
      std::size_t pos = text.find(m.text, search_from);
      if (pos == std::string_view::npos) pos = text.find(m.text);
      if (pos == std::string_view::npos) continue;
      m.span = {pos, pos + m.text.size()};
    }
    search_from = m.span.end;
    m.normalized = normalize_entity(m.text);
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace legalsum::consistency
