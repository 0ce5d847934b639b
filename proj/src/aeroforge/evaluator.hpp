// Copyright 2026 The AeroForge Authors
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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "aeroforge/manifest.hpp"

namespace aeroforge {

struct Prediction {
  std::string image_id;
  std::string value;  // raw cell; interpreted per task
};

using PredictionSet = std::vector<Prediction>;

// CSV with header `image_id,prediction`. Throws IoError if unreadable, ValidationError
// (with line numbers) on malformed rows or duplicate ids.
PredictionSet read_predictions(const std::filesystem::path& path);
PredictionSet parse_predictions(const std::string& csv_text);

enum class Task { Classify, Count };

struct Residual {
  std::string image_id;
  double truth = 0;
  double predicted = 0;
  double residual = 0;  // predicted - truth (classification: 0 correct, 1 wrong)
};

struct CountMetrics {
  double mse = 0, mae = 0, rmse = 0;
};

struct MetricsReport {
  Task task = Task::Classify;
  std::size_t n = 0;
  // classification
  double accuracy = 0;
  std::size_t fire_as_forest = 0, forest_as_fire = 0, correct = 0;
  // counting
  CountMetrics counting;
  std::optional<CountMetrics> rounded;  // predictions rounded half-to-even first
  std::vector<Residual> residuals;      // manifest row order
  std::vector<Residual> worst;          // largest |residual| first

  std::string to_text() const;
  nlohmann::json to_json() const;
};

struct EvaluateOptions {
  std::optional<Split> split;  // nullopt: every row
  bool round = false;
  std::size_t top_k = 10;
};

// Errors: ValidationError for MissingPrediction / UnknownImageId / bad labels.
MetricsReport evaluate_classification(const PredictionSet& preds, const DatasetManifest& manifest,
                                      const EvaluateOptions& options = {});
// Also rejects negative predictions (NegativePrediction).
MetricsReport evaluate_counting(const PredictionSet& preds, const DatasetManifest& manifest,
                                const EvaluateOptions& options = {});

CountMetrics count_metrics(const std::vector<double>& predicted, const std::vector<double>& truth);

struct CurveRow {
  int epoch = 0;
  double train = 0, val = 0;
};

// CSV `epoch,train,val` with header; epochs must increase strictly from 1.
std::vector<CurveRow> parse_training_log(const std::string& csv_text);

struct CurveSummary {
  std::size_t epochs = 0;
  int x_min = 0, x_max = 0;
  std::filesystem::path svg_path, csv_path;
};

std::string render_curves_svg(const std::vector<CurveRow>& rows, const std::string& title);
// Writes the SVG chart plus a normalized CSV next to it (same stem, .csv).
// Nothing is written when the log is empty or malformed.
CurveSummary export_curves(const std::filesystem::path& training_log, const std::filesystem::path& svg_out);

}  // namespace aeroforge
