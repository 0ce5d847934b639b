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

#include "aeroforge/evaluator.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "aeroforge/errors.hpp"

namespace aeroforge {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    cells.push_back(trim(line.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
    if (comma == std::string::npos) return cells;
    start = comma + 1;
  }
}

std::string slurp(const fs::path& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(std::string("cannot open ") + what + " '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::optional<double> parse_number(const std::string& s) {
  if (s.empty()) return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<ClassLabel> parse_label(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "fire" || s == "1") return ClassLabel::Fire;
  if (s == "forest" || s == "0") return ClassLabel::Forest;
  return std::nullopt;
}

struct Matched {
  const ManifestRow* row;
  const Prediction* pred;
};

// Pairs every in-split manifest row with its prediction; ids outside the manifest are errors,
// ids of other splits are ignored.
std::vector<Matched> match(const PredictionSet& preds, const DatasetManifest& manifest, const EvaluateOptions& options) {
  std::map<std::string, const Prediction*> by_id;
  for (const auto& p : preds) by_id[p.image_id] = &p;
  std::vector<std::string> problems;
  std::set<std::string> known;
  for (const auto& r : manifest.rows) known.insert(r.image_id);
  for (const auto& p : preds)
    if (!known.contains(p.image_id)) problems.push_back("UnknownImageId: '" + p.image_id + "' is not in the manifest");

  std::vector<Matched> out;
  for (const auto& r : manifest.rows) {
    if (options.split && r.split != *options.split) continue;
    auto it = by_id.find(r.image_id);
    if (it == by_id.end()) {
      problems.push_back("MissingPrediction: no prediction for '" + r.image_id + "'");
      continue;
    }
    out.push_back({&r, it->second});
  }
  if (!problems.empty()) throw ValidationError(problems);
  if (out.empty()) throw ValidationError({"no manifest rows in the selected split"});
  return out;
}

void rank_worst(MetricsReport& report, std::size_t k) {
  report.worst = report.residuals;
  std::stable_sort(report.worst.begin(), report.worst.end(),
                   [](const Residual& a, const Residual& b) { return std::abs(a.residual) > std::abs(b.residual); });
  if (report.task == Task::Classify)
    std::erase_if(report.worst, [](const Residual& r) { return r.residual == 0; });
  if (report.worst.size() > k) report.worst.resize(k);
}

std::string fmt(double v, int precision = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

}  // namespace

PredictionSet parse_predictions(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  PredictionSet out;
  std::vector<std::string> problems;
  std::set<std::string> seen;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split_csv(line);
    if (!header) {
      header = true;
      if (cells.size() != 2 || cells[0] != "image_id" || cells[1] != "prediction")
        problems.push_back("line " + std::to_string(line_no) + ": header must be 'image_id,prediction'");
      continue;
    }
    if (cells.size() != 2 || cells[0].empty() || cells[1].empty()) {
      problems.push_back("line " + std::to_string(line_no) + ": expected 'image_id,prediction'");
      continue;
    }
    if (!seen.insert(cells[0]).second) {
      problems.push_back("line " + std::to_string(line_no) + ": duplicate image_id '" + cells[0] + "'");
      continue;
    }
    out.push_back({cells[0], cells[1]});
  }
  if (!header) problems.push_back("predictions file is empty");
  if (!problems.empty()) throw ValidationError(problems);
  return out;
}

PredictionSet read_predictions(const fs::path& path) { return parse_predictions(slurp(path, "predictions file")); }

CountMetrics count_metrics(const std::vector<double>& predicted, const std::vector<double>& truth) {
  CountMetrics m;
  if (predicted.empty()) return m;
  double se = 0, ae = 0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    const double d = predicted[i] - truth[i];
    se += d * d;
    ae += std::abs(d);
  }
  const auto n = static_cast<double>(predicted.size());
  m.mse = se / n;
  m.mae = ae / n;
  m.rmse = std::sqrt(m.mse);
  return m;
}

MetricsReport evaluate_classification(const PredictionSet& preds, const DatasetManifest& manifest, const EvaluateOptions& options) {
  const auto matched = match(preds, manifest, options);
  MetricsReport report;
  report.task = Task::Classify;
  std::vector<std::string> problems;
  for (const auto& [row, pred] : matched) {
    const auto label = parse_label(pred->value);
    if (!label) {
      problems.push_back("'" + row->image_id + "': prediction '" + pred->value + "' is not fire/forest/1/0");
      continue;
    }
    if (!row->ground_truth.class_label) {
      problems.push_back("'" + row->image_id + "': manifest row has no class_label");
      continue;
    }
    const ClassLabel truth = *row->ground_truth.class_label;
    const bool ok = *label == truth;
    report.correct += ok;
    if (!ok && truth == ClassLabel::Fire) ++report.fire_as_forest;
    if (!ok && truth == ClassLabel::Forest) ++report.forest_as_fire;
    report.residuals.push_back({row->image_id, truth == ClassLabel::Fire ? 1.0 : 0.0, *label == ClassLabel::Fire ? 1.0 : 0.0,
                                ok ? 0.0 : 1.0});
  }
  if (!problems.empty()) throw ValidationError(problems);
  report.n = matched.size();
  report.accuracy = static_cast<double>(report.correct) / static_cast<double>(report.n);
  rank_worst(report, options.top_k);
  return report;
}

MetricsReport evaluate_counting(const PredictionSet& preds, const DatasetManifest& manifest, const EvaluateOptions& options) {
  const auto matched = match(preds, manifest, options);
  MetricsReport report;
  report.task = Task::Count;
  std::vector<std::string> problems;
  std::vector<double> predicted, truth, rounded;
  for (const auto& [row, pred] : matched) {
    const auto v = parse_number(pred->value);
    if (!v) {
      problems.push_back("'" + row->image_id + "': prediction '" + pred->value + "' is not a number");
      continue;
    }
    if (*v < 0) {
      problems.push_back("NegativePrediction: '" + row->image_id + "' predicted " + pred->value);
      continue;
    }
    if (!row->ground_truth.house_count) {
      problems.push_back("'" + row->image_id + "': manifest row has no house_count");
      continue;
    }
    const auto t = static_cast<double>(*row->ground_truth.house_count);
    predicted.push_back(*v);
    truth.push_back(t);
    rounded.push_back(std::nearbyint(*v));
    report.residuals.push_back({row->image_id, t, *v, *v - t});
  }
  if (!problems.empty()) throw ValidationError(problems);
  report.n = matched.size();
  report.counting = count_metrics(predicted, truth);
  if (options.round) report.rounded = count_metrics(rounded, truth);
  rank_worst(report, options.top_k);
  return report;
}

std::string MetricsReport::to_text() const {
  std::ostringstream out;
  out << "task: " << (task == Task::Classify ? "classify" : "count") << "\n";
  out << "n: " << n << "\n";
  if (task == Task::Classify) {
    out << "accuracy: " << fmt(accuracy) << " (" << correct << "/" << n << ")\n";
    out << "fire predicted as forest: " << fire_as_forest << "\n";
    out << "forest predicted as fire: " << forest_as_fire << "\n";
    out << "misclassified (up to " << worst.size() << "):\n";
    for (const auto& r : worst) out << "  " << r.image_id << " truth=" << (r.truth > 0 ? "fire" : "forest") << "\n";
  } else {
    out << "mse: " << fmt(counting.mse) << "\nmae: " << fmt(counting.mae) << "\nrmse: " << fmt(counting.rmse) << "\n";
    if (rounded)
      out << "rounded predictions: mse " << fmt(rounded->mse) << ", mae " << fmt(rounded->mae) << ", rmse " << fmt(rounded->rmse) << "\n";
    out << "worst offenders:\n";
    for (const auto& r : worst)
      out << "  " << r.image_id << " truth=" << fmt(r.truth) << " predicted=" << fmt(r.predicted) << " residual=" << fmt(r.residual) << "\n";
  }
  return out.str();
}

json MetricsReport::to_json() const {
  auto residual_json = [](const std::vector<Residual>& v) {
    json a = json::array();
    for (const auto& r : v) a.push_back({{"image_id", r.image_id}, {"truth", r.truth}, {"predicted", r.predicted}, {"residual", r.residual}});
    return a;
  };
  json j{{"task", task == Task::Classify ? "classify" : "count"}, {"n", n}};
  if (task == Task::Classify) {
    j["accuracy"] = accuracy;
    j["correct"] = correct;
    j["confusion"] = {{"fire_as_forest", fire_as_forest}, {"forest_as_fire", forest_as_fire}};
  } else {
    j["mse"] = counting.mse;
    j["mae"] = counting.mae;
    j["rmse"] = counting.rmse;
    if (rounded) j["rounded"] = {{"mse", rounded->mse}, {"mae", rounded->mae}, {"rmse", rounded->rmse}};
  }
  j["residuals"] = residual_json(residuals);
  j["worst"] = residual_json(worst);
  return j;
}

std::vector<CurveRow> parse_training_log(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  std::vector<CurveRow> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split_csv(line);
    const std::string at = "line " + std::to_string(line_no);
    if (!header) {
      header = true;
      if (cells.size() != 3 || cells[0] != "epoch" || cells[1] != "train" || cells[2] != "val")
        throw ValidationError({at + ": header must be 'epoch,train,val'"});
      continue;
    }
    if (cells.size() != 3) throw ValidationError({at + ": expected 3 columns"});
    int epoch = 0;
    const auto [p, ec] = std::from_chars(cells[0].data(), cells[0].data() + cells[0].size(), epoch);
    if (ec != std::errc{} || p != cells[0].data() + cells[0].size()) throw ValidationError({at + ": epoch is not an integer"});
    const auto train = parse_number(cells[1]);
    const auto val = parse_number(cells[2]);
    if (!train || !val) throw ValidationError({at + ": train/val must be finite numbers"});
    const int expected = rows.empty() ? 1 : rows.back().epoch + 1;
    if (epoch != expected) throw ValidationError({at + ": epoch " + cells[0] + " out of sequence, expected " + std::to_string(expected)});
    rows.push_back({epoch, *train, *val});
  }
  if (rows.empty()) throw ValidationError({"training log has no epoch rows"});
  return rows;
}

std::string render_curves_svg(const std::vector<CurveRow>& rows, const std::string& title) {
  constexpr double kW = 640, kH = 400, kLeft = 64, kRight = 24, kTop = 40, kBottom = 56;
  const int x_min = rows.front().epoch, x_max = rows.back().epoch;
  double y_min = rows.front().train, y_max = y_min;
  for (const auto& r : rows) {
    y_min = std::min({y_min, r.train, r.val});
    y_max = std::max({y_max, r.train, r.val});
  }
  if (y_max == y_min) {
    y_min -= 0.5;
    y_max += 0.5;
  }
  const double pad = (y_max - y_min) * 0.05;
  y_min -= pad;
  y_max += pad;
  auto px = [&](double epoch) {
    return x_max == x_min ? kLeft + (kW - kLeft - kRight) / 2 : kLeft + (epoch - x_min) / (x_max - x_min) * (kW - kLeft - kRight);
  };
  auto py = [&](double v) { return kTop + (y_max - v) / (y_max - y_min) * (kH - kTop - kBottom); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH << "\" viewBox=\"0 0 " << kW
      << ' ' << kH << "\" data-x-min=\"" << x_min << "\" data-x-max=\"" << x_max << "\" data-epochs=\"" << rows.size()
      << "\">\n";
  svg << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "  <text x=\"" << kW / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">" << title
      << "</text>\n";
  svg << "  <g stroke=\"black\" stroke-width=\"1\">\n";
  svg << "    <line x1=\"" << kLeft << "\" y1=\"" << kH - kBottom << "\" x2=\"" << kW - kRight << "\" y2=\"" << kH - kBottom << "\"/>\n";
  svg << "    <line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\"" << kH - kBottom << "\"/>\n";
  svg << "  </g>\n";
  const int step = std::max(1, (x_max - x_min + 1) / 12);
  svg << "  <g class=\"x-ticks\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">\n";
  for (int e = x_min; e <= x_max; e += step)
    svg << "    <text x=\"" << fmt(px(e)) << "\" y=\"" << kH - kBottom + 16 << "\">" << e << "</text>\n";
  if ((x_max - x_min) % step != 0)
    svg << "    <text x=\"" << fmt(px(x_max)) << "\" y=\"" << kH - kBottom + 16 << "\">" << x_max << "</text>\n";
  svg << "  </g>\n";
  svg << "  <g class=\"y-ticks\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">\n";
  for (int k = 0; k <= 5; ++k) {
    const double v = y_min + (y_max - y_min) * k / 5;
    svg << "    <text x=\"" << kLeft - 6 << "\" y=\"" << fmt(py(v) + 4) << "\">" << fmt(v, 4) << "</text>\n";
  }
  svg << "  </g>\n";
  svg << "  <text x=\"" << kW / 2 << "\" y=\"" << kH - 14 << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">epoch</text>\n";
  svg << "  <text x=\"16\" y=\"" << kH / 2 << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 16 "
      << kH / 2 << ")\">metric</text>\n";
  auto series = [&](const char* name, const char* color, auto get) {
    svg << "  <polyline class=\"series-" << name << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < rows.size(); ++i) svg << (i ? " " : "") << fmt(px(rows[i].epoch)) << ',' << fmt(py(get(rows[i])));
    svg << "\"/>\n";
  };
  series("train", "#1f77b4", [](const CurveRow& r) { return r.train; });
  series("val", "#ff7f0e", [](const CurveRow& r) { return r.val; });
  svg << "  <g font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "    <line x1=\"" << kW - 150 << "\" y1=\"" << kTop + 8 << "\" x2=\"" << kW - 130 << "\" y2=\"" << kTop + 8
      << "\" stroke=\"#1f77b4\" stroke-width=\"2\"/><text x=\"" << kW - 124 << "\" y=\"" << kTop + 12 << "\">train</text>\n";
  svg << "    <line x1=\"" << kW - 150 << "\" y1=\"" << kTop + 26 << "\" x2=\"" << kW - 130 << "\" y2=\"" << kTop + 26
      << "\" stroke=\"#ff7f0e\" stroke-width=\"2\"/><text x=\"" << kW - 124 << "\" y=\"" << kTop + 30 << "\">validation</text>\n";
  svg << "  </g>\n</svg>\n";
  return svg.str();
}

CurveSummary export_curves(const fs::path& training_log, const fs::path& svg_out) {
  const auto rows = parse_training_log(slurp(training_log, "training log"));
  CurveSummary summary;
  summary.epochs = rows.size();
  summary.x_min = rows.front().epoch;
  summary.x_max = rows.back().epoch;
  summary.svg_path = svg_out;
  summary.csv_path = fs::path(svg_out).replace_extension(".csv");

  const std::string svg = render_curves_svg(rows, "Training and validation (" + training_log.filename().string() + ")");
  std::ostringstream csv;
  csv << "epoch,train,val\n";
  for (const auto& r : rows) csv << r.epoch << ',' << fmt(r.train, 10) << ',' << fmt(r.val, 10) << '\n';

  for (const auto& [path, text] : {std::pair{summary.svg_path, svg}, std::pair{summary.csv_path, csv.str()}}) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out << text;
    if (!out) throw IoError("failed writing '" + path.string() + "'");
  }
  return summary;
}

}  // namespace aeroforge
