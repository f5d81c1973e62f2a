// Copyright 2026 The TOP-RL Authors. All rights reserved.
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

#include "top/plot.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>

#include "top/aggregate.h"
#include "top/metrics.h"

namespace top {
namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 170.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string Num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", x);
  return buf;
}

std::string Tick(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", x);
  return buf;
}

std::string Escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

std::vector<std::string> RequireColumns(const CsvTable& t,
                                        const std::string& path,
                                        const std::vector<std::string>& cols) {
  std::vector<std::string> missing;
  for (const std::string& c : cols) {
    if (t.Column(c) < 0) missing.push_back(c);
  }
  if (!missing.empty()) {
    std::string msg = path + ": schema mismatch, missing column(s):";
    for (const std::string& m : missing) msg += " '" + m + "'";
    throw SchemaError(msg);
  }
  return cols;
}

double Cell(const CsvTable& t, const std::vector<std::string>& row,
            const std::string& path, int col, size_t line) {
  if (static_cast<size_t>(col) >= row.size()) {
    throw SchemaError(path + ": row " + std::to_string(line) + " has only " +
                      std::to_string(row.size()) + " columns, column '" +
                      t.header[col] + "' missing");
  }
  try {
    const auto v = ParseCell(row[col]);
    return v.value_or(std::numeric_limits<double>::quiet_NaN());
  } catch (const std::exception&) {
    throw SchemaError(path + ": row " + std::to_string(line) + ", column '" +
                      t.header[col] + "': not a number '" + row[col] + "'");
  }
}

// Step -> values across runs; turned into mean +- std/2 series.
PlotSeries Combine(const std::string& label,
                   const std::vector<std::map<int64_t, double>>& runs) {
  std::map<int64_t, std::vector<double>> by_step;
  for (const auto& run : runs) {
    for (const auto& [step, v] : run) by_step[step].push_back(v);
  }
  PlotSeries s;
  s.label = label;
  for (const auto& [step, values] : by_step) {
    const MeanStd ms = SampleMeanStd(values);
    s.x.push_back(static_cast<double>(step));
    s.y.push_back(ms.mean);
    if (runs.size() > 1) s.band.push_back(0.5 * ms.std);
  }
  return s;
}

}  // namespace

std::string RenderLineChartSvg(const std::string& title,
                               const std::string& x_label,
                               const std::string& y_label,
                               const std::vector<PlotSeries>& series) {
  double x_lo = std::numeric_limits<double>::infinity();
  double x_hi = -x_lo;
  double y_lo = x_lo;
  double y_hi = -x_lo;
  for (const PlotSeries& s : series) {
    for (size_t i = 0; i < s.x.size(); ++i) {
      const double band = s.band.empty() ? 0.0 : s.band[i];
      x_lo = std::min(x_lo, s.x[i]);
      x_hi = std::max(x_hi, s.x[i]);
      y_lo = std::min(y_lo, s.y[i] - band);
      y_hi = std::max(y_hi, s.y[i] + band);
    }
  }
  if (!std::isfinite(x_lo)) {
    x_lo = 0.0;
    x_hi = 1.0;
    y_lo = 0.0;
    y_hi = 1.0;
  }
  if (x_hi == x_lo) {
    x_lo -= 0.5;
    x_hi += 0.5;
  }
  if (y_hi == y_lo) {
    const double pad = std::max(0.5, 0.1 * std::abs(y_lo));
    y_lo -= pad;
    y_hi += pad;
  }
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * plot_w; };
  auto py = [&](double y) {
    return kTop + (1.0 - (y - y_lo) / (y_hi - y_lo)) * plot_h;
  };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + Num(kWidth) +
         "\" height=\"" + Num(kHeight) + "\" font-family=\"sans-serif\" " +
         "font-size=\"12\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + Num(kLeft) + "\" y=\"24\" font-size=\"15\">" +
         Escape(title) + "</text>\n";
  svg += "<rect x=\"" + Num(kLeft) + "\" y=\"" + Num(kTop) + "\" width=\"" +
         Num(plot_w) + "\" height=\"" + Num(plot_h) +
         "\" fill=\"none\" stroke=\"#333\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double fx = x_lo + (x_hi - x_lo) * i / 4.0;
    const double fy = y_lo + (y_hi - y_lo) * i / 4.0;
    svg += "<text x=\"" + Num(px(fx)) + "\" y=\"" + Num(kTop + plot_h + 18) +
           "\" text-anchor=\"middle\">" + Tick(fx) + "</text>\n";
    svg += "<text x=\"" + Num(kLeft - 6) + "\" y=\"" + Num(py(fy) + 4) +
           "\" text-anchor=\"end\">" + Tick(fy) + "</text>\n";
    svg += "<line x1=\"" + Num(kLeft) + "\" x2=\"" + Num(kLeft + plot_w) +
           "\" y1=\"" + Num(py(fy)) + "\" y2=\"" + Num(py(fy)) +
           "\" stroke=\"#ddd\"/>\n";
  }
  svg += "<text x=\"" + Num(kLeft + plot_w / 2) + "\" y=\"" +
         Num(kHeight - 10) + "\" text-anchor=\"middle\">" + Escape(x_label) +
         "</text>\n";
  svg += "<text transform=\"translate(16," + Num(kTop + plot_h / 2) +
         ") rotate(-90)\" text-anchor=\"middle\">" + Escape(y_label) +
         "</text>\n";

  for (size_t si = 0; si < series.size(); ++si) {
    const PlotSeries& s = series[si];
    const char* color = kPalette[si % std::size(kPalette)];
    if (!s.band.empty() && !s.x.empty()) {
      std::string pts;
      for (size_t i = 0; i < s.x.size(); ++i) {
        pts += Num(px(s.x[i])) + ',' + Num(py(s.y[i] + s.band[i])) + ' ';
      }
      for (size_t i = s.x.size(); i-- > 0;) {
        pts += Num(px(s.x[i])) + ',' + Num(py(s.y[i] - s.band[i])) + ' ';
      }
      svg += "<polygon class=\"band\" points=\"" + pts + "\" fill=\"" + color +
             "\" fill-opacity=\"0.2\" stroke=\"none\"/>\n";
    }
    std::string pts;
    for (size_t i = 0; i < s.x.size(); ++i) {
      pts += Num(px(s.x[i])) + ',' + Num(py(s.y[i])) + ' ';
    }
    svg += "<polyline class=\"curve\" points=\"" + pts +
           "\" fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.8\"/>\n";
    const double ly = kTop + 14 + 18 * static_cast<double>(si);
    svg += "<line x1=\"" + Num(kWidth - kRight + 12) + "\" x2=\"" +
           Num(kWidth - kRight + 32) + "\" y1=\"" + Num(ly) + "\" y2=\"" +
           Num(ly) + "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + Num(kWidth - kRight + 38) + "\" y=\"" +
           Num(ly + 4) + "\">" + Escape(s.label) + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

PlotData LoadPlotData(const std::vector<std::string>& csv_paths) {
  PlotData data;
  std::vector<std::map<int64_t, double>> reward_runs;
  std::vector<std::map<int64_t, double>> optimism_runs;
  for (const std::string& path : csv_paths) {
    const CsvTable t = ReadCsv(path);
    if (t.Column("eval_return_mean") >= 0) {
      RequireColumns(t, path,
                     {"variant", "step", "eval_return_mean", "eval_return_std",
                      "optimism_mean", "optimism_std"});
      std::map<std::string, PlotSeries> reward;
      std::map<std::string, PlotSeries> optimism;
      std::vector<std::string> order;
      const int vc = t.Column("variant");
      for (size_t i = 0; i < t.rows.size(); ++i) {
        const auto& row = t.rows[i];
        const std::string& variant = row.at(vc);
        if (!reward.count(variant)) order.push_back(variant);
        const double step = Cell(t, row, path, t.Column("step"), i + 2);
        const double em = Cell(t, row, path, t.Column("eval_return_mean"), i + 2);
        const double es = Cell(t, row, path, t.Column("eval_return_std"), i + 2);
        const double om = Cell(t, row, path, t.Column("optimism_mean"), i + 2);
        const double os = Cell(t, row, path, t.Column("optimism_std"), i + 2);
        PlotSeries& r = reward[variant];
        PlotSeries& o = optimism[variant];
        r.label = o.label = variant;
        if (std::isfinite(em)) {
          r.x.push_back(step);
          r.y.push_back(em);
          r.band.push_back(0.5 * (std::isfinite(es) ? es : 0.0));
        }
        if (std::isfinite(om)) {
          o.x.push_back(step);
          o.y.push_back(om);
          o.band.push_back(0.5 * (std::isfinite(os) ? os : 0.0));
        }
      }
      for (const std::string& v : order) {
        if (!reward[v].x.empty()) data.reward.push_back(reward[v]);
        if (!optimism[v].x.empty()) data.optimism.push_back(optimism[v]);
      }
    } else if (t.Column("optimism") >= 0) {
      RequireColumns(t, path, {"episode", "step", "arm", "beta", "optimism"});
      std::map<int64_t, double> run;
      for (size_t i = 0; i < t.rows.size(); ++i) {
        run[static_cast<int64_t>(Cell(t, t.rows[i], path, t.Column("step"), i + 2))] =
            Cell(t, t.rows[i], path, t.Column("optimism"), i + 2);
      }
      optimism_runs.push_back(std::move(run));
    } else {
      RequireColumns(t, path,
                     {"step", "episode", "env_name", "seed", "beta",
                      "episode_return", "eval_return"});
      std::map<int64_t, double> run;
      const int sc = t.Column("step");
      const int ec = t.Column("eval_return");
      for (size_t i = 0; i < t.rows.size(); ++i) {
        const double v = Cell(t, t.rows[i], path, ec, i + 2);
        if (std::isfinite(v)) {
          run[static_cast<int64_t>(Cell(t, t.rows[i], path, sc, i + 2))] = v;
        }
      }
      reward_runs.push_back(std::move(run));
    }
  }
  if (!reward_runs.empty()) {
    const std::string label =
        reward_runs.size() == 1 ? "run"
                                : "mean of " + std::to_string(reward_runs.size()) +
                                      " runs";
    data.reward.push_back(Combine(label, reward_runs));
  }
  if (!optimism_runs.empty()) {
    const std::string label =
        optimism_runs.size() == 1
            ? "run"
            : "mean of " + std::to_string(optimism_runs.size()) + " runs";
    data.optimism.push_back(Combine(label, optimism_runs));
  }
  return data;
}

std::vector<std::string> WritePlots(const PlotData& data,
                                    const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::vector<std::string> written;
  auto write = [&](const std::string& name, const std::string& svg) {
    const std::string path = (std::filesystem::path(out_dir) / name).string();
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << svg;
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    written.push_back(path);
  };
  if (!data.reward.empty()) {
    write("reward.svg", RenderLineChartSvg("Evaluation return", "environment step",
                                           "return", data.reward));
  }
  if (!data.optimism.empty()) {
    write("optimism.svg",
          RenderLineChartSvg("Mean optimism", "environment step",
                             "optimism (1 = most optimistic arm)",
                             data.optimism));
  }
  return written;
}

}  // namespace top
