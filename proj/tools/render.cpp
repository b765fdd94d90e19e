// Copyright 2026 The menli Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "commands.hpp"
#include "table.hpp"

namespace menli::cli {

using nlohmann::json;

namespace {

std::string fixed(const json& v, int digits = 4) {
  if (!v.is_number()) return "-";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v.get<double>());
  return buf;
}

std::string str(const json& v) {
  if (v.is_null()) return "-";
  return v.is_string() ? v.get<std::string>() : v.dump();
}

std::string file_safe(std::string s) {
  for (char& ch : s) {
    if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '-' && ch != '_') ch = '_';
  }
  return s;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

void render_evaluate(const json& report, std::ostringstream& out) {
  const auto& pooling = report["pooling"];
  for (const auto& m : report["metrics"]) {
    out << "metric " << str(m["metric_id"]) << "\n";
    if (!m["adversarial"].empty()) {
      Table t({"dataset", "strategy", "accuracy", "correct", "ties", "total", "ed_gap"});
      for (const auto& d : m["adversarial"]) {
        t.add({str(d["dataset"]), str(d["strategy"]), fixed(d["accuracy"]),
               str(d["correct"]), str(d["ties"]), str(d["total"]),
               fixed(d["edit_distance"]["gap"])});
      }
      out << t.render("  ");
      for (const auto& d : m["adversarial"]) {
        out << "  " << str(d["dataset"]) << " per phenomenon\n";
        Table p({"phenomenon", "accuracy", "correct", "ties", "total"});
        for (const auto& [label, g] : d["per_phenomenon"].items()) {
          p.add({label, fixed(g["accuracy"]), str(g["correct"]), str(g["ties"]),
                 str(g["total"])});
        }
        out << p.render("    ");
      }
    }
    if (!m["standard"].empty()) {
      Table t({"dataset", "strategy", "level", "method", "r", "n", "dropped", "note"});
      for (const auto& d : m["standard"]) {
        t.add({str(d["dataset"]), str(d["strategy"]), str(d["level"]), str(d["method"]),
               fixed(d["correlation"]), str(d["n"]), str(d["dropped"]),
               d["degenerate"].get<bool>() ? "2 systems" : ""});
      }
      out << t.render("  ");
    }
    out << "  average accuracy " << fixed(m["average_accuracy"]) << ", average correlation "
        << fixed(m["average_correlation"]) << ", overall " << fixed(m["overall"]) << "\n\n";
  }
  if (pooling.is_object()) {
    out << "pooling " << str(pooling["mode"]) << ": selected " << str(pooling["selected"])
        << "\n";
    if (pooling.contains("win_table")) {
      Table t({"strategy", "adversarial", "standard"});
      for (const auto& r : pooling["win_table"]) {
        t.add({str(r["strategy"]), str(r["adversarial"]), str(r["standard"])});
      }
      out << t.render("  ");
    }
    if (pooling.contains("leave_one_out")) {
      out << "leave-one-out selection\n";
      Table t({"dataset", "nli_metric", "global", "loo", "global_perf", "loo_perf", "delta"});
      for (const auto& r : pooling["leave_one_out"]) {
        t.add({str(r["dataset"]), str(r["nli_metric"]), str(r["global_strategy"]),
               str(r["loo_strategy"]), fixed(r["global_performance"]),
               fixed(r["loo_performance"]), fixed(r["delta"])});
      }
      out << t.render("  ");
    }
  }
}

void render_combine(const json& report, std::ostringstream& out) {
  out << "combination of " << str(report["nli_metric"]) << " (w_nli) and "
      << str(report["base_metric"]) << "\n";
  if (report["pooling"].is_object()) {
    out << "pooling " << str(report["pooling"]["selected"]) << "\n";
  }
  Table t({"w_nli", "accuracy", "correlation", "overall", "dropped"});
  for (const auto& p : report["sweep"]) {
    t.add({fixed(p["w_nli"], 2), fixed(p["accuracy"]), fixed(p["correlation"]),
           fixed(p["overall"]), str(p["dropped"])});
  }
  out << t.render("  ");
  out << "best w_nli " << fixed(report["best"]["w_nli"], 2) << " overall "
      << fixed(report["best"]["overall"]) << "\n";
}

// Minimal SVG canvas with a linear data-to-pixel map.
class Plot {
 public:
  Plot(std::string title, double x0, double x1, double y0, double y1)
      : title_(std::move(title)), x0_(x0), x1_(x1), y0_(y0), y1_(y1) {
    if (x1_ <= x0_) x1_ = x0_ + 1.0;
    if (y1_ <= y0_) y1_ = y0_ + 1.0;
  }
  double px(double x) const { return kLeft + (x - x0_) / (x1_ - x0_) * kWidth; }
  double py(double y) const { return kTop + (1.0 - (y - y0_) / (y1_ - y0_)) * kHeight; }

  void add(const std::string& element) { body_ += element + "\n"; }

  std::string render(const std::string& xlabel, const std::string& ylabel) const {
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kLeft + kWidth + 40
      << "\" height=\"" << kTop + kHeight + 70 << "\" font-family=\"sans-serif\" "
      << "font-size=\"12\">\n";
    s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s << "<text x=\"" << kLeft << "\" y=\"24\" font-size=\"15\">" << xml_escape(title_)
      << "</text>\n";
    s << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" fill=\"none\" stroke=\"#444\"/>\n";
    for (int i = 0; i <= 4; ++i) {
      const double fx = x0_ + (x1_ - x0_) * i / 4.0;
      const double fy = y0_ + (y1_ - y0_) * i / 4.0;
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.2f", fx);
      s << "<text x=\"" << px(fx) << "\" y=\"" << kTop + kHeight + 18
        << "\" text-anchor=\"middle\">" << buf << "</text>\n";
      std::snprintf(buf, sizeof buf, "%.2f", fy);
      s << "<text x=\"" << kLeft - 6 << "\" y=\"" << py(fy) + 4
        << "\" text-anchor=\"end\">" << buf << "</text>\n";
    }
    s << "<text x=\"" << kLeft + kWidth / 2 << "\" y=\"" << kTop + kHeight + 42
      << "\" text-anchor=\"middle\">" << xml_escape(xlabel) << "</text>\n";
    s << "<text x=\"16\" y=\"" << kTop + kHeight / 2 << "\" text-anchor=\"middle\" "
      << "transform=\"rotate(-90 16 " << kTop + kHeight / 2 << ")\">" << xml_escape(ylabel)
      << "</text>\n";
    s << body_ << "</svg>\n";
    return s.str();
  }

  static constexpr double kLeft = 70;
  static constexpr double kTop = 40;
  static constexpr double kWidth = 480;
  static constexpr double kHeight = 320;

 private:
  std::string title_;
  double x0_, x1_, y0_, y1_;
  std::string body_;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string bar_chart(const std::string& title, const json& groups) {
  const std::size_t n = std::max<std::size_t>(groups.size(), 1);
  Plot plot(title, 0.0, static_cast<double>(n), 0.0, 1.0);
  std::size_t i = 0;
  const double slot = Plot::kWidth / static_cast<double>(n);
  for (const auto& [label, g] : groups.items()) {
    const double acc = g["accuracy"].get<double>();
    const double x = Plot::kLeft + slot * static_cast<double>(i) + slot * 0.15;
    plot.add("<rect x=\"" + num(x) + "\" y=\"" + num(plot.py(acc)) + "\" width=\"" +
             num(slot * 0.7) + "\" height=\"" + num(plot.py(0.0) - plot.py(acc)) +
             "\" fill=\"#4c78a8\"><title>" + xml_escape(label) + " " + num(acc) +
             "</title></rect>");
    plot.add("<text x=\"" + num(x + slot * 0.35) + "\" y=\"" + num(Plot::kTop + 12) +
             "\" text-anchor=\"middle\" font-size=\"9\">" + xml_escape(label) + "</text>");
    ++i;
  }
  return plot.render("phenomenon", "accuracy");
}

std::string sweep_plot(const json& report) {
  // Accuracy against correlation when both exist, otherwise against w.
  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<double> ws;
  bool both = true;
  for (const auto& p : report["sweep"]) {
    if (!p["accuracy"].is_number() || !p["correlation"].is_number()) both = false;
  }
  std::string xlabel = both ? "standard correlation" : "w_nli";
  std::string ylabel = "adversarial accuracy";
  for (const auto& p : report["sweep"]) {
    const double w = p["w_nli"].get<double>();
    ws.push_back(w);
    if (both) {
      xs.push_back(p["correlation"].get<double>());
      ys.push_back(p["accuracy"].get<double>());
    } else {
      xs.push_back(w);
      const auto& y = p["accuracy"].is_number() ? p["accuracy"] : p["correlation"];
      if (!p["accuracy"].is_number()) ylabel = "standard correlation";
      ys.push_back(y.is_number() ? y.get<double>() : 0.0);
    }
  }
  const auto [xmin, xmax] = std::minmax_element(xs.begin(), xs.end());
  const auto [ymin, ymax] = std::minmax_element(ys.begin(), ys.end());
  const double xpad = std::max(0.02, (*xmax - *xmin) * 0.1);
  const double ypad = std::max(0.02, (*ymax - *ymin) * 0.1);
  Plot plot("w_nli sweep: " + str(report["nli_metric"]) + " + " + str(report["base_metric"]),
            *xmin - xpad, *xmax + xpad, *ymin - ypad, *ymax + ypad);
  std::string path;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    path += (i == 0 ? "M" : " L") + num(plot.px(xs[i])) + " " + num(plot.py(ys[i]));
  }
  plot.add("<path d=\"" + path + "\" fill=\"none\" stroke=\"#e45756\" stroke-width=\"2\"/>");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    plot.add("<circle cx=\"" + num(plot.px(xs[i])) + "\" cy=\"" + num(plot.py(ys[i])) +
             "\" r=\"3.5\" fill=\"#e45756\"/>");
    plot.add("<text x=\"" + num(plot.px(xs[i]) + 5) + "\" y=\"" + num(plot.py(ys[i]) - 5) +
             "\" font-size=\"9\">w=" + num(ws[i]).substr(0, 3) + "</text>");
  }
  return plot.render(xlabel, ylabel);
}

}  // namespace

std::string render_text(const json& report) {
  std::ostringstream out;
  const auto command = report.value("command", "");
  if (command == "evaluate") {
    render_evaluate(report, out);
  } else if (command == "combine") {
    render_combine(report, out);
  }
  return out.str();
}

std::vector<fs::path> render_svg(const json& report, const fs::path& dir) {
  std::vector<fs::path> out;
  const auto command = report.value("command", "");
  if (command == "evaluate") {
    for (const auto& m : report["metrics"]) {
      for (const auto& d : m["adversarial"]) {
        const auto path = dir / ("accuracy_" + file_safe(str(m["metric_id"])) + "_" +
                                 file_safe(str(d["dataset"])) + ".svg");
        write_if_changed(path, bar_chart(str(m["metric_id"]) + " on " + str(d["dataset"]),
                                         d["per_phenomenon"]));
        out.push_back(path);
      }
    }
  } else if (command == "combine" && !report["sweep"].empty()) {
    const auto path = dir / "sweep.svg";
    write_if_changed(path, sweep_plot(report));
    out.push_back(path);
  }
  return out;
}

}  // namespace menli::cli
