#include "tcsim/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "tcsim/errors.hpp"

namespace tcsim {

namespace {

struct Series {
  std::string label;
  std::string color;
  std::vector<double> values;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// Fixed-geometry line chart: x axis is the step index.
void write_chart(const std::string& path, const std::string& title,
                 const std::string& y_label, const SimulationTrace& trace,
                 const std::vector<Series>& series,
                 const std::vector<double>& h_lines) {
  const double width = 880, height = 460;
  const double left = 70, right = 20, top = 40, bottom = 50;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  std::size_t n = 0;
  double y_min = 0.0, y_max = 1.0;
  bool first = true;
  for (const Series& s : series) {
    n = std::max(n, s.values.size());
    for (double v : s.values) {
      if (first) {
        y_min = y_max = v;
        first = false;
      }
      y_min = std::min(y_min, v);
      y_max = std::max(y_max, v);
    }
  }
  for (double v : h_lines) {
    y_min = std::min(y_min, v);
    y_max = std::max(y_max, v);
  }
  if (y_max - y_min < 1e-9) {
    y_min -= 0.5;
    y_max += 0.5;
  }
  const double pad = 0.05 * (y_max - y_min);
  y_min -= pad;
  y_max += pad;

  const double x_max = n > 1 ? static_cast<double>(n - 1) : 1.0;
  auto px = [&](double step) { return left + plot_w * step / x_max; };
  auto py = [&](double v) {
    return top + plot_h * (1.0 - (v - y_min) / (y_max - y_min));
  };

  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("plot: cannot open '" + path + "' for writing");

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
      << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // Fog windows shaded behind everything else.
  for (const auto& [start, end] : trace.config.fog.windows) {
    const double x0 = px(std::clamp<double>(start, 0.0, x_max));
    const double x1 = px(std::clamp<double>(end, 0.0, x_max));
    out << "<rect x=\"" << fmt(x0) << "\" y=\"" << top << "\" width=\""
        << fmt(x1 - x0) << "\" height=\"" << plot_h
        << "\" fill=\"#e8e8e8\"/>\n";
  }

  out << "<text x=\"" << left << "\" y=\"24\" font-family=\"sans-serif\" "
         "font-size=\"16\">"
      << title << "</text>\n";

  // Axes and ticks.
  out << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\""
      << left + plot_w << "\" y2=\"" << top + plot_h
      << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left
      << "\" y2=\"" << top + plot_h << "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 5; ++t) {
    const double step = x_max * t / 5.0;
    const double v = y_min + (y_max - y_min) * t / 5.0;
    out << "<text x=\"" << fmt(px(step)) << "\" y=\"" << top + plot_h + 18
        << "\" font-family=\"sans-serif\" font-size=\"11\" "
           "text-anchor=\"middle\">"
        << fmt(std::round(step)) << "</text>\n";
    out << "<text x=\"" << left - 6 << "\" y=\"" << fmt(py(v) + 4)
        << "\" font-family=\"sans-serif\" font-size=\"11\" "
           "text-anchor=\"end\">"
        << fmt(v) << "</text>\n";
  }
  out << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 12
      << "\" font-family=\"sans-serif\" font-size=\"12\" "
         "text-anchor=\"middle\">step</text>\n";
  out << "<text x=\"16\" y=\"" << top + plot_h / 2
      << "\" font-family=\"sans-serif\" font-size=\"12\" "
         "transform=\"rotate(-90 16 "
      << top + plot_h / 2 << ")\" text-anchor=\"middle\">" << y_label
      << "</text>\n";

  for (double v : h_lines) {
    out << "<line x1=\"" << left << "\" y1=\"" << fmt(py(v)) << "\" x2=\""
        << left + plot_w << "\" y2=\"" << fmt(py(v))
        << "\" stroke=\"#888888\" stroke-dasharray=\"6 4\"/>\n";
  }

  double legend_x = left + 10;
  for (const Series& s : series) {
    out << "<polyline fill=\"none\" stroke=\"" << s.color
        << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.values.size(); ++i) {
      out << fmt(px(static_cast<double>(i))) << ',' << fmt(py(s.values[i]));
      if (i + 1 < s.values.size()) out << ' ';
    }
    out << "\"/>\n";
    out << "<text x=\"" << fmt(legend_x) << "\" y=\"" << top + 16
        << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" << s.color
        << "\">" << s.label << "</text>\n";
    legend_x += 180;
  }

  out << "</svg>\n";
  out.flush();
  if (!out) throw IoError("plot: write failed for '" + path + "'");
}

}  // namespace

void plot_gaps_svg(const SimulationTrace& trace, const std::string& path) {
  Series ph{"preceding-host gap", "#1f77b4", {}};
  Series hf{"host-following gap", "#d62728", {}};
  for (const StepRecord& r : trace.records) {
    ph.values.push_back(r.gap_preceding_host);
    hf.values.push_back(r.gap_host_following);
  }
  write_chart(path, "Bumper-to-bumper gaps", "gap [m]", trace, {ph, hf}, {});
}

void plot_authority_svg(const SimulationTrace& trace, const std::string& path) {
  Series lambda{"lambda_automation", "#2ca02c", {}};
  for (const StepRecord& r : trace.records) {
    lambda.values.push_back(r.lambda_a);
  }
  write_chart(path, "Control authority", "lambda_a", trace, {lambda}, {});
}

void plot_doc_svg(const SimulationTrace& trace, const std::string& path) {
  Series doc{"degree of conflict", "#9467bd", {}};
  for (const StepRecord& r : trace.records) {
    doc.values.push_back(r.doc);
  }
  write_chart(path, "Sensor conflict", "DoC", trace, {doc},
              {trace.config.arbitrator.doc_threshold});
}

}  // namespace tcsim
