#ifndef ALB_SVG_HPP
#define ALB_SVG_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace alb {

namespace svg_detail {

inline const std::vector<std::string>& palette() {
  static const std::vector<std::string> p = {"#1f77b4", "#d62728", "#2ca02c",
                                             "#9467bd", "#ff7f0e", "#8c564b",
                                             "#17becf", "#7f7f7f"};
  return p;
}

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> mean;
  std::vector<double> stddev;
};

inline std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

inline std::string label(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

inline std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

// Stride-compress long series; keeps first and last points.
inline void downsample(Series& s, size_t cap = 1200) {
  if (s.x.size() <= cap) return;
  size_t stride = (s.x.size() + cap - 1) / cap;
  Series out;
  out.name = s.name;
  for (size_t i = 0; i < s.x.size(); i += stride) {
    out.x.push_back(s.x[i]);
    out.mean.push_back(s.mean[i]);
    out.stddev.push_back(s.stddev[i]);
  }
  if (out.x.back() != s.x.back()) {
    out.x.push_back(s.x.back());
    out.mean.push_back(s.mean.back());
    out.stddev.push_back(s.stddev.back());
  }
  s = std::move(out);
}

inline void render(const std::vector<Series>& series, const std::string& x_label,
                   const std::string& y_label, bool bands, bool steps,
                   const std::string& out_path) {
  const double W = 720, H = 480, L = 70, R = 20, T = 24, B = 50;
  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  bool have = false;
  for (const auto& s : series)
    for (size_t i = 0; i < s.x.size(); ++i) {
      double lo = s.mean[i] - (bands ? s.stddev[i] : 0.0);
      double hi = s.mean[i] + (bands ? s.stddev[i] : 0.0);
      if (!have) {
        xmin = xmax = s.x[i];
        ymin = lo;
        ymax = hi;
        have = true;
      } else {
        xmin = std::min(xmin, s.x[i]);
        xmax = std::max(xmax, s.x[i]);
        ymin = std::min(ymin, lo);
        ymax = std::max(ymax, hi);
      }
    }
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) ymax = ymin + 1;
  double ypad = 0.05 * (ymax - ymin);
  ymin -= ypad;
  ymax += ypad;
  auto px = [&](double x) { return L + (x - xmin) / (xmax - xmin) * (W - L - R); };
  auto py = [&](double y) { return H - B - (y - ymin) / (ymax - ymin) * (H - T - B); };

  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\""
      << H << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
  out << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";

  // axes + ticks
  out << "<g stroke=\"#333\" stroke-width=\"1\">\n";
  out << "<line x1=\"" << num(L) << "\" y1=\"" << num(H - B) << "\" x2=\"" << num(W - R)
      << "\" y2=\"" << num(H - B) << "\"/>\n";
  out << "<line x1=\"" << num(L) << "\" y1=\"" << num(T) << "\" x2=\"" << num(L)
      << "\" y2=\"" << num(H - B) << "\"/>\n";
  out << "</g>\n";
  out << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
  for (int i = 0; i <= 4; ++i) {
    double xv = xmin + (xmax - xmin) * i / 4.0;
    double yv = ymin + (ymax - ymin) * i / 4.0;
    out << "<line x1=\"" << num(px(xv)) << "\" y1=\"" << num(H - B) << "\" x2=\""
        << num(px(xv)) << "\" y2=\"" << num(H - B + 4) << "\" stroke=\"#333\"/>\n";
    out << "<text x=\"" << num(px(xv)) << "\" y=\"" << num(H - B + 16)
        << "\" text-anchor=\"middle\">" << label(xv) << "</text>\n";
    out << "<line x1=\"" << num(L - 4) << "\" y1=\"" << num(py(yv)) << "\" x2=\""
        << num(L) << "\" y2=\"" << num(py(yv)) << "\" stroke=\"#333\"/>\n";
    out << "<text x=\"" << num(L - 7) << "\" y=\"" << num(py(yv) + 4)
        << "\" text-anchor=\"end\">" << label(yv) << "</text>\n";
  }
  out << "<text x=\"" << num((L + W - R) / 2) << "\" y=\"" << num(H - 14)
      << "\" text-anchor=\"middle\">" << x_label << "</text>\n";
  out << "<text x=\"16\" y=\"" << num((T + H - B) / 2)
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << num((T + H - B) / 2) << ")\">" << y_label << "</text>\n";
  out << "</g>\n";

  for (size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const std::string& color = palette()[k % palette().size()];
    if (s.x.empty()) continue;
    if (bands) {
      std::string path = "M";
      for (size_t i = 0; i < s.x.size(); ++i)
        path += " " + num(px(s.x[i])) + " " + num(py(s.mean[i] - s.stddev[i]));
      for (size_t i = s.x.size(); i-- > 0;)
        path += " L " + num(px(s.x[i])) + " " + num(py(s.mean[i] + s.stddev[i]));
      path += " Z";
      out << "<path d=\"" << path << "\" fill=\"" << color
          << "\" fill-opacity=\"0.15\" stroke=\"none\"/>\n";
    }
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    if (steps) {
      for (size_t i = 0; i < s.x.size(); ++i) {
        if (i)
          out << num(px(s.x[i])) << "," << num(py(s.mean[i - 1])) << " ";
        out << num(px(s.x[i])) << "," << num(py(s.mean[i])) << " ";
      }
    } else {
      for (size_t i = 0; i < s.x.size(); ++i)
        out << num(px(s.x[i])) << "," << num(py(s.mean[i])) << " ";
    }
    out << "\"/>\n";
  }

  // legend
  out << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  for (size_t k = 0; k < series.size(); ++k) {
    double ly = T + 6 + 16 * static_cast<double>(k);
    out << "<line x1=\"" << num(W - R - 150) << "\" y1=\"" << num(ly) << "\" x2=\""
        << num(W - R - 126) << "\" y2=\"" << num(ly) << "\" stroke=\""
        << palette()[k % palette().size()] << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << num(W - R - 120) << "\" y=\"" << num(ly + 4) << "\">"
        << series[k].name << "</text>\n";
  }
  out << "</g>\n</svg>\n";
}

inline double parse_num(const std::string& s, const std::string& what) {
  try {
    size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error("plot: bad " + what + " value '" + s + "'");
  }
}

}  // namespace svg_detail

// Mean curve per algorithm with a +-1 std band, from a
// round,algorithm,trial,cum_regret file.
inline void plot_regret_csv(const std::string& csv_path, const std::string& out_svg) {
  std::ifstream in(csv_path);
  if (!in) throw std::runtime_error("plot: cannot open '" + csv_path + "'");
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("plot: empty file");
  if (line.rfind("round,algorithm,trial,cum_regret", 0) != 0)
    throw std::runtime_error("plot: '" + csv_path + "' does not have the regret schema");
  // algorithm -> round index -> (sum, sumsq, n)
  std::map<std::string, std::vector<std::array<double, 3>>> acc;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = svg_detail::split_line(line);
    if (cells.size() != 4)
      throw std::runtime_error("plot: malformed regret row '" + line + "'");
    long round = static_cast<long>(svg_detail::parse_num(cells[0], "round"));
    double v = svg_detail::parse_num(cells[3], "cum_regret");
    auto& vec = acc[cells[1]];
    if (static_cast<long>(vec.size()) < round) vec.resize(round, {0.0, 0.0, 0.0});
    auto& cell = vec[round - 1];
    cell[0] += v;
    cell[1] += v * v;
    cell[2] += 1.0;
  }
  std::vector<svg_detail::Series> series;
  for (auto& [name, vec] : acc) {  // std::map keeps algorithm order stable
    svg_detail::Series s;
    s.name = name;
    for (size_t i = 0; i < vec.size(); ++i) {
      double n = vec[i][2];
      if (n == 0.0) continue;
      double m = vec[i][0] / n;
      double var = n > 1 ? std::max(0.0, (vec[i][1] - n * m * m) / (n - 1)) : 0.0;
      s.x.push_back(static_cast<double>(i + 1));
      s.mean.push_back(m);
      s.stddev.push_back(std::sqrt(var));
    }
    svg_detail::downsample(s);
    series.push_back(std::move(s));
  }
  svg_detail::render(series, "round", "cumulative regret", true, false, out_svg);
}

// Step plot of the per-epoch refinement (b_i, support size, or ladder index)
// averaged across trials, from an epoch,algorithm,trial,kind,value file.
inline void plot_snapshot_csv(const std::string& csv_path, const std::string& out_svg) {
  std::ifstream in(csv_path);
  if (!in) throw std::runtime_error("plot: cannot open '" + csv_path + "'");
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("plot: empty file");
  if (line.rfind("epoch,algorithm,trial,kind,value", 0) != 0)
    throw std::runtime_error("plot: '" + csv_path + "' does not have the snapshot schema");
  std::map<std::string, std::map<long, std::pair<double, double>>> acc;  // algo -> epoch -> (sum, n)
  std::string y_label = "refinement value";
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = svg_detail::split_line(line);
    if (cells.size() != 5)
      throw std::runtime_error("plot: malformed snapshot row '" + line + "'");
    long epoch = static_cast<long>(svg_detail::parse_num(cells[0], "epoch"));
    const std::string& kind = cells[3];
    double v = 0.0;
    if (kind == "support") {
      if (!cells[4].empty())
        v = 1.0 + static_cast<double>(std::count(cells[4].begin(), cells[4].end(), '|'));
      y_label = "active coordinates";
    } else if (kind == "b") {
      v = svg_detail::parse_num(cells[4], "b");
      y_label = "norm bound";
    } else if (kind == "ladder") {
      v = svg_detail::parse_num(cells[4], "ladder");
      y_label = "ladder index";
    } else {
      throw std::runtime_error("plot: unknown snapshot kind '" + kind + "'");
    }
    auto& slot = acc[cells[1]][epoch];
    slot.first += v;
    slot.second += 1.0;
  }
  std::vector<svg_detail::Series> series;
  for (auto& [name, per_epoch] : acc) {
    svg_detail::Series s;
    s.name = name;
    for (auto& [epoch, sum_n] : per_epoch) {
      s.x.push_back(static_cast<double>(epoch));
      s.mean.push_back(sum_n.first / sum_n.second);
      s.stddev.push_back(0.0);
    }
    series.push_back(std::move(s));
  }
  svg_detail::render(series, "epoch", y_label, false, true, out_svg);
}

}  // namespace alb

#endif  // ALB_SVG_HPP
