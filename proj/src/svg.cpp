#include "hoed/svg.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <optional>

#include "hoed/error.hpp"
#include "hoed/text.hpp"

namespace hoed::svg {

namespace {

constexpr std::array<const char*, 10> kPalette{"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                            "#17becf", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22"};

// Fixed two-decimal coordinates keep files small and byte-stable.
std::string num(double v) {
  if (!std::isfinite(v)) return "0";
  if (std::abs(v) < 0.005) v = 0.0;
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 2);
  return std::string(buf, r.ptr);
}

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", std::abs(v) < 1e-12 ? 0.0 : v);
  return buf;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  bool empty() const { return lo > hi; }
  Range padded() const {
    Range r = *this;
    if (r.empty()) return {0.0, 1.0};
    const double span = r.hi - r.lo;
    const double pad = span > 0 ? 0.05 * span : std::max(0.5, 0.05 * std::abs(r.lo));
    r.lo -= pad;
    r.hi += pad;
    return r;
  }
};

std::vector<double> nice_ticks(Range r, int target = 5) {
  const double span = r.hi - r.lo;
  if (!(span > 0)) return {r.lo};
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0})
    if (m * mag >= raw) {
      step = m * mag;
      break;
    }
  std::vector<double> ticks;
  for (double t = std::ceil(r.lo / step) * step; t <= r.hi + 1e-9 * step; t += step) ticks.push_back(t);
  return ticks;
}

class Document {
 public:
  Document(int width, int height, std::string_view title) : width_(width), height_(height) {
    out_ = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out_ += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) + "\" height=\"" +
            std::to_string(height) + "\" viewBox=\"0 0 " + std::to_string(width) + " " + std::to_string(height) +
            "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    out_ += "<title>" + escape(title) + "</title>\n";
    out_ += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(width) + "\" height=\"" + std::to_string(height) +
            "\" fill=\"#ffffff\"/>\n";
    text(width / 2.0, 20, title, "middle", "title", 14);
  }

  void raw(std::string_view s) { out_ += s; }

  void text(double x, double y, std::string_view s, std::string_view anchor = "start", std::string_view cls = {},
            int size = 0) {
    out_ += "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" text-anchor=\"" + std::string(anchor) + "\"";
    if (!cls.empty()) out_ += " class=\"" + std::string(cls) + "\"";
    if (size) out_ += " font-size=\"" + std::to_string(size) + "\"";
    out_ += ">" + escape(s) + "</text>\n";
  }

  void line(double x1, double y1, double x2, double y2, std::string_view stroke, double width = 1.0,
            std::string_view cls = {}, std::string_view extra = {}) {
    out_ += "<line";
    if (!cls.empty()) out_ += " class=\"" + std::string(cls) + "\"";
    out_ += " x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) + "\" y2=\"" + num(y2) +
            "\" stroke=\"" + std::string(stroke) + "\" stroke-width=\"" + num(width) + "\"";
    if (!extra.empty()) out_ += " " + std::string(extra);
    out_ += "/>\n";
  }

  void polyline(const std::vector<std::pair<double, double>>& pts, std::string_view stroke, double width,
                std::string_view attrs = {}) {
    if (pts.empty()) return;
    out_ += "<polyline fill=\"none\" stroke=\"" + std::string(stroke) + "\" stroke-width=\"" + num(width) + "\"";
    if (!attrs.empty()) out_ += " " + std::string(attrs);
    out_ += " points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i) out_ += ' ';
      out_ += num(pts[i].first) + "," + num(pts[i].second);
    }
    out_ += "\"/>\n";
  }

  std::string finish() {
    out_ += "</svg>\n";
    return std::move(out_);
  }

  int width() const { return width_; }
  int height() const { return height_; }

 private:
  int width_;
  int height_;
  std::string out_;
};

// Maps data coordinates into a pixel rectangle and draws labelled axes.
struct Axes {
  double left, top, width, height;
  Range xr, yr;

  double px(double x) const { return left + (x - xr.lo) / (xr.hi - xr.lo) * width; }
  double py(double y) const { return top + height - (y - yr.lo) / (yr.hi - yr.lo) * height; }

  void draw(Document& doc, std::string_view xlabel, std::string_view ylabel, std::string_view title = {}) const {
    doc.raw("<g class=\"axes\">\n");
    doc.raw("<rect x=\"" + num(left) + "\" y=\"" + num(top) + "\" width=\"" + num(width) + "\" height=\"" +
            num(height) + "\" fill=\"none\" stroke=\"#444444\"/>\n");
    for (double t : nice_ticks(xr)) {
      doc.line(px(t), top + height, px(t), top + height + 4, "#444444");
      doc.text(px(t), top + height + 15, tick_label(t), "middle");
    }
    for (double t : nice_ticks(yr)) {
      doc.line(left - 4, py(t), left, py(t), "#444444");
      doc.text(left - 6, py(t) + 4, tick_label(t), "end");
    }
    if (!xlabel.empty()) doc.text(left + width / 2, top + height + 30, xlabel, "middle");
    if (!ylabel.empty()) doc.text(left - 8, top - 8, ylabel, "start");
    if (!title.empty()) doc.text(left + width / 2, top - 8, title, "middle", "panel-title", 12);
    doc.raw("</g>\n");
  }
};

[[noreturn]] void empty_plot(std::string_view what) {
  throw Error(ErrorKind::EmptyPlot, "nothing to plot: " + std::string(what));
}

// Splits (year, value) samples into polylines that break at missing values and year gaps.
std::vector<std::vector<std::pair<double, double>>> pieces(const std::vector<std::pair<int, std::optional<double>>>& s,
                                                          const Axes& ax) {
  std::vector<std::vector<std::pair<double, double>>> out;
  std::optional<int> last;
  for (const auto& [year, v] : s) {
    if (!v || !std::isfinite(*v)) {
      last.reset();
      continue;
    }
    if (!last || *last + 1 != year) out.emplace_back();
    out.back().emplace_back(ax.px(year), ax.py(*v));
    last = year;
  }
  return out;
}

void legend(Document& doc, double x, double y, const std::vector<std::string>& names) {
  doc.raw("<g class=\"legend\">\n");
  for (std::size_t i = 0; i < names.size(); ++i) {
    const double yy = y + 14.0 * static_cast<double>(i);
    doc.line(x, yy - 4, x + 16, yy - 4, kPalette[i % kPalette.size()], 2);
    doc.text(x + 20, yy, names[i]);
  }
  doc.raw("</g>\n");
}

std::array<double, 3> ramp(double t) {
  // Perceptual dark-blue to yellow ramp, piecewise linear through five stops.
  static constexpr std::array<std::array<double, 3>, 5> stops{{{68, 1, 84}, {59, 82, 139}, {33, 145, 140},
                                                               {94, 201, 98}, {253, 231, 37}}};
  t = std::clamp(t, 0.0, 1.0) * 4.0;
  const auto i = std::min<std::size_t>(3, static_cast<std::size_t>(t));
  const double f = t - static_cast<double>(i);
  std::array<double, 3> c{};
  for (int k = 0; k < 3; ++k) c[k] = stops[i][k] + f * (stops[i + 1][k] - stops[i][k]);
  return c;
}

std::string hex_color(const std::array<double, 3>& c) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(std::lround(c[0])),
                static_cast<int>(std::lround(c[1])), static_cast<int>(std::lround(c[2])));
  return buf;
}

}  // namespace

PlotKind parse_plot_kind(std::string_view name) {
  if (name == "elasticity") return PlotKind::Elasticity;
  if (name == "indicators") return PlotKind::Indicators;
  if (name == "phase") return PlotKind::Phase;
  if (name == "scalogram") return PlotKind::Scalogram;
  if (name == "persistence") return PlotKind::Persistence;
  if (name == "graph") return PlotKind::Graph;
  throw Error(ErrorKind::Parameter, "unknown plot kind '" + std::string(name) +
                                        "' (elasticity, indicators, phase, scalogram, persistence, graph)");
}

std::string to_string(PlotKind kind) {
  switch (kind) {
    case PlotKind::Elasticity: return "elasticity";
    case PlotKind::Indicators: return "indicators";
    case PlotKind::Phase: return "phase";
    case PlotKind::Scalogram: return "scalogram";
    case PlotKind::Persistence: return "persistence";
    case PlotKind::Graph: return "graph";
  }
  return "graph";
}

std::string render_elasticity(const std::vector<ElasticitySeries>& series) {
  Range xr, yr;
  std::vector<std::string> entities;
  for (const auto& s : series) {
    for (const auto& p : s.points) {
      xr.add(p.year);
      yr.add(p.epsilon);
    }
    if (!s.points.empty() && (entities.empty() || entities.back() != s.entity)) entities.push_back(s.entity);
  }
  if (xr.empty()) empty_plot("elasticity series have no points");

  const int window = series.front().window;
  Document doc(760, 460, "Rolling elasticity (w = " + std::to_string(window) + ")");
  Axes ax{70, 50, 540, 350, xr.padded(), yr.padded()};
  ax.draw(doc, "year", "epsilon");
  std::map<std::string, std::size_t> colour;
  for (const auto& e : entities) colour.emplace(e, colour.size());
  for (const auto& s : series) {
    std::vector<std::pair<int, std::optional<double>>> samples;
    for (const auto& p : s.points) samples.emplace_back(p.year, p.epsilon);
    const auto c = kPalette[colour[s.entity] % kPalette.size()];
    for (const auto& piece : pieces(samples, ax))
      doc.polyline(piece, c, 1.2, "class=\"series\" data-entity=\"" + escape(s.entity) + "\"");
  }
  if (entities.size() <= 20) legend(doc, 625, 60, entities);
  return doc.finish();
}

std::string render_indicators(const std::vector<IndicatorFrame>& frames) {
  using Field = std::optional<double> IndicatorRecord::*;
  static const std::array<std::pair<const char*, Field>, 6> fields{
      {{"power", &IndicatorRecord::power},
       {"kei", &IndicatorRecord::kei},
       {"inertia", &IndicatorRecord::inertia},
       {"smoothness", &IndicatorRecord::smoothness},
       {"drift", &IndicatorRecord::drift},
       {"shock", &IndicatorRecord::shock}}};

  bool any = false;
  for (const auto& f : frames) any = any || !f.records.empty();
  if (!any) empty_plot("indicator frames have no records");

  const std::string title =
      frames.size() == 1 ? "Indicators: " + frames.front().entity : "Indicators (mean of " + std::to_string(frames.size()) + " series)";
  Document doc(960, 600, title);
  for (std::size_t k = 0; k < fields.size(); ++k) {
    const auto& [name, field] = fields[k];
    std::map<int, std::pair<double, std::size_t>> mean;
    Range xr, yr;
    for (const auto& f : frames)
      for (const auto& r : f.records) {
        xr.add(r.year);
        if (const auto v = r.*field; v && std::isfinite(*v)) {
          yr.add(*v);
          mean[r.year].first += *v;
          ++mean[r.year].second;
        }
      }
    const double left = 70 + static_cast<double>(k % 3) * 300;
    const double top = 60 + static_cast<double>(k / 3) * 270;
    Axes ax{left, top, 220, 190, xr.padded(), yr.padded()};
    doc.raw(std::string("<g class=\"panel\" data-indicator=\"") + name + "\">\n");
    ax.draw(doc, "year", {}, name);
    if (frames.size() > 1)
      for (const auto& f : frames) {
        std::vector<std::pair<int, std::optional<double>>> samples;
        for (const auto& r : f.records) samples.emplace_back(r.year, r.*field);
        for (const auto& piece : pieces(samples, ax)) doc.polyline(piece, "#c7c7c7", 0.6, "class=\"member\"");
      }
    std::vector<std::pair<int, std::optional<double>>> avg;
    for (const auto& [year, sc] : mean) avg.emplace_back(year, sc.first / static_cast<double>(sc.second));
    for (const auto& piece : pieces(avg, ax)) doc.polyline(piece, kPalette[0], 1.6, "class=\"mean\"");
    doc.raw("</g>\n");
  }
  return doc.finish();
}

std::string render_phase(const std::vector<PhaseTrajectory>& trajectories) {
  Range xr, yr;
  for (const auto& t : trajectories)
    for (const auto& p : t.points) {
      if (p.empty()) continue;
      xr.add(p[0]);
      yr.add(p.size() > 1 ? p[1] : 0.0);
    }
  if (xr.empty()) empty_plot("phase trajectories have no points");

  const auto& e = trajectories.front().embedding;
  const bool direct = e.kind == Embedding::Kind::Direct;
  Document doc(760, 500, "Phase space, " + e.label() + (trajectories.front().standardized ? ", standardized" : ""));
  Axes ax{70, 50, 520, 400, xr.padded(), yr.padded()};
  ax.draw(doc, direct ? "epsilon" : "x(t)", direct ? "velocity" : "x(t - tau)");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < trajectories.size(); ++i) {
    const auto& t = trajectories[i];
    const auto c = kPalette[i % kPalette.size()];
    std::vector<std::pair<double, double>> pts;
    for (const auto& p : t.points)
      if (!p.empty()) pts.emplace_back(ax.px(p[0]), ax.py(p.size() > 1 ? p[1] : 0.0));
    if (pts.empty()) continue;
    names.push_back(t.id);
    doc.raw("<g class=\"trajectory\" data-id=\"" + escape(t.id) + "\">\n");
    doc.polyline(pts, c, 1.2);
    doc.raw("<circle class=\"start\" cx=\"" + num(pts.front().first) + "\" cy=\"" + num(pts.front().second) +
            "\" r=\"3\" fill=\"" + c + "\"/>\n");
    doc.raw("</g>\n");
  }
  if (names.size() <= 20) legend(doc, 605, 60, names);
  return doc.finish();
}

std::string render_scalogram(const Scalogram& sg) {
  const auto nt = sg.times.size();
  const auto ns = sg.scales.size();
  if (nt == 0 || ns == 0 || sg.power.size() != nt * ns) empty_plot("scalogram has no cells");

  double peak = 0.0;
  for (double p : sg.power)
    if (std::isfinite(p)) peak = std::max(peak, p);

  const double left = 80, top = 50;
  const double cw = std::max(2.0, std::min(16.0, 640.0 / static_cast<double>(nt)));
  const double ch = std::max(2.0, std::min(16.0, 400.0 / static_cast<double>(ns)));
  const int width = static_cast<int>(left + cw * static_cast<double>(nt) + 110);
  const int height = static_cast<int>(top + ch * static_cast<double>(ns) + 60);
  Document doc(width, height, "Wavelet power" + (sg.id.empty() ? std::string() : ": " + sg.id));
  doc.raw(
      "<defs><pattern id=\"coi-hatch\" patternUnits=\"userSpaceOnUse\" width=\"6\" height=\"6\" "
      "patternTransform=\"rotate(45)\"><line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"6\" stroke=\"#ffffff\" "
      "stroke-width=\"2\" stroke-opacity=\"0.7\"/></pattern></defs>\n");

  // Small scales on top, as in period-axis scalograms.
  for (std::size_t s = 0; s < ns; ++s) {
    double sum = 0.0;
    for (std::size_t t = 0; t < nt; ++t) sum += sg.at(s, t);
    const double y = top + ch * static_cast<double>(s);
    doc.raw("<g class=\"row\" data-scale=\"" + text::format_real(sg.scales[s]) + "\" data-sum=\"" +
            text::format_real(sum) + "\">\n");
    for (std::size_t t = 0; t < nt; ++t) {
      const double v = sg.at(s, t);
      const double x = left + cw * static_cast<double>(t);
      doc.raw("<rect class=\"cell\" x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(cw) +
              "\" height=\"" + num(ch) + "\" fill=\"" + hex_color(ramp(peak > 0 ? v / peak : 0.0)) +
              "\" data-v=\"" + text::format_real(v) + "\"/>\n");
    }
    doc.raw("</g>\n");
  }
  doc.raw("<g class=\"coi\">\n");
  for (std::size_t s = 0; s < ns; ++s)
    for (std::size_t t = 0; t < nt; ++t)
      if (!sg.inside_coi(s, t))
        doc.raw("<rect class=\"outside-coi\" x=\"" + num(left + cw * static_cast<double>(t)) + "\" y=\"" +
                num(top + ch * static_cast<double>(s)) + "\" width=\"" + num(cw) + "\" height=\"" + num(ch) +
                "\" fill=\"url(#coi-hatch)\"/>\n");
  doc.raw("</g>\n");

  doc.raw("<g class=\"axes\">\n");
  const std::size_t tstep = std::max<std::size_t>(1, nt / 8);
  for (std::size_t t = 0; t < nt; t += tstep)
    doc.text(left + cw * (static_cast<double>(t) + 0.5), top + ch * static_cast<double>(ns) + 15,
             std::to_string(sg.times[t]), "middle");
  const std::size_t sstep = std::max<std::size_t>(1, ns / 8);
  for (std::size_t s = 0; s < ns; s += sstep)
    doc.text(left - 6, top + ch * (static_cast<double>(s) + 0.5) + 4, tick_label(sg.scales[s]), "end");
  doc.text(left - 6, top - 8, "scale", "end");
  doc.text(left + cw * static_cast<double>(nt) / 2, top + ch * static_cast<double>(ns) + 32, "time", "middle");
  doc.raw("</g>\n");

  // Colour bar.
  const double bx = left + cw * static_cast<double>(nt) + 20;
  doc.raw("<g class=\"colorbar\">\n");
  for (int i = 0; i < 20; ++i) {
    const double f = 1.0 - i / 19.0;
    doc.raw("<rect x=\"" + num(bx) + "\" y=\"" + num(top + 10.0 * i) + "\" width=\"14\" height=\"10\" fill=\"" +
            hex_color(ramp(f)) + "\"/>\n");
  }
  doc.text(bx + 18, top + 9, tick_label(peak));
  doc.text(bx + 18, top + 200, "0");
  doc.raw("</g>\n");
  return doc.finish();
}

std::string render_persistence(const PersistenceDiagram& pd, std::string_view title) {
  if (pd.pairs.empty() && pd.infinite_births.empty()) empty_plot("persistence diagram has no pairs");
  double top_value = 0.0;
  for (const auto& p : pd.pairs) top_value = std::max({top_value, p.death, p.birth});
  for (double b : pd.infinite_births) top_value = std::max(top_value, b);
  if (!(top_value > 0)) top_value = 1.0;
  top_value *= 1.1;

  Document doc(520, 540, "H" + std::to_string(pd.degree) + " persistence" +
                             (title.empty() ? std::string() : ": " + std::string(title)));
  const double band = 30;  // infinite deaths are drawn in a band above the finite axis range
  Axes ax{70, 50 + band, 400, 400, Range{0.0, top_value}, Range{0.0, top_value}};
  ax.draw(doc, "birth", "death");
  doc.line(ax.px(0), ax.py(0), ax.px(top_value), ax.py(top_value), "#888888", 1, "diagonal",
           "stroke-dasharray=\"4 3\"");
  const double band_y = ax.top - band / 2;
  doc.line(ax.left, ax.top - band, ax.left + ax.width, ax.top - band, "#dddddd", 1, "infinity-band");
  doc.text(ax.left - 6, band_y + 4, "inf", "end");
  for (const auto& p : pd.pairs)
    doc.raw("<circle class=\"finite\" cx=\"" + num(ax.px(p.birth)) + "\" cy=\"" + num(ax.py(p.death)) +
            "\" r=\"4\" fill=\"" + kPalette[0] + "\" fill-opacity=\"0.8\" data-birth=\"" +
            text::format_real(p.birth) + "\" data-death=\"" + text::format_real(p.death) + "\"/>\n");
  for (double b : pd.infinite_births) {
    const double x = ax.px(b);
    doc.raw("<path class=\"infinite\" d=\"M" + num(x - 5) + "," + num(band_y + 4) + " L" + num(x + 5) + "," +
            num(band_y + 4) + " L" + num(x) + "," + num(band_y - 5) + " Z\" fill=\"" + kPalette[1] +
            "\" data-birth=\"" + text::format_real(b) + "\"/>\n");
  }
  return doc.finish();
}

std::string render_graph(const CausalGraph& g) {
  if (g.nodes.empty()) empty_plot("causal graph has no nodes");
  auto nodes = g.nodes;
  std::sort(nodes.begin(), nodes.end());
  std::map<std::string, std::size_t> id;
  for (const auto& n : nodes) id.emplace(n, id.size());
  const auto n = nodes.size();

  std::vector<std::vector<std::size_t>> out(n);
  for (const auto& e : g.edges)
    if (id.count(e.source) && id.count(e.target)) out[id[e.source]].push_back(id[e.target]);
  for (auto& o : out) std::sort(o.begin(), o.end());

  // Depth-first search in lexicographic order; edges into the active path are back edges and are
  // ignored for layering.
  std::vector<int> state(n, 0);
  std::vector<std::size_t> order;
  std::map<std::pair<std::size_t, std::size_t>, bool> back;
  std::function<void(std::size_t)> visit = [&](std::size_t u) {
    state[u] = 1;
    for (auto v : out[u]) {
      if (state[v] == 1) back[{u, v}] = true;
      else if (state[v] == 0) visit(v);
    }
    state[u] = 2;
    order.push_back(u);
  };
  for (std::size_t u = 0; u < n; ++u)
    if (!state[u]) visit(u);
  std::reverse(order.begin(), order.end());
  std::vector<std::size_t> layer(n, 0);
  for (auto u : order)
    for (auto v : out[u])
      if (!back.count({u, v})) layer[v] = std::max(layer[v], layer[u] + 1);

  std::map<std::size_t, std::vector<std::size_t>> layers;
  for (std::size_t u = 0; u < n; ++u) layers[layer[u]].push_back(u);
  std::size_t tallest = 0;
  for (const auto& [l, members] : layers) tallest = std::max(tallest, members.size());

  const double col = 170, row = 80;
  const int width = static_cast<int>(120 + col * static_cast<double>(layers.size()));
  const int height = static_cast<int>(100 + row * static_cast<double>(tallest));
  std::vector<std::pair<double, double>> pos(n);
  for (const auto& [l, members] : layers)
    for (std::size_t k = 0; k < members.size(); ++k) {
      const double offset = (static_cast<double>(tallest) - static_cast<double>(members.size())) * row / 2;
      pos[members[k]] = {80 + col * static_cast<double>(l), 80 + offset + row * static_cast<double>(k)};
    }

  char alpha_buf[32];
  std::snprintf(alpha_buf, sizeof alpha_buf, "%.4g", g.alpha_level);
  Document doc(width, height, std::string("Causal graph (alpha = ") + alpha_buf + ")");
  doc.raw(
      "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" markerWidth=\"7\" "
      "markerHeight=\"7\" orient=\"auto-start-reverse\"><path d=\"M0,0 L10,5 L0,10 Z\" fill=\"#444444\"/>"
      "</marker></defs>\n");
  const double rx = 48, ry = 16;
  for (const auto& e : g.edges) {
    if (!id.count(e.source) || !id.count(e.target)) continue;
    const auto u = id[e.source], v = id[e.target];
    auto [x1, y1] = pos[u];
    auto [x2, y2] = pos[v];
    const double dx = x2 - x1, dy = y2 - y1;
    const double len = std::hypot(dx, dy);
    if (len == 0) continue;
    // Trim to the ellipse boundaries.
    const double t1 = 1.0 / std::sqrt((dx / rx) * (dx / rx) + (dy / ry) * (dy / ry));
    const double sx = x1 + dx * t1, sy = y1 + dy * t1, ex = x2 - dx * t1, ey = y2 - dy * t1;
    // Bend every edge slightly so opposite directions do not overlap.
    const double mx = (sx + ex) / 2 - dy / len * 18, my = (sy + ey) / 2 + dx / len * 18;
    char label[48];
    std::snprintf(label, sizeof label, "p=%.4g", e.p_value);
    doc.raw("<g class=\"edge\" data-source=\"" + escape(e.source) + "\" data-target=\"" + escape(e.target) + "\">\n");
    doc.raw("<path d=\"M" + num(sx) + "," + num(sy) + " Q" + num(mx) + "," + num(my) + " " + num(ex) + "," +
            num(ey) + "\" fill=\"none\" stroke=\"#444444\" stroke-width=\"1.2\" marker-end=\"url(#arrow)\"/>\n");
    doc.text(mx, my - 3, label, "middle", "edge-label", 10);
    doc.raw("</g>\n");
  }
  for (std::size_t u = 0; u < n; ++u) {
    doc.raw("<g class=\"node\" data-name=\"" + escape(nodes[u]) + "\" data-layer=\"" + std::to_string(layer[u]) +
            "\">\n");
    doc.raw("<ellipse cx=\"" + num(pos[u].first) + "\" cy=\"" + num(pos[u].second) + "\" rx=\"" + num(rx) +
            "\" ry=\"" + num(ry) + "\" fill=\"#eef3fb\" stroke=\"#1f77b4\"/>\n");
    doc.text(pos[u].first, pos[u].second + 4, nodes[u], "middle");
    doc.raw("</g>\n");
  }
  return doc.finish();
}

PlotKind kind_of(const PlotArtifact& artifact) {
  switch (artifact.index()) {
    case 0: return PlotKind::Elasticity;
    case 1: return PlotKind::Indicators;
    case 2: return PlotKind::Phase;
    case 3: return PlotKind::Scalogram;
    case 4: return PlotKind::Persistence;
    default: return PlotKind::Graph;
  }
}

std::string render_svg(const PlotArtifact& artifact) {
  return std::visit(
      [](const auto& a) -> std::string {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, std::vector<ElasticitySeries>>) {
          if (a.empty()) empty_plot("no elasticity series");
          return render_elasticity(a);
        } else if constexpr (std::is_same_v<T, std::vector<IndicatorFrame>>) {
          if (a.empty()) empty_plot("no indicator frames");
          return render_indicators(a);
        } else if constexpr (std::is_same_v<T, std::vector<PhaseTrajectory>>) {
          if (a.empty()) empty_plot("no phase trajectories");
          return render_phase(a);
        } else if constexpr (std::is_same_v<T, Scalogram>) {
          return render_scalogram(a);
        } else if constexpr (std::is_same_v<T, PersistenceDiagram>) {
          return render_persistence(a);
        } else {
          return render_graph(a);
        }
      },
      artifact);
}

}  // namespace hoed::svg
