#include "rtquant/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace rtq {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::size_t kMaxPlotDepth = 10;

std::string fmt_coord(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string fmt_float(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

Format format_or(const RunConfig &cfg, Format fallback) { return cfg.format.value_or(fallback); }

void require_format(const RunConfig &cfg, std::initializer_list<Format> allowed, const char *command) {
  if (!cfg.format) return;
  if (std::find(allowed.begin(), allowed.end(), *cfg.format) == allowed.end())
    throw UsageError(std::string("format '") + std::string(to_string(*cfg.format)) + "' is not supported by '" +
                     command + "'");
}

ordered_json node_list(const OptimalSet &s) {
  ordered_json arr = ordered_json::array();
  for (const auto &node : s.nodes()) arr.push_back(node.str());
  return arr;
}

}  // namespace

std::optional<Command> parse_command(std::string_view name) {
  if (name == "vn") return Command::Vn;
  if (name == "enumerate") return Command::Enumerate;
  if (name == "count") return Command::Count;
  if (name == "tree") return Command::Tree;
  if (name == "plot") return Command::Plot;
  if (name == "verify") return Command::Verify;
  return std::nullopt;
}

std::optional<Format> parse_format(std::string_view name) {
  if (name == "text") return Format::Text;
  if (name == "json") return Format::Json;
  if (name == "csv") return Format::Csv;
  if (name == "dot") return Format::Dot;
  if (name == "svg") return Format::Svg;
  return std::nullopt;
}

std::string_view to_string(Format f) {
  switch (f) {
    case Format::Text: return "text";
    case Format::Json: return "json";
    case Format::Csv: return "csv";
    case Format::Dot: return "dot";
    case Format::Svg: return "svg";
  }
  return "?";
}

void validate(const RunConfig &cfg) {
  if (cfg.digits < 1) throw UsageError("--digits must be >= 1");
  switch (cfg.command) {
    case Command::Vn:
      if (cfg.n < 1) throw UsageError("vn: --n must be >= 1");
      require_format(cfg, {Format::Text, Format::Json}, "vn");
      break;
    case Command::Enumerate:
      if (cfg.n < 2) throw UsageError("enumerate: --n must be >= 2");
      require_format(cfg, {Format::Json, Format::Text}, "enumerate");
      break;
    case Command::Count:
      if (cfg.from < 2 || cfg.from > cfg.to) throw UsageError("count: need 2 <= --from <= --to");
      require_format(cfg, {Format::Csv, Format::Json}, "count");
      break;
    case Command::Tree:
      if (cfg.from < 2 || cfg.from >= cfg.to) throw UsageError("tree: need 2 <= --from < --to");
      require_format(cfg, {Format::Dot}, "tree");
      break;
    case Command::Plot:
      if (cfg.n < 1) throw UsageError("plot: --n must be >= 1");
      if (cfg.depth < 1 || cfg.depth > kMaxPlotDepth) throw UsageError("plot: --depth must be in 1..10");
      if (!(cfg.scale > 0.0)) throw UsageError("plot: scale must be positive");
      require_format(cfg, {Format::Svg}, "plot");
      break;
    case Command::Verify:
      if (cfg.n < 1) throw UsageError("verify: --n must be >= 1");
      if (cfg.samples < 10000) throw UsageError("verify: --samples must be >= 10000");
      if (cfg.restarts < 1) throw UsageError("verify: --restarts must be >= 1");
      require_format(cfg, {Format::Text}, "verify");
      break;
  }
}

std::string vn_text(const Rational &vn, int digits) { return vn.str() + " ≈ " + to_significant(vn, digits); }

std::string vn_json(std::size_t n, const Rational &vn, int digits) {
  ordered_json j;
  j["n"] = n;
  j["vn"] = {{"num", vn.num_str()}, {"den", vn.den_str()}};
  j["decimal"] = to_significant(vn, digits);
  return j.dump();
}

std::string enumeration_json(const Generation &g) {
  ordered_json j;
  j["n"] = g.n;
  j["vn"] = {{"num", g.vn.num_str()}, {"den", g.vn.den_str()}};
  ordered_json sets = ordered_json::array();
  for (const auto &s : g.sets) sets.push_back(node_list(s));
  j["sets"] = std::move(sets);
  return j.dump();
}

std::string enumeration_text(const Generation &g, int digits) {
  std::ostringstream os;
  os << "n=" << g.n << " card=" << g.sets.size() << " V=" << vn_text(g.vn, digits) << "\n";
  for (std::size_t i = 0; i < g.sets.size(); ++i) {
    os << "[" << i << "] {";
    const auto &nodes = g.sets[i].nodes();
    for (std::size_t k = 0; k < nodes.size(); ++k) os << (k ? ", " : "") << nodes[k].str();
    os << "}\n";
  }
  return os.str();
}

Generation parse_enumeration_json(std::string_view text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception &e) {
    throw std::invalid_argument(std::string("enumeration JSON: ") + e.what());
  }
  try {
    Generation g;
    g.n = j.at("n").get<std::size_t>();
    g.vn = Rational::parse(j.at("vn").at("num").get<std::string>() + "/" +
                           j.at("vn").at("den").get<std::string>());
    for (const auto &set : j.at("sets")) {
      std::vector<QuantNode> nodes;
      for (const auto &node : set) nodes.push_back(QuantNode::parse(node.get<std::string>()));
      if (nodes.size() != g.n) throw std::invalid_argument("enumeration JSON: set size differs from n");
      g.sets.emplace_back(std::move(nodes));
      if (g.sets.back().distortion() != g.vn)
        throw std::invalid_argument("enumeration JSON: set distortion differs from vn");
    }
    return g;
  } catch (const nlohmann::json::exception &e) {
    throw std::invalid_argument(std::string("enumeration JSON: ") + e.what());
  }
}

std::string count_csv(std::size_t from, std::size_t to, int digits) {
  if (from < 2 || from > to) throw UsageError("count: need 2 <= from <= to");
  std::string out = "n,card,vn_num,vn_den,vn_decimal\n";
  for_each_generation(to, [&](const Generation &g, const std::vector<TransitionEdge> &) {
    if (g.n < from) return;
    out += std::to_string(g.n) + "," + std::to_string(g.sets.size()) + "," + g.vn.num_str() + "," +
           g.vn.den_str() + "," + to_significant(g.vn, digits) + "\n";
  });
  return out;
}

std::string count_json(std::size_t from, std::size_t to, int digits) {
  if (from < 2 || from > to) throw UsageError("count: need 2 <= from <= to");
  ordered_json rows = ordered_json::array();
  for_each_generation(to, [&](const Generation &g, const std::vector<TransitionEdge> &) {
    if (g.n < from) return;
    ordered_json row;
    row["n"] = g.n;
    row["card"] = g.sets.size();
    row["vn"] = {{"num", g.vn.num_str()}, {"den", g.vn.den_str()}};
    row["decimal"] = to_significant(g.vn, digits);
    rows.push_back(std::move(row));
  });
  return rows.dump();
}

std::string tree_dot(std::size_t from, std::size_t to) {
  if (from < 2 || from >= to) throw UsageError("tree: need 2 <= from < to");
  std::ostringstream nodes, edges;
  for_each_generation(to, [&](const Generation &g, const std::vector<TransitionEdge> &in) {
    if (g.n < from) return;
    nodes << "  { rank=same;";
    for (std::size_t i = 0; i < g.sets.size(); ++i) nodes << " \"" << g.n << "_" << i << "\";";
    nodes << " }\n";
    if (g.n == from) return;
    for (const auto &e : in)
      edges << "  \"" << g.n - 1 << "_" << e.parentIndex << "\" -> \"" << g.n << "_" << e.childIndex << "\";\n";
  });
  return "digraph optimal_sets {\n  rankdir=TB;\n  node [shape=ellipse, fontsize=10];\n" + nodes.str() +
         edges.str() + "}\n";
}

std::vector<QuantNode> plot_nodes(const PlotOptions &opt) {
  if (opt.n < 1) throw UsageError("plot: n must be >= 1");
  const Generation g = generation_at(opt.n);
  if (opt.set_index >= g.sets.size())
    throw UsageError("plot: --set-index " + std::to_string(opt.set_index) + " out of range (card = " +
                     std::to_string(g.sets.size()) + ")");
  return g.sets[opt.set_index].nodes();
}

namespace {

struct SvgFrame {
  double scale, margin, height;
  double sx(double x) const { return margin + scale * x; }
  double sy(double y) const { return margin + scale * (height - y); }
};

SvgFrame frame_for(const PlotOptions &opt) { return {opt.scale, opt.margin, std::sqrt(3.0) / 2.0}; }

void collect_words(std::size_t depth, Word w, std::vector<Word> &out) {
  if (w.length() == depth) {
    out.push_back(std::move(w));
    return;
  }
  for (int i = 1; i <= 3; ++i) collect_words(depth, w.child(i), out);
}

}  // namespace

oracle::Point2 svg_to_plane(double cx, double cy, const PlotOptions &opt) {
  const SvgFrame f = frame_for(opt);
  return {(cx - f.margin) / f.scale, f.height - (cy - f.margin) / f.scale};
}

std::string plot_svg(const PlotOptions &opt) {
  if (opt.depth < 1 || opt.depth > kMaxPlotDepth) throw UsageError("plot: depth must be in 1..10");
  const auto nodes = plot_nodes(opt);
  const SvgFrame f = frame_for(opt);
  const double width = opt.scale + 2 * opt.margin;
  const double height = opt.scale * f.height + 2 * opt.margin;

  auto polygon = [&](const std::array<QPoint, 3> &v, const char *cls) {
    std::string s = "  <polygon class=\"";
    s += cls;
    s += "\" points=\"";
    for (std::size_t i = 0; i < 3; ++i) {
      const auto p = oracle::to_point2(v[i]);
      s += (i ? " " : "") + fmt_coord(f.sx(p.x)) + "," + fmt_coord(f.sy(p.y));
    }
    return s + "\"/>\n";
  };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt_coord(width)
     << "\" height=\"" << fmt_coord(height) << "\" viewBox=\"0 0 " << fmt_coord(width) << " "
     << fmt_coord(height) << "\">\n"
     << "  <title>Optimal configuration of " << opt.n << " points (set " << opt.set_index << ")</title>\n"
     << "  <style>polygon.outline{fill:none;stroke:#000;stroke-width:1.2}"
        "polygon.cell{fill:none;stroke:#555;stroke-width:0.5}"
        "circle.point{fill:#f00;stroke:#000;stroke-width:0.5}</style>\n"
     << "  <rect x=\"0\" y=\"0\" width=\"" << fmt_coord(width) << "\" height=\"" << fmt_coord(height)
     << "\" fill=\"#fff\"/>\n";

  os << polygon(ifs::unit_triangle(), "outline");
  std::vector<Word> cells;
  collect_words(opt.depth, Word{}, cells);
  for (const auto &w : cells) os << polygon(cell_vertices(w), "cell");

  for (const auto &node : nodes) {
    const auto p = oracle::to_point2(node.point());
    os << "  <circle class=\"point\" cx=\"" << fmt_coord(f.sx(p.x)) << "\" cy=\"" << fmt_coord(f.sy(p.y))
       << "\" r=\"" << fmt_coord(opt.point_radius) << "\"><title>" << node.str() << "</title></circle>\n";
  }
  os << "</svg>\n";
  return os.str();
}

double distortion_tolerance(std::size_t n) { return n <= 4 ? 0.05 : 0.10; }

VerifyResult verify(const VerifyOptions &opt) {
  if (opt.n < 1) throw UsageError("verify: n must be >= 1");
  const Generation g = generation_at(opt.n);
  const oracle::SampleSet s = oracle::sample(opt.samples, opt.seed);

  std::ostringstream os;
  bool pass = true;
  auto line = [&](bool ok, const std::string &what) {
    os << (ok ? "[PASS] " : "[FAIL] ") << what << "\n";
    pass = pass && ok;
  };

  os << "verify n=" << opt.n << " card=" << g.sets.size() << " V=" << vn_text(g.vn, 6) << " samples=" << opt.samples
     << " seed=" << opt.seed << "\n";

  const auto moments = oracle::moment_check(s);
  for (const auto &c : moments.checks)
    line(c.pass, "moment " + c.name + " = " + fmt_float(c.estimate) + " (exact " + fmt_float(c.target) +
                     ", band ±" + fmt_float(c.tolerance) + ")");

  const double vn = g.vn.to_double();
  const double rel_tol = distortion_tolerance(opt.n);
  double best_exact = std::numeric_limits<double>::infinity();
  double best_exact_se = 0.0;
  for (std::size_t i = 0; i < g.sets.size(); ++i) {
    std::vector<oracle::Point2> centers;
    for (const auto &node : g.sets[i].nodes()) centers.push_back(oracle::to_point2(node.point()));
    const auto est = oracle::empirical_distortion_estimate(s, centers);
    const double rel = std::abs(est.mean - vn) / vn;
    line(rel <= rel_tol, "set " + std::to_string(i) + " empirical distortion " + fmt_float(est.mean) + " vs V=" +
                             fmt_float(vn) + " (relative error " + fmt_float(rel) + ", limit " + fmt_float(rel_tol) +
                             ")");
    if (est.mean < best_exact) {
      best_exact = est.mean;
      best_exact_se = est.stderr_;
    }

    const auto centroid = oracle::verify_centroid_condition(g.sets[i], s);
    for (const auto &c : centroid.cells) {
      line(c.pass, "set " + std::to_string(i) + " centroid " + c.node.str() + " count=" + std::to_string(c.count) +
                       " mass " + fmt_float(c.mass.mean) + " (exact " + fmt_float(c.exact_mass) + ") at (" +
                       fmt_float(c.centroid_x.mean) + ", " + fmt_float(c.centroid_y.mean) + ") vs (" +
                       fmt_float(c.exact_point.x) + ", " + fmt_float(c.exact_point.y) + ")");
    }
  }

  const auto book = oracle::lloyd(s, opt.n, opt.restarts, opt.seed);
  line(book.distortion >= best_exact - 3.0 * best_exact_se,
       "lloyd k=" + std::to_string(opt.n) + " best distortion " + fmt_float(book.distortion) +
           " not below exact set " + fmt_float(best_exact) + " - 3se");
  if (opt.n <= 3) {
    std::vector<oracle::Point2> exact;
    for (const auto &node : g.sets.front().nodes()) exact.push_back(oracle::to_point2(node.point()));
    const double d = oracle::matching_distance(book.centers, exact);
    line(d <= 0.02, "lloyd centers match exact points within " + fmt_float(d) + " (limit 0.02)");
  }

  os << (pass ? "PASS" : "FAIL") << "\n";
  return {os.str(), pass};
}

int run(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
  try {
    validate(cfg);
    std::string doc;
    int code = exit_code::kSuccess;
    switch (cfg.command) {
      case Command::Vn: {
        const Generation g = generation_at(cfg.n);
        doc = format_or(cfg, Format::Text) == Format::Json ? vn_json(cfg.n, g.vn, cfg.digits) + "\n"
                                                            : vn_text(g.vn, cfg.digits) + "\n";
        break;
      }
      case Command::Enumerate: {
        const Generation g = generation_at(cfg.n);
        doc = format_or(cfg, Format::Json) == Format::Text ? enumeration_text(g, cfg.digits)
                                                            : enumeration_json(g) + "\n";
        break;
      }
      case Command::Count:
        doc = format_or(cfg, Format::Csv) == Format::Json ? count_json(cfg.from, cfg.to, cfg.digits) + "\n"
                                                           : count_csv(cfg.from, cfg.to, cfg.digits);
        break;
      case Command::Tree:
        doc = tree_dot(cfg.from, cfg.to);
        break;
      case Command::Plot:
        doc = plot_svg({.n = cfg.n, .depth = cfg.depth, .set_index = cfg.set_index, .scale = cfg.scale});
        break;
      case Command::Verify: {
        const auto r = verify({cfg.n, cfg.samples, cfg.restarts, cfg.seed});
        doc = r.text;
        code = r.pass ? exit_code::kSuccess : exit_code::kVerificationFailed;
        break;
      }
    }
    if (cfg.out.empty()) {
      out << doc;
    } else {
      std::ofstream file(cfg.out, std::ios::binary);
      if (!file) throw UsageError("cannot open output file '" + cfg.out + "'");
      file << doc;
    }
    return code;
  } catch (const UsageError &e) {
    err << "usage error: " << e.what() << "\n";
    return exit_code::kUsage;
  } catch (const InvariantViolation &e) {
    err << "invariant violation: " << e.what() << "\n";
    return exit_code::kInvariantViolation;
  }
}

}  // namespace rtq
