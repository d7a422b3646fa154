#include <doctest.h>

#include <cmath>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rtquant/report.hpp"
#include "support/reference_data.hpp"

using namespace rtq;

namespace {

std::vector<std::string> lines(const std::string &s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

std::vector<std::string> split(const std::string &s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::size_t count_of(const std::string &s, const std::string &needle) {
  std::size_t n = 0;
  for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
  return n;
}

std::vector<oracle::Point2> plotted_points(const std::string &svg, const PlotOptions &opt) {
  static const std::regex circle(R"x(<circle class="point" cx="([-0-9.]+)" cy="([-0-9.]+)")x");
  std::vector<oracle::Point2> out;
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), circle); it != std::sregex_iterator(); ++it)
    out.push_back(svg_to_plane(std::stod((*it)[1]), std::stod((*it)[2]), opt));
  return out;
}

int run_with(RunConfig cfg, std::string *out_text = nullptr, std::string *err_text = nullptr) {
  std::ostringstream out, err;
  const int code = run(cfg, out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return code;
}

}  // namespace

TEST_CASE("vn text") {
  CHECK(vn_text(generation_at(6).vn, 6) == "3537/563200 ≈ 0.00628018");
  CHECK(vn_text(generation_at(1).vn, 6) == "27/176 ≈ 0.153409");
  CHECK(vn_text(generation_at(10).vn, 6) == "7191/2816000 ≈ 0.00255362");
  CHECK(vn_json(2, generation_at(2).vn, 6) == R"x({"n":2,"vn":{"num":"117","den":"1408"},"decimal":"0.0830966"})x");
}

TEST_CASE("enumeration json") {
  CHECK(enumeration_json(generation_at(2)) == R"x({"n":2,"vn":{"num":"117","den":"1408"},"sets":[["a(1,2)","a(3)"]]})x");
  for (std::size_t n : {2u, 7u, 9u, 14u, 25u}) {
    CAPTURE(n);
    const auto doc = enumeration_json(generation_at(n));
    CHECK(enumeration_json(parse_enumeration_json(doc)) == doc);
  }
  const std::string bad = R"x({"n":2,"vn":{"num":"1","den":"2"},"sets":[["a(1,2)","a(3)"]]})x";
  CHECK_THROWS_AS(parse_enumeration_json(bad), std::invalid_argument);
  CHECK_THROWS_AS(parse_enumeration_json("{"), std::invalid_argument);
  CHECK_THROWS_AS(parse_enumeration_json(R"x({"n":3,"vn":{"num":"117","den":"1408"},"sets":[["a(1,2)","a(3)"]]})x"),
                  std::invalid_argument);
}

TEST_CASE("enumeration text") {
  const auto t = enumeration_text(generation_at(7), 6);
  CHECK(t.starts_with("n=7 card=2 V=1521/281600 ≈ "));
  CHECK(lines(t).size() == 3);
}

TEST_CASE("count csv") {
  const auto rows = lines(count_csv(5, 82, 6));
  REQUIRE(rows.size() == 79);
  CHECK(rows[0] == "n,card,vn_num,vn_den,vn_decimal");
  const auto &counts = reference::optimal_set_counts();
  Rational previous = rat(1);
  std::size_t previous_n = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto f = split(rows[i], ',');
    REQUIRE(f.size() == 5);
    const std::size_t n = std::stoul(f[0]);
    CHECK(n > previous_n);
    CHECK(std::stoul(f[1]) == counts.at(n));
    const Rational vn = Rational::parse(f[2] + "/" + f[3]);
    CHECK(vn < previous);
    previous = vn;
    previous_n = n;
  }
  CHECK(rows[57 - 4].starts_with("57,495,"));
  CHECK(rows[80 - 4].starts_with("80,924,"));
  CHECK(count_csv(3, 3, 6) == "n,card,vn_num,vn_den,vn_decimal\n3,1,189,7040,0.0268466\n");
  CHECK_THROWS_AS(count_csv(6, 5, 6), UsageError);
}

TEST_CASE("count json") {
  CHECK(count_json(2, 2, 6) == R"x([{"n":2,"card":1,"vn":{"num":"117","den":"1408"},"decimal":"0.0830966"}])x");
}

TEST_CASE("tree dot") {
  const auto dot = tree_dot(12, 14);
  CHECK(dot.starts_with("digraph"));
  CHECK(count_of(dot, "rank=same") == 3);
  CHECK(count_of(dot, "->") == 16);
  std::size_t nodes = 0;
  for (std::size_t n = 12; n <= 14; ++n)
    for (std::size_t i = 0; i < 6; ++i) nodes += count_of(dot, "\"" + std::to_string(n) + "_" + std::to_string(i) + "\";");
  CHECK(nodes == 11 + 16);  // each id once in its rank group, plus once per edge as a target

  const auto small = tree_dot(8, 9);
  CHECK(count_of(small, "->") == 1);
  CHECK(count_of(small, "rank=same") == 2);
  CHECK(small.find("\"8_0\" -> \"9_0\";") != std::string::npos);
  CHECK_THROWS_AS(tree_dot(9, 9), UsageError);
}

TEST_CASE("plot is deterministic and matches the figures") {
  const PlotOptions base{.n = 8, .depth = 4};
  CHECK(plot_svg(base) == plot_svg(base));
  CHECK(plot_svg(base).find("version=\"1.1\"") != std::string::npos);
  CHECK(plot_svg(base).find("href") == std::string::npos);

  // Panels are unordered relative to the canonical set order, so each panel
  // must match some set of its n.
  for (const auto &panel : reference::figure_panels()) {
    CAPTURE(panel.n);
    bool matched = false;
    for (std::size_t idx = 0; idx < generation_at(panel.n).sets.size(); ++idx) {
      const PlotOptions opt{.n = panel.n, .depth = 3, .set_index = idx};
      const auto pts = plotted_points(plot_svg(opt), opt);
      if (pts.size() != panel.points.size()) continue;
      bool all = true;
      for (const auto &q : panel.points) {
        const double x = q[0] / reference::kFigureUnitsPerLength, y = q[1] / reference::kFigureUnitsPerLength;
        bool found = false;
        for (const auto &p : pts) found = found || (std::abs(p.x - x) <= 1e-4 && std::abs(p.y - y) <= 1e-4);
        all = all && found;
      }
      matched = matched || all;
    }
    CHECK(matched);
  }
  CHECK_THROWS_AS(plot_svg({.n = 7, .set_index = 2}), UsageError);
  CHECK_THROWS_AS(plot_svg({.n = 3, .depth = 0}), UsageError);
}

TEST_CASE("plot cell count") {
  const auto svg = plot_svg({.n = 2, .depth = 2});
  CHECK(count_of(svg, "class=\"cell\"") == 9);
  CHECK(count_of(svg, "<circle") == 2);
}

TEST_CASE("run: exit codes and usage errors") {
  std::string out, err;
  RunConfig cfg;
  cfg.command = Command::Vn;
  cfg.n = 6;
  CHECK(run_with(cfg, &out) == exit_code::kSuccess);
  CHECK(out == "3537/563200 ≈ 0.00628018\n");

  cfg.n = 0;
  CHECK(run_with(cfg, &out, &err) == exit_code::kUsage);
  CHECK(err.find("usage error") != std::string::npos);

  cfg.n = 3;
  cfg.format = Format::Dot;
  CHECK(run_with(cfg) == exit_code::kUsage);

  RunConfig e;
  e.command = Command::Enumerate;
  e.n = 1;
  CHECK(run_with(e) == exit_code::kUsage);

  RunConfig c;
  c.command = Command::Count;
  c.from = 9;
  c.to = 5;
  CHECK(run_with(c) == exit_code::kUsage);

  RunConfig t;
  t.command = Command::Tree;
  t.from = 4;
  t.to = 4;
  CHECK(run_with(t) == exit_code::kUsage);

  RunConfig v;
  v.command = Command::Verify;
  v.n = 2;
  v.samples = 10;
  CHECK(run_with(v) == exit_code::kUsage);

  RunConfig d;
  d.digits = 0;
  CHECK(run_with(d) == exit_code::kUsage);
}

TEST_CASE("verify") {
  for (std::size_t n : {1u, 2u, 3u}) {
    CAPTURE(n);
    const auto r = verify({.n = n, .samples = 200'000, .restarts = 6, .seed = 1});
    CHECK(r.pass);
    CHECK(r.text.ends_with("PASS\n"));
    CHECK(r.text.find("[FAIL]") == std::string::npos);
  }
  const auto a = verify({.n = 2, .samples = 50'000, .restarts = 3, .seed = 4});
  const auto b = verify({.n = 2, .samples = 50'000, .restarts = 3, .seed = 4});
  CHECK(a.text == b.text);
}
