#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "rtquant/engine.hpp"
#include "rtquant/oracle.hpp"

using namespace rtq;
using namespace rtq::oracle;

namespace {

const SampleSet &shared_sample() {
  static const SampleSet s = sample(200'000, 17);
  return s;
}

std::vector<Point2> centers_of(const OptimalSet &s) {
  std::vector<Point2> out;
  for (const auto &n : s.nodes()) out.push_back(to_point2(n.point()));
  return out;
}

// Barycentric test against the unit triangle.
bool in_triangle(const Point2 &p) {
  const double eps = 1e-12, h = std::sqrt(3.0);
  return p.y >= -eps && p.y <= h * p.x + eps && p.y <= h * (1.0 - p.x) + eps;
}

}  // namespace

TEST_CASE("sampling is reproducible and stays on the triangle") {
  const auto a = sample(1000, 3), b = sample(1000, 3), c = sample(1000, 4);
  CHECK(a.points == b.points);
  CHECK(a.points != c.points);
  CHECK(a.points.size() == 1000);
  for (const auto &p : shared_sample().points) REQUIRE(in_triangle(p));
  CHECK_THROWS_AS(sample(0, 1), std::invalid_argument);
}

TEST_CASE("cell frequencies follow the weights") {
  // Δ₃ is the top half: y >= √3/4.
  std::vector<double> top;
  for (const auto &p : shared_sample().points) top.push_back(p.y >= std::sqrt(3.0) / 4 ? 1.0 : 0.0);
  const Estimate e = batch_mean(top);
  CHECK(std::abs(e.mean - 0.6) <= 4 * e.stderr_);
}

TEST_CASE("batch means") {
  const std::vector<double> v{1, 2, 3, 4};
  const Estimate e = batch_mean(v, 2);
  CHECK(e.mean == doctest::Approx(2.5));
  CHECK(e.stderr_ == doctest::Approx(1.0));
  CHECK_THROWS_AS(batch_mean(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("moments") {
  const auto r = moment_check(shared_sample());
  REQUIRE(r.checks.size() == 5);
  for (const auto &c : r.checks) {
    CAPTURE(c.name);
    CHECK(c.pass);
    CHECK(c.stderr_ > 0);
  }
  CHECK_THROWS_AS(moment_check(sample(100, 1)), std::invalid_argument);
}

TEST_CASE("nearest breaks ties toward the lowest index") {
  const std::vector<Point2> c{{0, 0}, {2, 0}, {0, 0}};
  CHECK(nearest({1, 0}, c) == 0);
  CHECK(nearest({0, 0}, c) == 0);
  CHECK(nearest({1.5, 0}, c) == 1);
}

TEST_CASE("empirical distortion of the exact sets") {
  const auto &s = shared_sample();
  for (std::size_t n = 1; n <= 6; ++n) {
    CAPTURE(n);
    const auto g = generation_at(n);
    for (const auto &set : g.sets) {
      const auto e = empirical_distortion_estimate(s, centers_of(set));
      CHECK(std::abs(e.mean - g.vn.to_double()) <= 4 * e.stderr_);
      CHECK(e.mean == doctest::Approx(empirical_distortion(s, centers_of(set))));
    }
  }
}

TEST_CASE("centroid condition") {
  const auto &s = shared_sample();
  for (std::size_t n = 1; n <= 8; ++n) {
    CAPTURE(n);
    for (const auto &set : generation_at(n).sets) {
      const auto r = verify_centroid_condition(set, s);
      CHECK(r.pass);
      CHECK(r.total_mass == doctest::Approx(1.0));
    }
  }
}

TEST_CASE("Lloyd descent is monotone") {
  const auto &s = shared_sample();
  std::vector<double> history;
  const auto cb = lloyd_descent(s, {{0.1, 0.1}, {0.9, 0.1}, {0.5, 0.2}, {0.5, 0.5}}, &history);
  REQUIRE(history.size() >= 2);
  for (std::size_t i = 1; i < history.size(); ++i) CHECK(history[i] <= history[i - 1] + 1e-15);
  CHECK(cb.iterations == history.size());
  CHECK(cb.iterations <= kLloydMaxIterations);
}

TEST_CASE("Lloyd recovers small optimal sets") {
  const auto &s = shared_sample();
  for (std::size_t k = 1; k <= 3; ++k) {
    CAPTURE(k);
    const auto g = generation_at(k);
    const auto cb = lloyd(s, k, 8, 5);
    CHECK(matching_distance(cb.centers, centers_of(g.sets[0])) < 0.02);
    CHECK(cb.distortion == doctest::Approx(g.vn.to_double()).epsilon(0.05));
  }
  const auto a = lloyd(s, 3, 4, 9), b = lloyd(s, 3, 4, 9);
  CHECK(a.centers == b.centers);
  CHECK(a.restart == b.restart);
  CHECK_THROWS_AS(lloyd(s, 0, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(lloyd(s, 2, 0, 1), std::invalid_argument);
}

TEST_CASE("matching distance") {
  const std::vector<Point2> a{{0, 0}, {1, 0}}, b{{1, 0.1}, {0, 0}};
  CHECK(matching_distance(a, b) == doctest::Approx(0.1));
  CHECK_THROWS_AS(matching_distance(a, std::vector<Point2>{{0, 0}}), std::invalid_argument);
}

TEST_CASE("induction sets agree with sampling through n = 6") {
  // For n <= 6 no cell-aligned set of the same size does better.
  const auto &s = shared_sample();
  for (std::size_t n = 2; n <= 6; ++n) {
    CAPTURE(n);
    const auto cb = lloyd(s, n, 6, 11);
    const auto exact = empirical_distortion_estimate(s, centers_of(generation_at(n).sets[0]));
    CHECK(cb.distortion >= exact.mean - 4 * exact.stderr_);
  }
}

TEST_CASE("at n = 7 a different cell-aligned set samples lower") {
  const auto &s = shared_sample();
  const OptimalSet better({QuantNode::single(Word("1")), QuantNode::single(Word("2")), QuantNode::single(Word("31")),
                           QuantNode::single(Word("32")), QuantNode::single(Word("331")),
                           QuantNode::single(Word("332")), QuantNode::single(Word("333"))});
  const auto b = empirical_distortion_estimate(s, centers_of(better));
  const auto a = empirical_distortion_estimate(s, centers_of(generation_at(7).sets[0]));
  CHECK(b.mean < a.mean - 4 * a.stderr_);
  CHECK(std::abs(b.mean - better.distortion().to_double()) <= 4 * b.stderr_);
}
