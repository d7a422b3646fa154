#include "rtquant/error_calculus.hpp"

#include <algorithm>
#include <stdexcept>

namespace rtq {

std::vector<Word> QuantNode::cells() const {
  if (is_pair()) return {word.child(1), word.child(2)};
  return {word};
}

Rational QuantNode::mass() const {
  return is_pair() ? rat(2) * word_weight(word.child(1)) : word_weight(word);
}

std::string QuantNode::str() const {
  if (is_pair()) return "a(" + word.str() + "1," + word.str() + "2)";
  return "a(" + word.display() + ")";
}

QuantNode QuantNode::parse(std::string_view text) {
  auto fail = [&] { throw std::invalid_argument("QuantNode: malformed node '" + std::string(text) + "'"); };
  if (text.size() < 3 || text.substr(0, 2) != "a(" || text.back() != ')') fail();
  const std::string_view body = text.substr(2, text.size() - 3);
  const auto comma = body.find(',');
  if (comma == std::string_view::npos) return single(body == "∅" ? Word() : Word(body));

  const std::string_view first = body.substr(0, comma);
  const std::string_view second = body.substr(comma + 1);
  if (first.empty() || second.size() != first.size() || first.back() != '1' || second.back() != '2' ||
      first.substr(0, first.size() - 1) != second.substr(0, second.size() - 1))
    fail();
  return pair(Word(first.substr(0, first.size() - 1)));
}

std::strong_ordering operator<=>(const QuantNode &a, const QuantNode &b) {
  if (auto c = a.word <=> b.word; c != 0) return c;
  return static_cast<int>(a.kind) <=> static_cast<int>(b.kind);
}

namespace {

// First and second moments of one coordinate from the fixed-point relations
// E f(X) = Σ p_i E f(S_i X), with coordinate map x -> s_i x + t_i.
struct AxisMoments {
  Rational first;
  Rational second;
};

template <typename Translation>
AxisMoments axis_moments(Translation translation) {
  Rational m1_const, m1_coef, m2_const, m2_coef, m2_cross;
  for (int i = 1; i <= 3; ++i) {
    const auto &f = ifs::map(i);
    const Rational t = translation(f.translation);
    m1_const += f.weight * t;
    m1_coef += f.weight * f.scale;
    m2_coef += f.weight * f.scale * f.scale;
    m2_cross += f.weight * rat(2) * f.scale * t;
    m2_const += f.weight * t * t;
  }
  const Rational first = m1_const / (rat(1) - m1_coef);
  const Rational second = (m2_cross * first + m2_const) / (rat(1) - m2_coef);
  return {first, second};
}

Moments compute_moments() {
  const auto horizontal = axis_moments([](const QPoint &t) { return t.x; });
  // Vertical moments in √3-coefficient units; squares pick up a factor 3.
  const auto vertical = axis_moments([](const QPoint &t) { return t.ySqrt3; });
  Moments m;
  m.mean = {horizontal.first, vertical.first};
  m.ex1_sq = horizontal.second;
  m.ex2_sq = rat(3) * vertical.second;
  m.var_x1 = m.ex1_sq - m.mean.x * m.mean.x;
  m.var_x2 = m.ex2_sq - rat(3) * m.mean.ySqrt3 * m.mean.ySqrt3;
  m.variance = m.var_x1 + m.var_x2;
  return m;
}

}  // namespace

Moments moments() {
  static const Moments m = compute_moments();
  return m;
}

Rational variance() { return moments().variance; }

Rational pair_ratio() { return rat(47, 120); }

Rational node_error(const QuantNode &n) {
  const auto c = static_cast<unsigned>(n.word.count3());
  const auto k = static_cast<unsigned>(n.word.length());
  Rational e = variance() * Rational::pow(rat(12), c) / Rational::pow(rat(80), k);
  return n.is_pair() ? e * pair_ratio() : e;
}

Rational distortion_against_point(const Word &w, const QPoint &p) {
  const Rational s = word_scale(w);
  return word_weight(w) * (s * s * variance() + sq_dist(centroid_single(w), p));
}

Rational node_error_direct(const QuantNode &n) {
  const QPoint centre = n.point();
  Rational total;
  for (const Word &cell : n.cells()) total += distortion_against_point(cell, centre);
  return total;
}

bool regions_disjoint(std::span<const QuantNode> nodes) {
  std::vector<std::string> cells;
  cells.reserve(nodes.size() * 2);
  for (const auto &n : nodes)
    for (const auto &c : n.cells()) cells.push_back(c.str());
  // In plain lexicographic order a prefix is immediately followed by one of
  // its extensions, so adjacent checks suffice.
  std::sort(cells.begin(), cells.end());
  for (std::size_t i = 1; i < cells.size(); ++i) {
    if (cells[i].starts_with(cells[i - 1])) return false;
  }
  return true;
}

Rational set_distortion(std::span<const QuantNode> nodes) {
  if (!regions_disjoint(nodes)) throw std::invalid_argument("set_distortion: node regions overlap");
  Rational total;
  for (const auto &n : nodes) total += node_error(n);
  return total;
}

}  // namespace rtq
