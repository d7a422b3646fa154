#include "rtquant/ifs.hpp"

#include <algorithm>
#include <stdexcept>

namespace rtq {

Word::Word(std::string_view digits) : symbols_(digits) {
  for (char c : symbols_) {
    if (c < '1' || c > '3')
      throw std::invalid_argument("Word: invalid symbol '" + std::string(1, c) + "' in \"" +
                                  symbols_ + "\"");
  }
}

std::size_t Word::count3() const {
  return static_cast<std::size_t>(std::count(symbols_.begin(), symbols_.end(), '3'));
}

Word Word::child(int symbol) const {
  if (symbol < 1 || symbol > 3) throw std::invalid_argument("Word::child: symbol must be 1, 2 or 3");
  return Word(symbols_ + static_cast<char>('0' + symbol), Trusted{});
}

bool Word::is_prefix_of(const Word &other) const {
  return other.symbols_.size() >= symbols_.size() &&
         std::equal(symbols_.begin(), symbols_.end(), other.symbols_.begin());
}

Word Word::mirrored() const {
  std::string s = symbols_;
  for (char &c : s) {
    if (c == '1') c = '2';
    else if (c == '2') c = '1';
  }
  return Word(std::move(s), Trusted{});
}

std::strong_ordering operator<=>(const Word &a, const Word &b) {
  if (auto c = a.symbols_.size() <=> b.symbols_.size(); c != 0) return c;
  return a.symbols_.compare(b.symbols_) <=> 0;
}

namespace ifs {

const SimilarityMap &map(int symbol) {
  static const std::array<SimilarityMap, 3> maps{{
      {rat(1, 4), {rat(0), rat(0)}, rat(1, 5)},
      {rat(1, 4), {rat(3, 4), rat(0)}, rat(1, 5)},
      {rat(1, 2), {rat(1, 4), rat(1, 4)}, rat(3, 5)},
  }};
  if (symbol < 1 || symbol > 3) throw std::invalid_argument("ifs::map: symbol must be 1, 2 or 3");
  return maps[static_cast<std::size_t>(symbol - 1)];
}

QPoint mean() { return {rat(1, 2), rat(1, 4)}; }

std::array<QPoint, 3> unit_triangle() {
  return {QPoint{rat(0), rat(0)}, QPoint{rat(1), rat(0)}, QPoint{rat(1, 2), rat(1, 2)}};
}

}  // namespace ifs

QPoint apply_map(int symbol, const QPoint &p) { return ifs::map(symbol)(p); }

QPoint apply_word(const Word &w, const QPoint &p) {
  QPoint q = p;
  for (std::size_t i = w.length(); i-- > 0;) q = apply_map(w[i], q);
  return q;
}

Rational word_weight(const Word &w) {
  const auto c = static_cast<unsigned>(w.count3());
  const auto k = static_cast<unsigned>(w.length());
  return Rational::pow(rat(3), c) / Rational::pow(rat(5), k);
}

Rational word_scale(const Word &w) {
  const auto c = static_cast<unsigned>(w.count3());
  const auto k = static_cast<unsigned>(w.length());
  return Rational::pow(rat(2), c) / Rational::pow(rat(4), k);
}

QPoint centroid_single(const Word &w) { return apply_word(w, ifs::mean()); }

QPoint centroid_pair(const Word &w) {
  return rat(1, 2) * (centroid_single(w.child(1)) + centroid_single(w.child(2)));
}

std::array<QPoint, 3> cell_vertices(const Word &w) {
  auto v = ifs::unit_triangle();
  for (auto &p : v) p = apply_word(w, p);
  return v;
}

}  // namespace rtq
