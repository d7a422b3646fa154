#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <string>
#include <string_view>

#include "rtquant/number.hpp"

namespace rtq {

/// Finite word over the alphabet {1,2,3}; addresses the cell S_ω(Δ).
///
/// Stored as a digit string so that lexicographic string order is the
/// symbol order 1 < 2 < 3. The empty word addresses the whole triangle.
class Word {
public:
  Word() = default;
  /// Throws std::invalid_argument on any character outside '1'..'3'.
  explicit Word(std::string_view digits);

  std::size_t length() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }
  int operator[](std::size_t i) const { return symbols_[i] - '0'; }

  /// Number of occurrences of symbol 3.
  std::size_t count3() const;

  Word child(int symbol) const;
  Word concat(const Word &tail) const { return Word(symbols_ + tail.symbols_, Trusted{}); }
  bool is_prefix_of(const Word &other) const;

  /// 1 <-> 2 swap; the reflection of the cell about x = 1/2.
  Word mirrored() const;

  const std::string &str() const { return symbols_; }
  /// Human form: "∅" for the empty word.
  std::string display() const { return symbols_.empty() ? "∅" : symbols_; }

  friend bool operator==(const Word &, const Word &) = default;
  /// Shortlex: length first, then symbol order.
  friend std::strong_ordering operator<=>(const Word &a, const Word &b);

private:
  struct Trusted {};
  Word(std::string s, Trusted) : symbols_(std::move(s)) {}
  std::string symbols_;
};

/// x -> scale·x + translation, applied identically to x and the √3-coefficient.
struct SimilarityMap {
  Rational scale;
  QPoint translation;
  Rational weight;

  QPoint operator()(const QPoint &p) const { return scale * p + translation; }
};

namespace ifs {

/// The three generating maps: S₁, S₂ with ratio 1/4 and weight 1/5,
/// S₃ with ratio 1/2 and weight 3/5.
const SimilarityMap &map(int symbol);

/// Barycentre of P, (1/2, √3/4).
QPoint mean();

/// Vertices (0,0), (1,0), (1/2, √3/2) of the unit triangle.
std::array<QPoint, 3> unit_triangle();

}  // namespace ifs

/// Applies S_i; throws std::invalid_argument unless i is 1, 2 or 3.
QPoint apply_map(int symbol, const QPoint &p);

/// S_ω = S_{ω₁} ∘ … ∘ S_{ω_k} applied to p.
QPoint apply_word(const Word &w, const QPoint &p);

/// p_ω = 3^c(ω) / 5^|ω|, the P-mass of the cell.
Rational word_weight(const Word &w);

/// s_ω = 2^c(ω) / 4^|ω|, the similarity ratio of S_ω.
Rational word_scale(const Word &w);

/// a(ω) = S_ω(1/2, √3/4), the conditional mean of X on the cell.
QPoint centroid_single(const Word &w);

/// a(ω1, ω2): midpoint of a(ω1) and a(ω2). The two cells carry equal mass,
/// so this is also the mass-weighted centroid of their union.
QPoint centroid_pair(const Word &w);

std::array<QPoint, 3> cell_vertices(const Word &w);

}  // namespace rtq
