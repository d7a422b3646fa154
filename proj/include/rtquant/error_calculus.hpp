#pragma once

#include <compare>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rtquant/ifs.hpp"
#include "rtquant/number.hpp"

namespace rtq {

enum class NodeKind { Pair, Single };

/// One element of a cell-aligned quantizer.
///
/// Single(ω) is the point a(ω) serving the cell Δ_ω. Pair(ω) is the point
/// a(ω1, ω2) serving Δ_{ω1} ∪ Δ_{ω2}; its word is the parent ω.
struct QuantNode {
  NodeKind kind = NodeKind::Single;
  Word word;

  static QuantNode single(Word w) { return {NodeKind::Single, std::move(w)}; }
  static QuantNode pair(Word w) { return {NodeKind::Pair, std::move(w)}; }

  bool is_pair() const { return kind == NodeKind::Pair; }

  QPoint point() const { return is_pair() ? centroid_pair(word) : centroid_single(word); }
  /// Cells forming the node's region: {ω} or {ω1, ω2}.
  std::vector<Word> cells() const;
  /// P-mass of the region.
  Rational mass() const;
  QuantNode mirrored() const { return {kind, word.mirrored()}; }

  /// "a(ω)" or "a(ω1,ω2)"; a(∅) for the whole triangle, a(1,2) for its pair.
  std::string str() const;
  /// Inverse of str(); throws std::invalid_argument on malformed text.
  static QuantNode parse(std::string_view text);

  friend bool operator==(const QuantNode &, const QuantNode &) = default;
  /// Canonical order: shortlex on the word, Pair before Single on a tie.
  friend std::strong_ordering operator<=>(const QuantNode &a, const QuantNode &b);
};

/// Moments of X ~ P.
struct Moments {
  QPoint mean;
  Rational ex1_sq;  // E(X₁²)
  Rational ex2_sq;  // E(X₂²)
  Rational var_x1;  // V(X₁)
  Rational var_x2;  // V(X₂)
  Rational variance;
};

/// V = E‖X − E(X)‖² = 27/176.
Rational variance();
Moments moments();

/// E(ω1,ω2) / E(ω) = 47/120.
Rational pair_ratio();

/// Element error of a node: p_ω s_ω² V for Single(ω), (47/120) p_ω s_ω² V for
/// Pair(ω). Closed form; depends only on (|ω|, c(ω), kind).
Rational node_error(const QuantNode &n);

/// ∫_{Δ_ω} ‖x − p‖² dP = p_ω (s_ω² V + ‖a(ω) − p‖²).
Rational distortion_against_point(const Word &w, const QPoint &p);

/// Node error via distortion_against_point summed over the node's cells.
/// Independent of the closed form used by node_error.
Rational node_error_direct(const QuantNode &n);

/// True when no cell of one node is a prefix of (or equal to) a cell of another.
bool regions_disjoint(std::span<const QuantNode> nodes);

/// Σ node_error. Throws std::invalid_argument if two regions overlap.
Rational set_distortion(std::span<const QuantNode> nodes);

}  // namespace rtq
