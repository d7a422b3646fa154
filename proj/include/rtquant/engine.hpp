#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rtquant/error_calculus.hpp"

namespace rtq {

/// Raised when a generation fails an internal consistency check, e.g.
/// successors of one generation with unequal distortion.
class InvariantViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// A cell-aligned optimal set with its nodes in canonical order.
class OptimalSet {
public:
  OptimalSet() = default;
  /// Sorts the nodes canonically and computes the distortion exactly.
  /// Throws std::invalid_argument if two regions overlap.
  explicit OptimalSet(std::vector<QuantNode> nodes);

  const std::vector<QuantNode> &nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  const Rational &distortion() const { return distortion_; }
  /// Element error of nodes()[i].
  const Rational &error(std::size_t i) const { return errors_[i]; }

  /// Comma-separated node strings in canonical order; the dedup key.
  std::string key() const;
  /// The set reflected about x = 1/2 (symbols 1 <-> 2 swapped).
  OptimalSet mirrored() const;

  /// Replaces nodes()[i] by its two children, updating the distortion by the
  /// exact error difference.
  OptimalSet split(std::size_t i) const;

  friend bool operator==(const OptimalSet &a, const OptimalSet &b) { return a.nodes_ == b.nodes_; }

private:
  std::vector<QuantNode> nodes_;
  std::vector<Rational> errors_;
  Rational distortion_;
};

/// Single(ω) -> {Pair(ω), Single(ω3)}; Pair(ω) -> {Single(ω1), Single(ω2)}.
std::pair<QuantNode, QuantNode> split_node(const QuantNode &n);

/// Indices (into s.nodes()) of the nodes of maximal element error.
std::vector<std::size_t> max_error_indices(const OptimalSet &s);
/// The nodes of maximal element error, W(s).
std::vector<QuantNode> max_error_nodes(const OptimalSet &s);

/// parent index in generation n -> child index in generation n+1.
struct TransitionEdge {
  std::size_t parentIndex = 0;
  std::size_t childIndex = 0;

  friend bool operator==(const TransitionEdge &, const TransitionEdge &) = default;
  friend auto operator<=>(const TransitionEdge &, const TransitionEdge &) = default;
};

/// The family of all optimal n-sets, sorted by key().
struct Generation {
  std::size_t n = 0;
  std::vector<OptimalSet> sets;
  Rational vn;
};

struct Step {
  Generation next;
  std::vector<TransitionEdge> edges;  // sorted
};

/// {Single(∅)}, V₁ = 27/176.
Generation trivial_generation();

/// {Pair(∅), Single(3)}, V₂ = 117/1408.
Generation seed_generation();

/// Splits every maximal-error node of every set, deduplicates the results and
/// records which parent produced which child. Throws InvariantViolation if the
/// successors disagree on distortion or fail to decrease it.
Step advance(const Generation &g);

Generation next_generation(const Generation &g);

/// Generations 2..n in order. Throws std::invalid_argument for n < 2.
std::vector<Generation> run_to(std::size_t n);

/// Generation n for any n >= 1 (n = 1 is the trivial generation).
Generation generation_at(std::size_t n);

/// Streams generations 2..n to `visit`, holding only the current one in
/// memory. The callback also receives the edges into that generation (empty
/// for n = 2).
void for_each_generation(std::size_t n,
                         const std::function<void(const Generation &, const std::vector<TransitionEdge> &)> &visit);

/// One entry per level from -> from+1, …, to-1 -> to.
struct TransitionLevel {
  std::size_t from_n = 0;
  std::size_t parents = 0;
  std::size_t children = 0;
  std::vector<TransitionEdge> edges;

  std::vector<std::size_t> out_degrees() const;
  std::vector<std::size_t> in_degrees() const;
};

/// Throws std::invalid_argument unless 2 <= from < to.
std::vector<TransitionLevel> transition_graph(std::size_t from, std::size_t to);

}  // namespace rtq
