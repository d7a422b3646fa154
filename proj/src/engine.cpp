#include "rtquant/engine.hpp"

#include <algorithm>
#include <map>

namespace rtq {

OptimalSet::OptimalSet(std::vector<QuantNode> nodes) : nodes_(std::move(nodes)) {
  std::sort(nodes_.begin(), nodes_.end());
  if (!regions_disjoint(nodes_)) throw std::invalid_argument("OptimalSet: node regions overlap");
  errors_.reserve(nodes_.size());
  for (const auto &n : nodes_) {
    errors_.push_back(node_error(n));
    distortion_ += errors_.back();
  }
}

std::string OptimalSet::key() const {
  std::string out;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (i) out += ',';
    out += nodes_[i].str();
  }
  return out;
}

OptimalSet OptimalSet::mirrored() const {
  std::vector<QuantNode> m;
  m.reserve(nodes_.size());
  for (const auto &n : nodes_) m.push_back(n.mirrored());
  return OptimalSet(std::move(m));
}

OptimalSet OptimalSet::split(std::size_t i) const {
  if (i >= nodes_.size()) throw std::out_of_range("OptimalSet::split: index out of range");
  const auto [first, second] = split_node(nodes_[i]);

  OptimalSet out;
  out.nodes_ = nodes_;
  out.errors_ = errors_;
  out.nodes_.erase(out.nodes_.begin() + static_cast<std::ptrdiff_t>(i));
  out.errors_.erase(out.errors_.begin() + static_cast<std::ptrdiff_t>(i));
  out.distortion_ = distortion_ - errors_[i];

  for (const QuantNode &c : {first, second}) {
    const auto pos = std::lower_bound(out.nodes_.begin(), out.nodes_.end(), c);
    const auto at = pos - out.nodes_.begin();
    Rational e = node_error(c);
    out.distortion_ += e;
    out.nodes_.insert(pos, c);
    out.errors_.insert(out.errors_.begin() + at, std::move(e));
  }
  return out;
}

std::pair<QuantNode, QuantNode> split_node(const QuantNode &n) {
  if (n.is_pair()) return {QuantNode::single(n.word.child(1)), QuantNode::single(n.word.child(2))};
  return {QuantNode::pair(n.word), QuantNode::single(n.word.child(3))};
}

std::vector<std::size_t> max_error_indices(const OptimalSet &s) {
  if (s.size() == 0) throw std::invalid_argument("max_error_indices: empty set");
  const Rational *best = &s.error(0);
  for (std::size_t i = 1; i < s.size(); ++i)
    if (s.error(i) > *best) best = &s.error(i);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s.error(i) == *best) out.push_back(i);
  return out;
}

std::vector<QuantNode> max_error_nodes(const OptimalSet &s) {
  std::vector<QuantNode> out;
  for (auto i : max_error_indices(s)) out.push_back(s.nodes()[i]);
  return out;
}

Generation trivial_generation() {
  Generation g;
  g.n = 1;
  g.sets.emplace_back(std::vector<QuantNode>{QuantNode::single(Word{})});
  g.vn = g.sets.front().distortion();
  return g;
}

Generation seed_generation() {
  Generation g;
  g.n = 2;
  g.sets.emplace_back(std::vector<QuantNode>{QuantNode::pair(Word{}), QuantNode::single(Word("3"))});
  g.vn = g.sets.front().distortion();
  return g;
}

Step advance(const Generation &g) {
  if (g.sets.empty()) throw InvariantViolation("advance: empty generation");

  struct Child {
    OptimalSet set;
    std::vector<std::size_t> parents;
  };
  std::map<std::string, Child> children;
  for (std::size_t p = 0; p < g.sets.size(); ++p) {
    const OptimalSet &parent = g.sets[p];
    for (auto i : max_error_indices(parent)) {
      OptimalSet child = parent.split(i);
      std::string key = child.key();
      auto [it, inserted] = children.try_emplace(std::move(key), Child{std::move(child), {}});
      it->second.parents.push_back(p);
    }
  }

  Step step;
  step.next.n = g.n + 1;
  step.next.sets.reserve(children.size());
  std::size_t index = 0;
  for (auto &[key, child] : children) {
    for (auto p : child.parents) step.edges.push_back({p, index});
    step.next.sets.push_back(std::move(child.set));
    ++index;
  }
  std::sort(step.edges.begin(), step.edges.end());
  step.edges.erase(std::unique(step.edges.begin(), step.edges.end()), step.edges.end());

  step.next.vn = step.next.sets.front().distortion();
  for (const auto &s : step.next.sets) {
    if (s.distortion() != step.next.vn)
      throw InvariantViolation("advance: successors at n=" + std::to_string(step.next.n) +
                               " have unequal distortion");
  }
  if (!(step.next.vn < g.vn))
    throw InvariantViolation("advance: distortion did not decrease at n=" + std::to_string(step.next.n));
  return step;
}

Generation next_generation(const Generation &g) { return advance(g).next; }

void for_each_generation(std::size_t n,
                         const std::function<void(const Generation &, const std::vector<TransitionEdge> &)> &visit) {
  if (n < 2) throw std::invalid_argument("for_each_generation: n must be >= 2");
  Generation current = seed_generation();
  visit(current, {});
  while (current.n < n) {
    Step step = advance(current);
    visit(step.next, step.edges);
    current = std::move(step.next);
  }
}

std::vector<Generation> run_to(std::size_t n) {
  if (n < 2) throw std::invalid_argument("run_to: n must be >= 2");
  std::vector<Generation> out;
  for_each_generation(n, [&](const Generation &g, const std::vector<TransitionEdge> &) { out.push_back(g); });
  return out;
}

Generation generation_at(std::size_t n) {
  if (n == 0) throw std::invalid_argument("generation_at: n must be >= 1");
  if (n == 1) return trivial_generation();
  Generation current = seed_generation();
  while (current.n < n) current = next_generation(current);
  return current;
}

std::vector<std::size_t> TransitionLevel::out_degrees() const {
  std::vector<std::size_t> d(parents, 0);
  for (const auto &e : edges) ++d[e.parentIndex];
  return d;
}

std::vector<std::size_t> TransitionLevel::in_degrees() const {
  std::vector<std::size_t> d(children, 0);
  for (const auto &e : edges) ++d[e.childIndex];
  return d;
}

std::vector<TransitionLevel> transition_graph(std::size_t from, std::size_t to) {
  if (from < 2 || from >= to) throw std::invalid_argument("transition_graph: need 2 <= from < to");
  std::vector<TransitionLevel> levels;
  std::size_t previous_count = 0;
  for_each_generation(to, [&](const Generation &g, const std::vector<TransitionEdge> &edges) {
    if (g.n > from) levels.push_back({g.n - 1, previous_count, g.sets.size(), edges});
    previous_count = g.sets.size();
  });
  return levels;
}

}  // namespace rtq
