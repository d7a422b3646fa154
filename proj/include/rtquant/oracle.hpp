#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rtquant/engine.hpp"

namespace rtq::oracle {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2 &, const Point2 &) = default;
};

inline double sq_dist(const Point2 &a, const Point2 &b) {
  const double dx = a.x - b.x, dy = a.y - b.y;
  return dx * dx + dy * dy;
}

Point2 to_point2(const QPoint &p);

/// Chaos-game draws from P, in generation order.
struct SampleSet {
  std::vector<Point2> points;
  std::uint64_t seed = 0;
  std::size_t count = 0;
};

/// Iterates burn-in before recording.
inline constexpr std::size_t kBurnIn = 100;

/// Chaos game: start at (1/2, √3/4), apply S_i with probabilities
/// (1/5, 1/5, 3/5), drop kBurnIn iterates, keep the next `count`.
///
/// Randomness comes from std::mt19937_64 seeded with `seed`; a uniform in
/// [0,1) is taken from the top 53 bits of each draw, so the stream is
/// identical on every conforming standard library.
SampleSet sample(std::size_t count, std::uint64_t seed);

/// Mean with a batch-means standard error. Chaos-game iterates are serially
/// correlated, so the naive iid error understates the spread.
struct Estimate {
  double mean = 0.0;
  double stderr_ = 0.0;
};

/// Batch-means estimate of E f(X) over the sample sequence.
Estimate batch_mean(std::span<const double> values, std::size_t batches = 1000);

struct StatCheck {
  std::string name;
  double estimate = 0.0;
  double stderr_ = 0.0;
  double target = 0.0;
  double tolerance = 0.0;  // absolute half-width of the acceptance band
  bool pass = false;
};

struct MomentReport {
  std::vector<StatCheck> checks;  // E(X₁), E(X₂), E(X₁²), E(X₂²), V̂
  bool pass = false;
};

/// Compares empirical moments with the exact constants at `sigmas` standard
/// errors. Requires at least 10⁴ samples.
MomentReport moment_check(const SampleSet &s, double sigmas = 4.0);

/// Index of the nearest center; ties go to the lowest index.
std::size_t nearest(const Point2 &p, std::span<const Point2> centers);

/// Mean squared distance to the nearest center.
double empirical_distortion(const SampleSet &s, std::span<const Point2> centers);
Estimate empirical_distortion_estimate(const SampleSet &s, std::span<const Point2> centers);

struct Codebook {
  std::vector<Point2> centers;
  double distortion = 0.0;
  std::size_t iterations = 0;
  std::size_t restart = 0;  // index of the winning restart
};

/// One Lloyd descent from the given centers. `history` receives the
/// distortion after every assignment step.
Codebook lloyd_descent(const SampleSet &s, std::vector<Point2> centers, std::vector<double> *history = nullptr);

inline constexpr double kLloydTolerance = 1e-12;
inline constexpr std::size_t kLloydMaxIterations = 500;

/// Best of `restarts` runs of D²-seeded Lloyd. Restarts run concurrently;
/// restart r draws from its own generator seeded by (seed, r), and ties in
/// distortion go to the lowest restart index. Throws std::invalid_argument
/// for k == 0, restarts == 0 or k > sample count.
Codebook lloyd(const SampleSet &s, std::size_t k, std::size_t restarts, std::uint64_t seed);

/// Smallest achievable maximum pairwise distance over one-to-one matchings
/// of two equally sized point sets (k ≤ 8).
double matching_distance(std::span<const Point2> a, std::span<const Point2> b);

struct CellCheck {
  QuantNode node;
  Point2 exact_point;
  double exact_mass = 0.0;
  std::size_t count = 0;
  Estimate mass;
  Estimate centroid_x;
  Estimate centroid_y;
  bool pass = false;
};

struct CentroidReport {
  std::vector<CellCheck> cells;
  double total_mass = 0.0;
  bool pass = false;
};

/// Assigns samples to their nearest node point and checks, per cell, that
/// the empirical centroid and mass agree with the exact values within
/// `sigmas` standard errors. An empty cell fails.
CentroidReport verify_centroid_condition(const OptimalSet &set, const SampleSet &s, double sigmas = 4.0);

}  // namespace rtq::oracle
