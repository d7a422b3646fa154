#include "rtquant/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <thread>

namespace rtq::oracle {

namespace {

const double kSqrt3 = std::sqrt(3.0);

double uniform01(std::mt19937_64 &g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

struct FloatMap {
  double scale, tx, ty;
};

std::array<FloatMap, 3> float_maps() {
  std::array<FloatMap, 3> out{};
  for (int i = 1; i <= 3; ++i) {
    const auto &m = ifs::map(i);
    out[static_cast<std::size_t>(i - 1)] = {m.scale.to_double(), m.translation.x_double(),
                                            m.translation.y_double()};
  }
  return out;
}

std::mt19937_64 restart_engine(std::uint64_t seed, std::size_t restart) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(restart)};
  return std::mt19937_64(seq);
}

// Ratio estimator Σnum/Σden with a batch-means delta-method error.
Estimate ratio_estimate(std::span<const double> num, std::span<const double> den) {
  const double sn = std::accumulate(num.begin(), num.end(), 0.0);
  const double sd = std::accumulate(den.begin(), den.end(), 0.0);
  Estimate e;
  if (sd <= 0.0) return e;
  e.mean = sn / sd;
  const std::size_t b = num.size();
  if (b < 2) return e;
  double ss = 0.0;
  for (std::size_t i = 0; i < b; ++i) {
    const double r = num[i] - e.mean * den[i];
    ss += r * r;
  }
  e.stderr_ = std::sqrt(static_cast<double>(b) / static_cast<double>(b - 1) * ss) / sd;
  return e;
}

std::size_t batch_count(std::size_t n, std::size_t requested) {
  return std::max<std::size_t>(1, std::min(requested, n));
}

}  // namespace

Point2 to_point2(const QPoint &p) { return {p.x_double(), p.y_double()}; }

SampleSet sample(std::size_t count, std::uint64_t seed) {
  if (count == 0) throw std::invalid_argument("sample: count must be >= 1");
  const auto maps = float_maps();
  const double p1 = ifs::map(1).weight.to_double();
  const double p12 = p1 + ifs::map(2).weight.to_double();

  std::mt19937_64 g(seed);
  SampleSet s;
  s.seed = seed;
  s.count = count;
  s.points.reserve(count);

  Point2 x = to_point2(ifs::mean());
  for (std::size_t t = 0; t < kBurnIn + count; ++t) {
    const double u = uniform01(g);
    const FloatMap &m = maps[u < p1 ? 0 : (u < p12 ? 1 : 2)];
    x = {m.scale * x.x + m.tx, m.scale * x.y + m.ty};
    if (t >= kBurnIn) s.points.push_back(x);
  }
  return s;
}

Estimate batch_mean(std::span<const double> values, std::size_t batches) {
  const std::size_t n = values.size();
  if (n == 0) throw std::invalid_argument("batch_mean: no values");
  const std::size_t b = batch_count(n, batches);
  std::vector<double> sums(b, 0.0), sizes(b, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = i * b / n;
    sums[j] += values[i];
    sizes[j] += 1.0;
  }
  return ratio_estimate(sums, sizes);
}

MomentReport moment_check(const SampleSet &s, double sigmas) {
  if (s.points.size() < 10000) throw std::invalid_argument("moment_check: need at least 10^4 samples");
  const Moments exact = moments();
  const Point2 mu = to_point2(exact.mean);

  const std::size_t n = s.points.size();
  std::vector<double> x1(n), x2(n), x1sq(n), x2sq(n), dev(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 &p = s.points[i];
    x1[i] = p.x;
    x2[i] = p.y;
    x1sq[i] = p.x * p.x;
    x2sq[i] = p.y * p.y;
    dev[i] = sq_dist(p, mu);
  }

  MomentReport r;
  auto add = [&](std::string name, std::span<const double> v, double target) {
    const Estimate e = batch_mean(v);
    const double tol = sigmas * e.stderr_;
    r.checks.push_back({std::move(name), e.mean, e.stderr_, target, tol, std::abs(e.mean - target) <= tol});
  };
  add("E(X1)", x1, mu.x);
  add("E(X2)", x2, mu.y);
  add("E(X1^2)", x1sq, exact.ex1_sq.to_double());
  add("E(X2^2)", x2sq, exact.ex2_sq.to_double());
  add("V", dev, exact.variance.to_double());
  r.pass = std::all_of(r.checks.begin(), r.checks.end(), [](const StatCheck &c) { return c.pass; });
  return r;
}

std::size_t nearest(const Point2 &p, std::span<const Point2> centers) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < centers.size(); ++j) {
    const double d = sq_dist(p, centers[j]);
    if (d < best_d) {
      best_d = d;
      best = j;
    }
  }
  return best;
}

double empirical_distortion(const SampleSet &s, std::span<const Point2> centers) {
  if (centers.empty()) throw std::invalid_argument("empirical_distortion: no centers");
  double total = 0.0;
  for (const auto &p : s.points) total += sq_dist(p, centers[nearest(p, centers)]);
  return total / static_cast<double>(s.points.size());
}

Estimate empirical_distortion_estimate(const SampleSet &s, std::span<const Point2> centers) {
  if (centers.empty()) throw std::invalid_argument("empirical_distortion: no centers");
  std::vector<double> d(s.points.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = sq_dist(s.points[i], centers[nearest(s.points[i], centers)]);
  return batch_mean(d);
}

Codebook lloyd_descent(const SampleSet &s, std::vector<Point2> centers, std::vector<double> *history) {
  const std::size_t k = centers.size();
  const std::size_t n = s.points.size();
  std::vector<double> sx(k), sy(k), cnt(k);
  double previous = std::numeric_limits<double>::infinity();

  Codebook out;
  for (std::size_t it = 0;; ++it) {
    std::fill(sx.begin(), sx.end(), 0.0);
    std::fill(sy.begin(), sy.end(), 0.0);
    std::fill(cnt.begin(), cnt.end(), 0.0);
    double total = 0.0;
    for (const auto &p : s.points) {
      const std::size_t j = nearest(p, centers);
      total += sq_dist(p, centers[j]);
      sx[j] += p.x;
      sy[j] += p.y;
      cnt[j] += 1.0;
    }
    const double d = total / static_cast<double>(n);
    if (history) history->push_back(d);

    const bool converged = std::isfinite(previous) && (previous - d) < kLloydTolerance * previous;
    if (converged || it + 1 >= kLloydMaxIterations) {
      out.centers = std::move(centers);
      out.distortion = d;
      out.iterations = it + 1;
      return out;
    }
    previous = d;
    for (std::size_t j = 0; j < k; ++j) {
      if (cnt[j] > 0.0) centers[j] = {sx[j] / cnt[j], sy[j] / cnt[j]};
    }
  }
}

namespace {

std::vector<Point2> dsquared_seeding(const SampleSet &s, std::size_t k, std::mt19937_64 &g) {
  const std::size_t n = s.points.size();
  std::vector<Point2> centers;
  centers.reserve(k);
  centers.push_back(s.points[std::min(n - 1, static_cast<std::size_t>(uniform01(g) * static_cast<double>(n)))]);
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = sq_dist(s.points[i], centers[0]);

  while (centers.size() < k) {
    const double total = std::accumulate(d.begin(), d.end(), 0.0);
    std::size_t pick = n - 1;
    if (total > 0.0) {
      double target = uniform01(g) * total;
      for (std::size_t i = 0; i < n; ++i) {
        target -= d[i];
        if (target < 0.0) {
          pick = i;
          break;
        }
      }
    } else {
      pick = std::min(n - 1, static_cast<std::size_t>(uniform01(g) * static_cast<double>(n)));
    }
    centers.push_back(s.points[pick]);
    for (std::size_t i = 0; i < n; ++i) d[i] = std::min(d[i], sq_dist(s.points[i], centers.back()));
  }
  return centers;
}

}  // namespace

Codebook lloyd(const SampleSet &s, std::size_t k, std::size_t restarts, std::uint64_t seed) {
  if (k == 0) throw std::invalid_argument("lloyd: k must be >= 1");
  if (restarts == 0) throw std::invalid_argument("lloyd: restarts must be >= 1");
  if (k > s.points.size()) throw std::invalid_argument("lloyd: k exceeds the sample count");

  std::vector<Codebook> results(restarts);
  auto run = [&](std::size_t r) {
    auto g = restart_engine(seed, r);
    results[r] = lloyd_descent(s, dsquared_seeding(s, k, g));
    results[r].restart = r;
  };

  const std::size_t workers =
      std::min<std::size_t>(restarts, std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t r = w; r < restarts; r += workers) run(r);
    });
  }
  for (auto &t : pool) t.join();

  std::size_t best = 0;
  for (std::size_t r = 1; r < restarts; ++r)
    if (results[r].distortion < results[best].distortion) best = r;
  return results[best];
}

double matching_distance(std::span<const Point2> a, std::span<const Point2> b) {
  if (a.size() != b.size()) throw std::invalid_argument("matching_distance: size mismatch");
  if (a.size() > 8) throw std::invalid_argument("matching_distance: at most 8 points");
  std::vector<std::size_t> perm(a.size());
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::sqrt(sq_dist(a[i], b[perm[i]])));
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

CentroidReport verify_centroid_condition(const OptimalSet &set, const SampleSet &s, double sigmas) {
  const std::size_t k = set.size();
  const std::size_t n = s.points.size();
  if (n == 0) throw std::invalid_argument("verify_centroid_condition: empty sample");

  std::vector<Point2> centers;
  centers.reserve(k);
  for (const auto &node : set.nodes()) centers.push_back(to_point2(node.point()));

  const std::size_t b = batch_count(n, 1000);
  // Per cell and batch: count, Σx, Σy; plus batch sizes.
  std::vector<double> cnt(k * b, 0.0), sx(k * b, 0.0), sy(k * b, 0.0), sizes(b, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t batch = i * b / n;
    const std::size_t j = nearest(s.points[i], centers);
    cnt[j * b + batch] += 1.0;
    sx[j * b + batch] += s.points[i].x;
    sy[j * b + batch] += s.points[i].y;
    sizes[batch] += 1.0;
  }

  CentroidReport report;
  report.pass = true;
  for (std::size_t j = 0; j < k; ++j) {
    CellCheck c;
    c.node = set.nodes()[j];
    c.exact_point = centers[j];
    c.exact_mass = c.node.mass().to_double();
    const std::span<const double> cj(cnt.data() + j * b, b);
    c.count = static_cast<std::size_t>(std::accumulate(cj.begin(), cj.end(), 0.0));
    c.mass = ratio_estimate(cj, sizes);
    report.total_mass += c.mass.mean;
    if (c.count > 0) {
      c.centroid_x = ratio_estimate(std::span<const double>(sx.data() + j * b, b), cj);
      c.centroid_y = ratio_estimate(std::span<const double>(sy.data() + j * b, b), cj);
      auto within = [&](const Estimate &e, double target) {
        return std::abs(e.mean - target) <= sigmas * e.stderr_ + 1e-12;
      };
      c.pass = within(c.mass, c.exact_mass) && within(c.centroid_x, c.exact_point.x) &&
               within(c.centroid_y, c.exact_point.y);
    }
    report.pass = report.pass && c.pass;
    report.cells.push_back(std::move(c));
  }
  return report;
}

}  // namespace rtq::oracle
