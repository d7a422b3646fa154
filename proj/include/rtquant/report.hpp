#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rtquant/engine.hpp"
#include "rtquant/oracle.hpp"

namespace rtq {

/// Thrown for bad command arguments; maps to exit code 1.
class UsageError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

namespace exit_code {
inline constexpr int kSuccess = 0;
inline constexpr int kUsage = 1;
inline constexpr int kVerificationFailed = 2;
inline constexpr int kInvariantViolation = 3;
}  // namespace exit_code

enum class Command { Vn, Enumerate, Count, Tree, Plot, Verify };
enum class Format { Text, Json, Csv, Dot, Svg };

std::optional<Command> parse_command(std::string_view name);
std::optional<Format> parse_format(std::string_view name);
std::string_view to_string(Format f);

struct RunConfig {
  Command command = Command::Vn;
  std::size_t n = 2;
  std::size_t from = 2;
  std::size_t to = 2;
  std::size_t samples = 1'000'000;
  std::size_t restarts = 20;
  std::uint64_t seed = 1;
  int digits = 6;  // significant digits of decimal renderings
  std::size_t set_index = 0;
  std::size_t depth = 5;
  double scale = 600.0;
  std::string out;  // empty: standard output
  std::optional<Format> format;  // empty: the command's default
};

/// Checks the config against the command's preconditions; throws UsageError.
void validate(const RunConfig &cfg);

// --- serializers ---------------------------------------------------------

/// "num/den ≈ decimal"
std::string vn_text(const Rational &vn, int digits);
std::string vn_json(std::size_t n, const Rational &vn, int digits);

/// {"n": int, "vn": {"num": str, "den": str}, "sets": [[node strings]]}
/// with keys in that order and no whitespace.
std::string enumeration_json(const Generation &g);
std::string enumeration_text(const Generation &g, int digits);

/// Parses enumeration_json output. Recomputes distortions exactly and throws
/// std::invalid_argument if the stated vn disagrees.
Generation parse_enumeration_json(std::string_view text);

/// Header "n,card,vn_num,vn_den,vn_decimal", LF line endings.
std::string count_csv(std::size_t from, std::size_t to, int digits);
std::string count_json(std::size_t from, std::size_t to, int digits);

/// Layered digraph with node ids "n_i" and one rank group per generation.
std::string tree_dot(std::size_t from, std::size_t to);

struct PlotOptions {
  std::size_t n = 1;
  std::size_t depth = 5;
  std::size_t set_index = 0;
  double scale = 600.0;  // SVG units per unit length
  double margin = 20.0;
  double point_radius = 4.0;
};

/// Points of the selected optimal set; throws UsageError for a bad index.
std::vector<QuantNode> plot_nodes(const PlotOptions &opt);

/// SVG 1.1 drawing of the level-`depth` cells and the optimal points.
std::string plot_svg(const PlotOptions &opt);

/// Maps SVG user coordinates back to the plane.
oracle::Point2 svg_to_plane(double cx, double cy, const PlotOptions &opt);

struct VerifyOptions {
  std::size_t n = 2;
  std::size_t samples = 1'000'000;
  std::size_t restarts = 20;
  std::uint64_t seed = 1;
};

struct VerifyResult {
  std::string text;
  bool pass = false;
};

/// Relative tolerance for empirical distortion of the exact sets.
double distortion_tolerance(std::size_t n);

/// Moments, empirical distortion of every set in 𝒞ₙ, a Lloyd comparison and
/// the centroid condition. Deterministic for fixed options.
VerifyResult verify(const VerifyOptions &opt);

/// Executes one command, writing to `out` (or to cfg.out when set). Returns
/// the process exit code; usage errors and invariant violations are reported
/// on `err`.
int run(const RunConfig &cfg, std::ostream &out, std::ostream &err);

}  // namespace rtq
