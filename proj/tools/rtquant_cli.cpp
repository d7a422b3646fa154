// rtquant: exact optimal quantizers for the nonhomogeneous R-triangle measure.
//
//   rtquant vn --n 6
//   rtquant enumerate --n 7 [--format json|text]
//   rtquant count --from 5 --to 82 [--format csv|json]
//   rtquant tree --from 8 --to 21 > tree.dot
//   rtquant plot --n 8 --depth 5 --out n8.svg
//   rtquant verify --n 3 --samples 1000000 --restarts 20 --seed 1

#include <iostream>

#include <CLI11.hpp>

#include "rtquant/report.hpp"

namespace {

struct Flags {
  rtq::RunConfig cfg;
  std::string format;
};

void add_output_flags(CLI::App *sub, Flags &f) {
  sub->add_option("--digits", f.cfg.digits, "Significant digits of decimal output")->check(CLI::PositiveNumber);
  sub->add_option("--out", f.cfg.out, "Write to this file instead of stdout");
  sub->add_option("--format", f.format, "Output format")
      ->check(CLI::IsMember({"csv", "json", "dot", "svg", "text"}));
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Exact optimal n-means for the nonhomogeneous R-triangle measure"};
  app.require_subcommand(1);
  Flags f;

  auto *vn = app.add_subcommand("vn", "Exact quantization error V_n");
  vn->add_option("--n", f.cfg.n, "Number of points (>= 1)")->required();
  add_output_flags(vn, f);

  auto *enumerate = app.add_subcommand("enumerate", "All optimal sets of n-means");
  enumerate->add_option("--n", f.cfg.n, "Number of points (>= 2)")->required();
  add_output_flags(enumerate, f);

  auto *count = app.add_subcommand("count", "card(C_n) and V_n for a range of n");
  count->add_option("--from", f.cfg.from, "First n (>= 2)")->required();
  count->add_option("--to", f.cfg.to, "Last n")->required();
  add_output_flags(count, f);

  auto *tree = app.add_subcommand("tree", "Transition graph between consecutive generations (DOT)");
  tree->add_option("--from", f.cfg.from, "First generation (>= 2)")->required();
  tree->add_option("--to", f.cfg.to, "Last generation (> from)")->required();
  add_output_flags(tree, f);

  auto *plot = app.add_subcommand("plot", "SVG of an optimal configuration");
  plot->add_option("--n", f.cfg.n, "Number of points (>= 1)")->required();
  plot->add_option("--depth", f.cfg.depth, "Construction level drawn as cell outlines")->capture_default_str();
  plot->add_option("--set-index", f.cfg.set_index, "Which optimal set when card(C_n) > 1")->capture_default_str();
  plot->add_option("--scale", f.cfg.scale, "SVG units per unit length")->capture_default_str();
  add_output_flags(plot, f);

  auto *verify = app.add_subcommand("verify", "Statistical cross-check against chaos-game samples");
  verify->add_option("--n", f.cfg.n, "Number of points (>= 1)")->required();
  verify->add_option("--samples", f.cfg.samples, "Chaos-game sample count")->capture_default_str();
  verify->add_option("--restarts", f.cfg.restarts, "Lloyd restarts")->capture_default_str();
  verify->add_option("--seed", f.cfg.seed, "Random seed")->capture_default_str();
  add_output_flags(verify, f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return rtq::exit_code::kUsage;
  }

  for (auto *sub : app.get_subcommands()) f.cfg.command = *rtq::parse_command(sub->get_name());
  if (!f.format.empty()) f.cfg.format = rtq::parse_format(f.format);

  return rtq::run(f.cfg, std::cout, std::cerr);
}
