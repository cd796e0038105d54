// gwig: singularity-free potential toolkit.
//
//   gwig particle --config run.cfg [--out-dir out]   closed-form curves (CSV + SVG)
//   gwig verify   --config run.cfg [--seed N]        property + oracle suite (report)
//   gwig wave     --config run.cfg                   wave-residual refinement study
//   gwig metric   --config run.cfg                   observer metric representations

#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "gwig/gwig.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_dir;
  long long seed = -1;
};

gwig::RunConfig load(const CommonOpts& o) {
  gwig::RunConfig cfg =
      o.config_path.empty() ? gwig::RunConfig{} : gwig::parse_config_file(o.config_path);
  if (o.seed >= 0) cfg.seed = static_cast<std::uint64_t>(o.seed);
  return cfg;
}

void add_common(CLI::App* sub, CommonOpts& o) {
  sub->add_option("--config", o.config_path, "path to a key = value config file");
  sub->add_option("--seed", o.seed, "randomization seed override");
  sub->add_option("--out-dir", o.out_dir, "directory for output files");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generalized Weyl potential toolkit"};
  app.require_subcommand(1);

  CommonOpts opts;
  CLI::App* particle = app.add_subcommand("particle", "emit the charged-particle curves");
  CLI::App* verify = app.add_subcommand("verify", "run the verification suite");
  CLI::App* wave = app.add_subcommand("wave", "wave-residual refinement study");
  CLI::App* metric = app.add_subcommand("metric", "print observer metric representations");
  for (CLI::App* sub : {particle, verify, wave, metric}) add_common(sub, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    const gwig::RunConfig cfg = load(opts);
    if (particle->parsed()) return gwig::cmd_particle(cfg, opts.out_dir);
    if (verify->parsed()) return gwig::cmd_verify(cfg, opts.out_dir);
    if (wave->parsed()) return gwig::cmd_wave(cfg, opts.out_dir);
    if (metric->parsed()) return gwig::cmd_metric(cfg);
  } catch (const gwig::ConfigError& e) {
    std::cerr << e.what() << "\n";
    std::cerr << "usage: gwig particle|verify|wave|metric --config <path> [--seed N] "
                 "[--out-dir <path>]\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
