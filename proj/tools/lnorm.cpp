#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "cli.hpp"

int main(int argc, char** argv) {
  using lnorm::cli::Format;
  using lnorm::cli::RunConfig;

  CLI::App app{"Exact L1 / Lmarg / Ld norms of integer matrices by Gray-code enumeration"};
  app.require_subcommand(1);

  RunConfig cfg;
  const std::map<std::string, Format> formats{{"text", Format::Text}, {"jsonl", Format::Jsonl}};

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--mode", cfg.mode, "Norm to compute")
        ->check(CLI::IsMember({"l1", "marg", "ld"}))
        ->capture_default_str();
    sub->add_option("--d", cfg.d, "Message alphabet size for --mode ld (>= 2)");
    sub->add_option("--threads", cfg.threads,
                    "Worker threads (default: largest power of d not above the hardware parallelism)");
    sub->add_flag("!--no-preprocess", cfg.preprocess, "Skip the norm-preserving matrix reductions");
  };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "Output format")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case).description("{text,jsonl}"))
        ->default_str("text");
  };

  auto* compute = app.add_subcommand("compute", "Compute a norm");
  compute->add_option("input", cfg.input, "Matrix file, '-' for stdin")->capture_default_str();
  add_common(compute);
  add_format(compute);

  auto* verify = app.add_subcommand("verify", "Compare the Gray-code engine against the naive oracle");
  verify->add_option("input", cfg.input, "Matrix file, '-' for stdin")->capture_default_str();
  add_common(verify);
  add_format(verify);

  auto* bench = app.add_subcommand("bench", "Time naive vs iterative L1 on random n x n matrices");
  bench->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
  bench->add_option("--min-n", cfg.min_n, "Smallest n (>= 14)")->capture_default_str();
  bench->add_option("--max-n", cfg.max_n, "Largest n (<= 26)")->capture_default_str();
  bench->add_option("--step", cfg.step_n, "Increment of n")->capture_default_str();
  bench->add_option("--trials", cfg.trials, "Repetitions per arm; the minimum is reported")->capture_default_str();
  add_format(bench);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : lnorm::cli::kExitInput;
  }

  if (compute->parsed()) return lnorm::cli::run_compute(cfg, std::cin, std::cout, std::cerr);
  if (verify->parsed()) return lnorm::cli::run_verify(cfg, std::cin, std::cout, std::cerr);
  return lnorm::cli::run_bench(cfg, std::cout, std::cerr);
}
