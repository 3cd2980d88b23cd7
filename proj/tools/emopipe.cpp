#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "emopipe/cli/commands.hpp"
#include "emopipe/cli/synth.hpp"
#include "emopipe/emoclass/prompt.hpp"

namespace cli = emopipe::cli;

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  bool strict = false;
  std::string out;
  bool quiet = false;
};

cli::Context make_context(const Flags& f) {
  cli::Context ctx;
  if (f.config.empty()) throw emopipe::ValidationError("--config is required");
  ctx.cfg = cli::load_run_config(f.config);
  ctx.seed = f.seed ? *f.seed : static_cast<std::uint64_t>(ctx.cfg.integer("seed", 42));
  ctx.strict = f.strict;
  if (!f.out.empty()) ctx.out = f.out;
  else if (ctx.cfg.has("output_dir")) ctx.out = ctx.cfg.resolve(ctx.cfg.text("output_dir"));
  else ctx.out = "emopipe_out";
  ctx.log = f.quiet ? nullptr : &std::cerr;
  return ctx;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"emopipe: emotion extraction from financial posts and panel regressions"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags flags;
  app.add_option("--config", flags.config, "key-value run config");
  app.add_option("--seed", flags.seed, "override the config seed");
  app.add_flag("--strict", flags.strict, "fail on the first malformed input record");
  app.add_option("--out", flags.out, "output directory (overrides output_dir)");
  app.add_flag("-q,--quiet", flags.quiet, "no stage log on stderr");

  struct Command {
    const char* name;
    const char* help;
    void (*run)(const cli::Context&);
  };
  static const Command commands[] = {
      {"preprocess", "filter and normalize messages", [](const cli::Context& c) { cli::cmd_preprocess(c); }},
      {"train", "fit the classifier on the labeled set", [](const cli::Context& c) { cli::cmd_train(c); }},
      {"evaluate", "k-fold cross-validation report", [](const cli::Context& c) { cli::cmd_evaluate(c); }},
      {"predict", "write interchange predictions", [](const cli::Context& c) { cli::cmd_predict(c); }},
      {"aggregate", "firm-session emotion aggregates", [](const cli::Context& c) { cli::cmd_aggregate(c); }},
      {"panel", "returns, controls and joined emotions", [](const cli::Context& c) { cli::cmd_panel(c); }},
      {"regress", "fixed-effects regressions from the spec file", [](const cli::Context& c) { cli::cmd_regress(c); }},
      {"eventstudy", "daily emotion shares with trailing z-scores", [](const cli::Context& c) { cli::cmd_eventstudy(c); }},
      {"summarize", "summary statistics and correlations", [](const cli::Context& c) { cli::cmd_summarize(c); }},
      {"run", "every stage in order", [](const cli::Context& c) { cli::cmd_run(c); }},
  };
  for (const auto& c : commands) app.add_subcommand(c.name, c.help);

  auto* prompt = app.add_subcommand("prompt", "print the annotation prompt for one message");
  std::string prompt_text;
  bool prompt_json = false;
  prompt->add_option("text", prompt_text, "message text")->required();
  prompt->add_flag("--json", prompt_json, "chat request JSON instead of text");

  auto* synth = app.add_subcommand("synth", "write the synthetic fixture inputs");
  cli::SynthOptions synth_opt;
  synth->add_option("--messages", synth_opt.messages, "number of messages")->check(CLI::Range(100, 1000000));
  synth->add_option("--labeled-per-class", synth_opt.labeled_per_class, "labeled rows per emotion")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (prompt->parsed()) {
      auto p = emopipe::emoclass::build_annotation_prompt(prompt_text);
      if (prompt_json) std::cout << p.to_json().dump(2) << '\n';
      else p.write_text(std::cout);
      return 0;
    }
    if (synth->parsed()) {
      if (flags.out.empty()) throw emopipe::ValidationError("synth needs --out");
      if (flags.seed) synth_opt.seed = *flags.seed;
      emopipe::RunMetadata meta;
      meta.seed = synth_opt.seed;
      meta.extra = "command=synth";
      cli::write_synthetic_fixtures(flags.out, synth_opt, meta);
      return 0;
    }
    const auto ctx = make_context(flags);
    for (const auto& c : commands)
      if (app.got_subcommand(c.name)) c.run(ctx);
    return 0;
  } catch (const emopipe::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}
