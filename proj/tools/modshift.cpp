// Command-line entry point: one subcommand per pipeline stage plus `run`.
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "modshift/config.hpp"
#include "modshift/error.hpp"
#include "modshift/lexicon.hpp"
#include "modshift/pipeline.hpp"
#include "modshift/synthetic.hpp"

namespace fs = std::filesystem;

namespace {

int run_stages(const std::string& config, const std::optional<std::string>& out, bool resume,
               modshift::Stage until, bool quiet) {
  auto cfg = modshift::load_config(config);
  if (out) cfg.output_dir = fs::absolute(*out);
  modshift::validate(cfg);
  modshift::PipelineOptions opts;
  opts.until = until;
  opts.resume = resume;
  opts.log = quiet ? nullptr : &std::cerr;
  const auto result = modshift::run_pipeline(cfg, opts);
  for (const auto& s : result.stages) std::cout << s.name << "\t" << s.status << "\n";
  std::cout << "run directory: " << result.run_dir.string() << "\n";
  return 0;
}

int validate_only(const std::string& config) {
  const auto cfg = modshift::load_config(config);
  modshift::validate(cfg);
  const auto lex = modshift::load_lexicon(cfg.lexicon);
  std::cout << "config ok: " << cfg.spaces.size() << " spaces, "
            << cfg.resolved_comparisons().size() << " comparisons, "
            << lex.conceptnet.size() << " ConceptNet triples\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Embedding-space change analysis between text and multimodal models"};
  app.require_subcommand(1);

  std::string config;
  std::optional<std::string> out;
  bool resume = false;
  bool quiet = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-c,--config", config, "Run configuration (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("-o,--out", out, "Run directory (overrides output_dir)");
    sub->add_flag("--resume", resume, "Reuse completed stages from a previous run");
    sub->add_flag("-q,--quiet", quiet, "No progress log on stderr");
  };

  struct StageCommand {
    const char* name;
    const char* help;
    modshift::Stage until;
  };
  const StageCommand stages[] = {
      {"ingest", "Load and check spaces and lexical resources", modshift::Stage::ingest},
      {"pairs", "Build the filtered seed/neighbor pair set", modshift::Stage::pairs},
      {"annotate", "Attach lexical features to every pair", modshift::Stage::annotate},
      {"distances", "Compute per-space distances and ratio ranks", modshift::Stage::distances},
      {"regress", "Fit baselines, groups and feature contributions", modshift::Stage::regress},
      {"report", "Write tables and plot data", modshift::Stage::report},
      {"run", "Run every stage", modshift::Stage::report},
  };
  std::optional<modshift::Stage> chosen;
  for (const auto& s : stages) {
    auto* sub = app.add_subcommand(s.name, s.help);
    add_common(sub);
    sub->callback([&chosen, until = s.until] { chosen = until; });
  }

  auto* val = app.add_subcommand("validate", "Check a configuration and its inputs");
  val->add_option("-c,--config", config, "Run configuration (JSON)")->required()->check(CLI::ExistingFile);

  std::string fixture_dir;
  std::string world = "fixture";
  auto* fix = app.add_subcommand("make-fixture", "Write a synthetic world with its config");
  fix->add_option("dir", fixture_dir, "Output directory")->required();
  fix->add_option("--world", world, "fixture | planted | planted-permuted")
      ->check(CLI::IsMember({"fixture", "planted", "planted-permuted"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (val->parsed()) return validate_only(config);
    if (fix->parsed()) {
      const auto spec = world == "fixture"  ? modshift::synthetic::fixture_spec()
                        : world == "planted" ? modshift::synthetic::planted_spec(false)
                                             : modshift::synthetic::planted_spec(true);
      std::cout << modshift::synthetic::write_world(spec, fixture_dir).string() << "\n";
      return 0;
    }
    return run_stages(config, out, resume, *chosen, quiet);
  } catch (const modshift::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const modshift::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  } catch (const modshift::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
