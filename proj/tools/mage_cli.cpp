#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mage/acceptance.hpp"
#include "mage/commands.hpp"
#include "mage/config.hpp"
#include "mage/errors.hpp"

namespace {

enum Exit { kOk = 0, kInput = 2, kDomain = 3, kInternal = 4 };

struct Flags {
  std::string input;
  std::string format = "text";
  std::optional<double> tolerance;
  std::optional<std::string> seed;
  std::optional<double> box;
};

mage::RunConfig build_config(const Flags& f) {
  mage::RunConfig cfg = f.input.empty() ? mage::RunConfig{} : mage::load_config(f.input);
  if (f.tolerance) cfg.tolerance = *f.tolerance;
  if (f.box) cfg.box = *f.box;
  if (f.seed) {
    try {
      std::size_t used = 0;
      cfg.seed = std::stoull(*f.seed, &used, 0);
      if (used != f.seed->size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw mage::ParseError("--seed must be a non-negative integer, got '" + *f.seed + "'");
    }
  }
  cfg.validate();
  return cfg;
}

int emit(const mage::Report& r, const std::string& format) {
  std::cout << (format == "structured" ? r.structured() : r.text());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monge-Ampere structures, generalized geometry and their matrix algebras"};
  app.require_subcommand(1);
  Flags flags;
  app.add_option("--input", flags.input, "Configuration file")->check(CLI::ExistingFile);
  app.add_option("--format", flags.format, "Output format")->check(CLI::IsMember({"text", "structured"}));
  app.add_option("--tolerance", flags.tolerance, "Tolerance for sampled zero tests");
  app.add_option("--seed", flags.seed, "Seed for sample points and random checks");
  app.add_option("--box", flags.box, "Half-width of the sampling box");
  app.fallthrough();

  auto* classify = app.add_subcommand("classify", "Classify the Monge-Ampere structure in [structure]");
  auto* generalized = app.add_subcommand("generalized", "Generalized structures of the stream structure");
  auto* fluids = app.add_subcommand("fluids", "Pressure equation and stream structure of a flow");
  auto* algebra = app.add_subcommand("algebra", "Matrix algebra generated by a constant triple");
  auto* selftest = app.add_subcommand("selftest", "Run the acceptance criteria");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  try {
    mage::RunConfig cfg = build_config(flags);
    if (*selftest) {
      auto results = mage::run_acceptance(cfg.sample_options());
      emit(mage::acceptance_report(results, cfg.sample_options()), flags.format);
      for (const auto& c : results)
        if (!c.passed) return kInternal;
      return kOk;
    }
    if (*classify) return emit(mage::cmd_classify(cfg), flags.format);
    if (*generalized) return emit(mage::cmd_generalized(cfg), flags.format);
    if (*fluids) return emit(mage::cmd_fluids(cfg), flags.format);
    if (*algebra) return emit(mage::cmd_algebra(cfg), flags.format);
  } catch (const mage::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const mage::DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kDomain;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}
