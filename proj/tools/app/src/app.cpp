#include "hmvp_app/app.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <ostream>
#include <utility>
#include <variant>

#include "hmvp/errors.hpp"
#include "hmvp_app/commands.hpp"
#include "hmvp_app/reproduce.hpp"

namespace hmvp::app {
namespace {

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--space", cfg.space, "space descriptor (JSON)");
  sub->add_option("--problem", cfg.problem, "problem or plan descriptor (JSON)");
  sub->add_option("--tol", cfg.tol, "tolerance override")->check(CLI::PositiveNumber);
  sub->add_option("--eps", cfg.eps, "averaging radius override")->check(CLI::PositiveNumber);
  sub->add_option("--max-iters", cfg.max_iters, "iteration cap override")->check(CLI::PositiveNumber);
  sub->add_option("--out", cfg.out, "output directory");
  sub->add_option("--format", cfg.format, "csv or json")
      ->transform(CLI::CheckedTransformer(std::map<std::string, Format>{{"csv", Format::csv},
                                                                        {"json", Format::json}}));
}

void check_files(const RunConfig& cfg) {
  for (const auto* p : {&cfg.space, &cfg.problem}) {
    if (!p->empty() && !std::filesystem::exists(*p)) throw InputError("no such file: " + p->string());
  }
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mean-value harmonic functions on metric measure spaces"};
  app.require_subcommand(1);
  RunConfig cfg;
  const std::pair<const char*, const char*> commands[] = {
      {"solve", "solve a discrete Dirichlet problem"},
      {"classify", "classify a function by its mean-value defects"},
      {"diagnose", "measure doubling, annular decay and uniformity"},
      {"estimate", "constant sheet and empirical estimate checks"},
      {"scan-liouville", "ratio scan mu(B(x,r) sym-diff B(y,r)) / mu(B(x,r))"},
      {"perron", "lower Perron solution with barrier checks"}};
  for (const auto& [name, help] : commands) add_common(app.add_subcommand(name, help), cfg);
  auto* rep = app.add_subcommand("reproduce", "run a catalogued example");
  add_common(rep, cfg);
  rep->add_option("id", cfg.example, "example id")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  cfg.subcommand = app.get_subcommands().front()->get_name();

  try {
    check_files(cfg);
    Report report;
    if (cfg.subcommand == "solve") report = solve(cfg);
    else if (cfg.subcommand == "classify") report = classify(cfg);
    else if (cfg.subcommand == "diagnose") report = diagnose(cfg);
    else if (cfg.subcommand == "estimate") report = estimate(cfg);
    else if (cfg.subcommand == "scan-liouville") report = scan_liouville(cfg);
    else if (cfg.subcommand == "perron") report = perron(cfg);
    else report = reproduce(cfg.example);
    out << emit(report, cfg.format, cfg.out);
    if (!report.passed) {
      err << "error: " << cfg.subcommand << " checks failed\n";
      for (const auto& t : report.tables) {
        if (t.name != "checks") continue;
        for (const auto& row : t.rows) {
          if (std::get<std::string>(row.back()) == "false") {
            err << "  failed: " << std::get<std::string>(row.front()) << '\n';
          }
        }
      }
      return kExitNumerical;
    }
    return kExitOk;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const nlohmann::json::exception& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace hmvp::app
