// qha: verify Hirzebruch-Riemann-Roch and Lefschetz type identities for
// bound quiver algebras.
//
//   qha verify <file> [--suite S] [--level L] [--seed N] [--samples N]
//                     [--max-resolution-length N] [--format text|json] [--field F]
//   qha random --algebra <file> [--samples N] [--seed N] [--level L]
//                     [--max-resolution-length N] [--format text|json] [--field F]
//
// Exit codes: 0 all checks pass, 1 verification failure, 2 input error,
// 3 engine cap or unimodularity error.

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qha/problem.hpp"
#include "qha/runner.hpp"

namespace {

struct CliOptions {
  std::string file;
  qha::RunOptions run;
  std::optional<qha::Level> level;
  std::optional<qha::FieldSpec> field_override;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw qha::InputError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

template <class K>
int run_with_field(const qha::Json& j, const qha::FieldSpec& spec, const CliOptions& opts) {
  qha::ProblemFile<K> problem = qha::parse_problem<K>(j, spec);
  qha::RunResult result = qha::run_problem(problem, opts.run);
  if (opts.run.format == qha::ReportFormat::json)
    std::cout << qha::run_result_json(spec, opts.run, result).dump(2) << "\n";
  else
    std::cout << qha::run_result_text(spec, opts.run, result);
  return result.exit_code;
}

int run(const CliOptions& opts) {
  qha::Json j;
  try {
    j = qha::Json::parse(read_file(opts.file));
  } catch (const nlohmann::json::parse_error& e) {
    throw qha::InputError("'" + opts.file + "' is not valid JSON: " + e.what());
  }
  qha::FieldSpec spec = opts.field_override ? *opts.field_override : qha::problem_field_spec(j);
  if (spec.kind == qha::FieldSpec::Kind::rationals)
    return run_with_field<qha::Rational>(j, spec, opts);
  return run_with_field<qha::PrimeField>(j, spec, opts);
}

void add_common_flags(CLI::App* cmd, CliOptions& opts, std::string& level, std::string& format,
                      std::string& field) {
  cmd->add_option("--level", level, "only run checks at this level")
      ->check(CLI::IsMember({"module", "bimodule", "complex", "bimodule-complex"}));
  cmd->add_option("--seed", opts.run.seed, "seed for the randomized corpora");
  cmd->add_option("--samples", opts.run.samples, "random instances per identity and algebra")
      ->check(CLI::Range(std::size_t{1}, std::size_t{9999}));
  cmd->add_option("--max-resolution-length", opts.run.cap,
                  "cap on projective resolution length")
      ->check(CLI::Range(std::size_t{1}, std::size_t{4096}));
  cmd->add_option("--format", format, "report format")
      ->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--field", field, "override the file's coefficient field (Q or F_<p>)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verifier for Riemann-Roch and Lefschetz type identities over bound quiver "
               "algebras"};
  app.require_subcommand(1);

  CliOptions opts;
  std::string level, format = "text", field;

  CLI::App* verify = app.add_subcommand("verify", "run the checks requested by a problem file");
  verify->add_option("file", opts.file, "problem file (JSON)")->required();
  verify->add_option("--suite", opts.run.suite, "which checks to run")
      ->check(CLI::IsMember({"all", "hrr", "lefschetz", "corollaries", "lemmas"}));
  add_common_flags(verify, opts, level, format, field);

  CLI::App* random = app.add_subcommand(
      "random", "run a stream of seeded randomized identity checks over a file's algebras");
  random->add_option("--algebra", opts.file, "problem file naming the algebras (JSON)")
      ->required();
  add_common_flags(random, opts, level, format, field);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help/version exit cleanly; bad flags are input errors
  }

  if (random->parsed()) {
    opts.run.suite = "random";
    if (random->count("--samples") == 0) opts.run.samples = 50;
  }
  opts.run.format = format == "json" ? qha::ReportFormat::json : qha::ReportFormat::text;

  try {
    if (!level.empty()) opts.run.level = qha::level_from_string(level);
    if (!field.empty()) opts.field_override = qha::parse_field_string(field);
    return run(opts);
  } catch (const qha::UnimodularityError& e) {
    std::cerr << "engine error: " << e.what() << "\n";
    return 3;
  } catch (const qha::CapExceeded& e) {
    std::cerr << "engine error: " << e.what() << "\n";
    return 3;
  } catch (const qha::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const qha::NonAdmissibleError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const qha::FieldError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
