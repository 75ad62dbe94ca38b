// Command line front end: classify | table | selftest.
//
// Exit codes: 0 success, 1 input or validation error, 2 resource limit.

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include <symorb/symorb.hpp>

namespace {

int exit_code_for(const symorb::Error& e) {
  switch (e.kind()) {
    case symorb::ErrorKind::limit_exceeded:
    case symorb::ErrorKind::rank_limit:
      return 2;
    default:
      return 1;
  }
}

symorb::FamilyMode parse_mode(const std::string& mode) {
  if (mode == "twisted") return symorb::FamilyMode::twisted;
  if (mode == "plain-w0") return symorb::FamilyMode::plain_w0;
  if (mode == "plain-w00") return symorb::FamilyMode::plain_w00;
  throw symorb::InvalidArgument("classify: unknown mode '" + mode + "'");
}

struct ClassifyArgs {
  std::string family;
  int p = 0;
  int q = 0;
  std::string mode = "twisted";
  bool compare = false;
  std::string spec_path;
  std::string format = "table";
  std::uint64_t limit = symorb::kDefaultEnumerationLimit;
};

int run_classify(const ClassifyArgs& args) {
  symorb::ClassificationReport report;
  if (!args.spec_path.empty()) {
    if (!args.family.empty())
      throw symorb::InvalidArgument("classify: --spec and --family are mutually exclusive");
    if (args.compare)
      throw symorb::InvalidArgument("classify: --compare requires --family sl-so");
    symorb::ClassifyRequest req;
    req.limit = args.limit;
    report = symorb::classify_action(symorb::load_action_spec(args.spec_path, args.limit), req);
  } else {
    if (args.family != "sl-so")
      throw symorb::InvalidArgument("classify: pass --family sl-so or --spec PATH");
    if (args.p < 1 || args.q < 1)
      throw symorb::InvalidArgument("classify: --family sl-so needs --p and --q (both >= 1)");
    symorb::ClassifyRequest req;
    req.mode = parse_mode(args.mode);
    req.compare = args.compare;
    req.limit = args.limit;
    report = symorb::classify_sl_so(args.p, args.q, req);
  }
  if (args.format == "json")
    std::cout << symorb::report_to_json(report).dump(2) << '\n';
  else
    std::cout << symorb::render_table(report);
  return 0;
}

int run_table(const std::string& family, int max_n, const std::string& format,
              std::uint64_t limit) {
  if (family != "sl-so") throw symorb::InvalidArgument("table: only --family sl-so is available");
  const symorb::FamilyTable t = symorb::build_family_table(max_n, limit);
  if (format == "json")
    std::cout << symorb::table_to_json(t).dump(2) << '\n';
  else
    std::cout << symorb::render_table(t);
  return 0;
}

int run_selftest_cmd(const symorb::SelftestOptions& options) {
  const auto results = symorb::run_selftest(options);
  std::cout << symorb::render_selftest(results);
  return symorb::all_passed(results) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"orbit classifier for twisted symmetry actions on finite torsion groups"};
  app.require_subcommand(1);

  ClassifyArgs cargs;
  CLI::App* classify = app.add_subcommand("classify", "classify the orbits of one action");
  classify->add_option("--family", cargs.family, "built-in family name (sl-so)");
  classify->add_option("--p", cargs.p, "first signature entry")
      ->check(CLI::Range(1, symorb::kMaxFamilyRank));
  classify->add_option("--q", cargs.q, "second signature entry")
      ->check(CLI::Range(1, symorb::kMaxFamilyRank));
  classify->add_option("--mode", cargs.mode, "twisted | plain-w0 | plain-w00")
      ->check(CLI::IsMember({"twisted", "plain-w0", "plain-w00"}));
  classify->add_flag("--compare", cargs.compare, "also report the plain-mode orbit counts");
  classify->add_option("--spec", cargs.spec_path, "path to a JSON action spec");
  classify->add_option("--format", cargs.format, "table | json")
      ->check(CLI::IsMember({"table", "json"}));
  classify->add_option("--limit", cargs.limit, "enumeration limit (default 2^24)")
      ->check(CLI::PositiveNumber);

  std::string table_family;
  int table_max_n = 0;
  std::string table_format = "table";
  std::uint64_t table_limit = symorb::kDefaultEnumerationLimit;
  CLI::App* table = app.add_subcommand("table", "survey the family counts up to a rank");
  table->add_option("--family", table_family, "built-in family name (sl-so)")->required();
  table->add_option("--max-n", table_max_n, "largest p+q to include")->required();
  table->add_option("--format", table_format, "table | json")
      ->check(CLI::IsMember({"table", "json"}));
  table->add_option("--limit", table_limit, "enumeration limit (default 2^24)")
      ->check(CLI::PositiveNumber);

  symorb::SelftestOptions sopts;
  CLI::App* selftest = app.add_subcommand("selftest", "run the built-in invariant suites");
  selftest->add_option("--suite", sopts.suite, "run a single suite by name");
  selftest->add_option("--max-n", sopts.max_n, "largest p+q the family suites sweep");
  selftest
      ->add_flag("--inject-zero-twist", sopts.inject_zero_twist,
                 "fault injection: drop the crossing twist (the suites must then fail)")
      ->group("");  // test hook, hidden from help

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (classify->parsed()) return run_classify(cargs);
    if (table->parsed()) return run_table(table_family, table_max_n, table_format, table_limit);
    if (selftest->parsed()) return run_selftest_cmd(sopts);
    std::cerr << "no subcommand\n";
    return 1;
  } catch (const symorb::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
