// Command-line front end; talks to the library only through curvlie.h.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "curvlie/curvlie.h"

namespace {

struct Options {
  std::string format = "json";
  std::string output;
  int verbose = 0;
  unsigned jobs = 1;
  std::size_t budget_pairs = 0;
  std::size_t budget_monomials = 0;

  std::vector<std::string> arguments;
  std::string algebra, metric, eval, lambda, det_sign = "+1";
  std::vector<std::string> r;
  std::vector<int> q;
  bool ricci = false, nabla_r = false, signature = false, certificate = false, catalog = false, json = false;
};

int fail(const char* what, int status) {
  std::fprintf(stderr, "curvlie: %s: %s (%s)\n", what, curvlie_last_error(), curvlie_status_name(status));
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact curvature and Einstein metrics of left-invariant metrics on Lie groups"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--output,-o", o.output, "Write the report to a file instead of stdout");
  app.add_flag("--verbose,-v", o.verbose, "Include timing in the report");
  app.add_option("--jobs,-j", o.jobs, "Parallel jobs (cases or S-pair batches)")->check(CLI::PositiveNumber);
  app.add_option("--budget-pairs", o.budget_pairs, "Maximum number of S-pairs (0 = unlimited)");
  app.add_option("--budget-monomials", o.budget_monomials, "Maximum number of live monomials (0 = unlimited)");

  auto* curv = app.add_subcommand("curvature", "Ricci tensor, nabla R and signature of a metric");
  curv->add_option("--algebra", o.algebra, "Structure constants JSON (default sl2+sl2)")->check(CLI::ExistingFile);
  curv->add_option("--metric", o.metric, "Metric JSON with polynomial entries")->required()->check(CLI::ExistingFile);
  curv->add_flag("--ricci", o.ricci, "Ricci tensor (default)");
  curv->add_flag("--nabla-r", o.nabla_r, "Covariant derivative of the curvature tensor");
  curv->add_flag("--signature", o.signature, "Inertia of the metric");
  curv->add_option("--eval", o.eval, "Values such as x1=1,y1=1/2,a1=sqrt3");

  auto* gb = app.add_subcommand("groebner", "Reduced Groebner basis of an ideal");
  gb->add_option("ideal", o.arguments, "JSON file {variables, polynomials, order}")->required()->check(CLI::ExistingFile);
  gb->add_flag("--certificate", o.certificate, "Emit the S-pair reduction certificate");

  auto* inv = app.add_subcommand("invariant-space", "Symmetric tensors invariant under a generator");
  inv->add_option("case", o.arguments, "Generator label such as \"(N,N)\"")->required();
  inv->add_option("--r", o.r, "Value of r for (E1,rE1), (E1,rE3), (E3,rE3)");

  auto* solve = app.add_subcommand("solve", "Solve the Einstein system of a generator case");
  solve->add_option("case", o.arguments, "Generator label(s)")->required();
  solve->add_option("--det-sign", o.det_sign, "Sign of det(g)")->check(CLI::IsMember({"+1", "1", "-1"}));
  solve->add_option("--r", o.r, "Sampled r values (default 2, 3, 1/2)");
  solve->add_option("--q", o.q, "Q blocks for (E1,0), (E3,0), (N,0) (default all)")->check(CLI::Range(1, 5));

  auto* verify = app.add_subcommand("verify", "Exact Einstein check");
  verify->add_flag("--catalog", o.catalog, "Verify every catalogued solution and family");
  verify->add_option("--metric", o.metric, "Metric JSON with entries in Q(sqrt3)")->check(CLI::ExistingFile);
  verify->add_option("--lambda", o.lambda, "Einstein constant, e.g. -10/9*sqrt3");
  verify->add_option("--algebra", o.algebra, "Structure constants JSON (default sl2+sl2)")->check(CLI::ExistingFile);

  auto* cat = app.add_subcommand("catalog", "Known solutions and parametric families");
  cat->add_flag("--json", o.json, "JSON output (default)");

  for (auto* sub : {curv, gb, inv, solve, verify, cat}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  std::string sub = app.get_subcommands().front()->get_name();
  curvlie_config_t cfg = nullptr;
  int st = curvlie_config_init(&cfg, sub.c_str());
  if (st != CURVLIE_OK) return fail("config", st);

  auto check = [&](int s, const char* what) {
    if (s != CURVLIE_OK) throw std::runtime_error(std::string(what) + ": " + curvlie_last_error());
  };
  curvlie_report_t report = nullptr;
  int exit_code = 2;
  try {
    for (const auto& a : o.arguments) check(curvlie_config_add_argument(cfg, a.c_str()), "argument");
    if (!o.algebra.empty()) check(curvlie_config_set_input(cfg, "algebra", o.algebra.c_str()), "--algebra");
    if (!o.metric.empty()) check(curvlie_config_set_input(cfg, "metric", o.metric.c_str()), "--metric");
    check(curvlie_config_set_det_sign(cfg, o.det_sign == "-1" ? -1 : 1), "--det-sign");
    for (const auto& r : o.r) check(curvlie_config_add_r(cfg, r.c_str()), "--r");
    for (int q : o.q) check(curvlie_config_add_q_block(cfg, q), "--q");
    check(curvlie_config_set_jobs(cfg, o.jobs), "--jobs");
    check(curvlie_config_set_budget(cfg, o.budget_pairs, o.budget_monomials, 0), "budget");
    check(curvlie_config_set_flag(cfg, "ricci", o.ricci), "--ricci");
    check(curvlie_config_set_flag(cfg, "nabla-r", o.nabla_r), "--nabla-r");
    check(curvlie_config_set_flag(cfg, "signature", o.signature), "--signature");
    check(curvlie_config_set_flag(cfg, "certificate", o.certificate), "--certificate");
    check(curvlie_config_set_flag(cfg, "catalog", o.catalog), "--catalog");
    if (!o.eval.empty()) check(curvlie_config_set_option(cfg, "eval", o.eval.c_str()), "--eval");
    if (!o.lambda.empty()) check(curvlie_config_set_option(cfg, "lambda", o.lambda.c_str()), "--lambda");
    check(curvlie_config_set_verbosity(cfg, o.verbose), "--verbose");

    check(curvlie_run(cfg, &report), "run");
    check(curvlie_report_exit_code(report, &exit_code), "exit code");
    const char* text = nullptr;
    std::size_t len = 0;
    int fmt = o.format == "text" && !o.json ? CURVLIE_FORMAT_TEXT : CURVLIE_FORMAT_JSON;
    check(curvlie_report_render(report, fmt, &text, &len), "render");
    if (o.output.empty()) {
      std::fwrite(text, 1, len, stdout);
    } else {
      std::ofstream out(o.output, std::ios::binary);
      if (!out) throw std::runtime_error("cannot write " + o.output);
      out.write(text, static_cast<std::streamsize>(len));
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "curvlie: %s\n", e.what());
    exit_code = 2;
  }
  curvlie_report_destroy(report);
  curvlie_config_destroy(cfg);
  return exit_code;
}
