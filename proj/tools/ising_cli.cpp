// Command-line driver: one subcommand per scan, CSV or JSON on stdout or a file.

#include <CLI11.hpp>
#include <iostream>
#include <map>
#include <string>

#include "ising/errors.hpp"
#include "ising/parallel.hpp"
#include "ising/scan.hpp"

namespace {

struct Options {
  std::string lambda;
  std::string block;
  std::string distance;
  std::string n_sites;
  std::int64_t l_max = 0;
  std::int64_t d_min = 0;
  std::int64_t d_max = -1;
  std::int64_t block_min = 1;
  std::int64_t block_max = -1;
  std::int64_t fit_min = 10;
  std::int64_t fit_max = 200;
  double k_const = 0.0;
  std::string format = "csv";
  std::string output = "-";
};

void add_output(CLI::App* sub, Options& o) {
  sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("-o,--output", o.output, "output path, '-' for stdout");
}

std::string range_text(std::int64_t lo, std::int64_t hi) {
  return std::to_string(lo) + ":" + std::to_string(hi);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement entropy of two spin blocks in the transverse-field Ising chain"};
  app.require_subcommand(1);
  app.set_version_flag("--version", ising::kVersion);
  Options o;

  auto* gl = app.add_subcommand("gl", "correlators g_l for l in [-l_max, l_max]");
  gl->add_option("--lambda", o.lambda, "field list or start:end:count")->required();
  gl->add_option("--l-max", o.l_max, "largest |l|")->required();
  add_output(gl, o);

  auto* entropy = app.add_subcommand("entropy", "S(L, d) on a (lambda, L, d) grid");
  entropy->add_option("--lambda", o.lambda)->required();
  entropy->add_option("--L", o.block)->required();
  entropy->add_option("--d", o.distance)->default_val("0");
  add_output(entropy, o);

  auto* scan_lambda = app.add_subcommand("scan-lambda", "S(L, d) versus lambda");
  scan_lambda->add_option("--lambda", o.lambda)->required();
  scan_lambda->add_option("--L", o.block)->required();
  scan_lambda->add_option("--d", o.distance)->required();
  add_output(scan_lambda, o);

  auto* scan_d = app.add_subcommand("scan-d", "nu spectrum and S(L, d) versus d");
  scan_d->add_option("--lambda", o.lambda)->default_val("1");
  scan_d->add_option("--L", o.block)->required();
  scan_d->add_option("--d-min", o.d_min)->default_val(0);
  scan_d->add_option("--d-max", o.d_max)->required();
  add_output(scan_d, o);

  auto* surface = app.add_subcommand("surface", "S(L, d) for 1 <= L <= L_max, d_min <= d <= d_max");
  surface->add_option("--lambda", o.lambda)->default_val("1");
  surface->add_option("--L-min", o.block_min)->default_val(1);
  surface->add_option("--L-max", o.block_max)->required();
  surface->add_option("--d-min", o.d_min)->default_val(0);
  surface->add_option("--d-max", o.d_max)->required();
  add_output(surface, o);

  auto* fit = app.add_subcommand("fit-k", "fit K from S(L, 0) at the critical field");
  fit->add_option("--L-min", o.fit_min)->default_val(10);
  fit->add_option("--L-max", o.fit_max)->default_val(200);
  add_output(fit, o);

  auto* compare = app.add_subcommand("model-compare", "numeric S(L, d) against the alpha model");
  compare->add_option("--L", o.block, "L list or range")->default_val("1:30");
  compare->add_option("--d", o.distance, "d list or range")->default_val("0:100");
  compare->add_option("--fit-L-min", o.fit_min)->default_val(10);
  compare->add_option("--fit-L-max", o.fit_max)->default_val(200);
  auto* k_opt = compare->add_option("--k", o.k_const, "use this K instead of fitting");
  add_output(compare, o);

  auto* oracle = app.add_subcommand("oracle-check", "exact diagonalization vs free fermions");
  oracle->add_option("--n", o.n_sites, "chain sizes")->default_val("12");
  oracle->add_option("--lambda", o.lambda)->default_val("0.3,1,1.7");
  add_output(oracle, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  ising::ScanRequest req;
  try {
    req.format = o.format == "json" ? ising::OutputFormat::json : ising::OutputFormat::csv;
    req.output = o.output;
    req.threads = ising::thread_count_from_env();
    auto param = [&req](const std::string& k, const std::string& v) { req.params.emplace_back(k, v); };

    if (gl->parsed()) {
      req.command = ising::ScanCommand::gl;
      req.lambdas = ising::parse_real_list(o.lambda);
      req.l_max = o.l_max;
      param("lambda", o.lambda);
      param("l_max", std::to_string(o.l_max));
    } else if (entropy->parsed() || scan_lambda->parsed()) {
      req.command = entropy->parsed() ? ising::ScanCommand::entropy : ising::ScanCommand::scan_lambda;
      req.lambdas = ising::parse_real_list(o.lambda);
      req.block_sizes = ising::parse_int_list(o.block);
      req.distances = ising::parse_int_list(o.distance);
      param("lambda", o.lambda);
      param("L", o.block);
      param("d", o.distance);
    } else if (scan_d->parsed()) {
      req.command = ising::ScanCommand::scan_d;
      req.lambdas = ising::parse_real_list(o.lambda);
      req.block_sizes = ising::parse_int_list(o.block);
      if (o.d_max < o.d_min) throw ising::ValidationError("--d-max must be >= --d-min");
      req.distances = ising::parse_int_list(range_text(o.d_min, o.d_max));
      param("lambda", o.lambda);
      param("L", o.block);
      param("d", range_text(o.d_min, o.d_max));
    } else if (surface->parsed()) {
      req.command = ising::ScanCommand::surface;
      req.lambdas = ising::parse_real_list(o.lambda);
      if (o.block_max < o.block_min) throw ising::ValidationError("--L-max must be >= --L-min");
      if (o.d_max < o.d_min) throw ising::ValidationError("--d-max must be >= --d-min");
      req.block_sizes = ising::parse_int_list(range_text(o.block_min, o.block_max));
      req.distances = ising::parse_int_list(range_text(o.d_min, o.d_max));
      param("lambda", o.lambda);
      param("L", range_text(o.block_min, o.block_max));
      param("d", range_text(o.d_min, o.d_max));
    } else if (fit->parsed()) {
      req.command = ising::ScanCommand::fit_k;
      req.fit_range = {o.fit_min, o.fit_max};
      param("L", range_text(o.fit_min, o.fit_max));
    } else if (compare->parsed()) {
      req.command = ising::ScanCommand::model_compare;
      req.block_sizes = ising::parse_int_list(o.block);
      req.distances = ising::parse_int_list(o.distance);
      req.fit_range = {o.fit_min, o.fit_max};
      req.k_given = k_opt->count() > 0;
      req.k_const = o.k_const;
      param("L", o.block);
      param("d", o.distance);
      if (req.k_given) {
        param("k", k_opt->as<std::string>());
      } else {
        param("fit_L", range_text(o.fit_min, o.fit_max));
      }
    } else if (oracle->parsed()) {
      req.command = ising::ScanCommand::oracle_check;
      req.chain_sizes = ising::parse_int_list(o.n_sites);
      req.lambdas = ising::parse_real_list(o.lambda);
      param("n", o.n_sites);
      param("lambda", o.lambda);
    }
  } catch (const ising::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return ising::run_scan(req, std::cout, std::cerr);
}
