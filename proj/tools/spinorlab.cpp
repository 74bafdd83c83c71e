// spinorlab: verification harness for the operator-space laboratory.
//   spinorlab verify <suite>    run a named check suite, write a report
//   spinorlab table <kind>      parameter sweeps as machine-readable tables
//   spinorlab estimate          [k]-norm lower bound for a map-spec file
//
// Exit codes: 0 all checks pass, 1 any check fails, 2 usage or parse error.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "spinorlab/mapspec.hpp"
#include "spinorlab/report.hpp"
#include "spinorlab/schatten.hpp"
#include "spinorlab/suites.hpp"

using namespace spinorlab;

namespace {

struct CliOptions {
  RunConfig config;
  std::string config_file;
  bool seed_set = false;
  bool seed_from_file = false;
  bool restarts_set = false;
  bool tol_set = false;
  bool format_set = false;
  bool out_set = false;
  double tol_flag = 1e-6;
};

void apply_config_file(CliOptions& o) {
  if (o.config_file.empty()) return;
  std::ifstream in(o.config_file);
  if (!in) throw Error("cannot open config file '" + o.config_file + "'");
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      bool blank = true;
      for (char c : line)
        if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
      if (blank) continue;
      throw ParseError("expected 'key = value'", line_no, 1);
    }
    auto trim = [](std::string s) {
      std::size_t a = s.find_first_not_of(" \t");
      std::size_t b = s.find_last_not_of(" \t");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key == "seed") {
      if (!o.seed_set) {
        o.config.seed = std::strtoull(value.c_str(), nullptr, 10);
        o.seed_from_file = true;
      }
    } else if (key == "restarts") {
      if (!o.restarts_set) o.config.restarts = std::atoi(value.c_str());
    } else if (key == "max_iter") {
      o.config.max_iter = std::atoi(value.c_str());
    } else if (key == "step0") {
      o.config.step0 = std::atof(value.c_str());
    } else if (key == "tol") {
      if (!o.tol_set) o.config.tol_opt = std::atof(value.c_str());
    } else if (key == "tol_exact") {
      o.config.tol_exact = std::atof(value.c_str());
    } else if (key == "dimension_cap") {
      o.config.dimension_cap = std::atoll(value.c_str());
    } else if (key == "format") {
      if (!o.format_set) o.config.output_format = value;
    } else if (key == "out") {
      if (!o.out_set) o.config.output_path = value;
    } else {
      throw ParseError("unknown config key '" + key + "'", line_no, 1);
    }
  }
}

void finish_config(CliOptions& o) {
  apply_config_file(o);
  // precedence: flag > config file > SPINORLAB_SEED > default
  if (!o.seed_set && !o.seed_from_file) {
    if (const char* env = std::getenv("SPINORLAB_SEED"))
      o.config.seed = std::strtoull(env, nullptr, 10);
  }
  if (o.tol_set) o.config.tol_opt = o.tol_flag;
  o.config.validate();
}

int emit(const Report& report) {
  std::string body = serialize(report);
  if (report.config.output_path.empty()) {
    std::cout << body;
  } else {
    std::ofstream out(report.config.output_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write report to '"
                << report.config.output_path << "'\n";
      return 2;
    }
    out << body;
  }
  return report.all_passed() ? 0 : 1;
}

std::vector<double> parse_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "inf") {
      out.push_back(std::numeric_limits<double>::infinity());
    } else {
      out.push_back(std::atof(item.c_str()));
    }
  }
  if (out.empty()) throw Error("empty list '" + csv + "'");
  return out;
}

void add_common_flags(CLI::App* cmd, CliOptions& o) {
  cmd->add_option("--seed", o.config.seed, "Deterministic RNG seed")
      ->each([&](const std::string&) { o.seed_set = true; });
  cmd->add_option("--restarts", o.config.restarts, "Optimizer restarts")
      ->each([&](const std::string&) { o.restarts_set = true; });
  cmd->add_option("--max-iter", o.config.max_iter, "Optimizer iteration cap");
  cmd->add_option("--step0", o.config.step0, "Optimizer initial step size");
  cmd->add_option("--tol", o.tol_flag, "Optimizer tolerance")
      ->each([&](const std::string&) { o.tol_set = true; });
  cmd->add_option("--format", o.config.output_format, "json or csv")
      ->each([&](const std::string&) { o.format_set = true; });
  cmd->add_option("--out", o.config.output_path, "Report file (default stdout)")
      ->each([&](const std::string&) { o.out_set = true; });
  cmd->add_option("--config", o.config_file, "key = value config file");
  cmd->add_option("--dimension-cap", o.config.dimension_cap,
                  "Matrix side cap for amplified objects");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spinorlab: Schatten-space projection and spin-factor checks"};
  app.require_subcommand(1);

  CliOptions vopt, topt, eopt;
  std::string suite = "all";
  CLI::App* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite,--suite", suite,
                     "One of: fock clifford tau theorem7 projections witnesses all");
  add_common_flags(verify, vopt);

  std::string kind;
  int n_min = 1, n_max = 3;
  double table_p = 4.0, table_t = 0.5;
  std::string p_list = "2,3,4,6", t_list = "-1,-0.5,0.3,0.7,1",
              theta_list = "0.05,0.1,0.3";
  CLI::App* table = app.add_subcommand("table", "Emit a parameter table");
  table->add_option("kind", kind,
                    "One of: theorem7_grid tau_cb rad1_sweep witness_rect_sweep")
      ->required();
  table->add_option("--n-min", n_min, "Smallest n");
  table->add_option("--n-max", n_max, "Largest n");
  table->add_option("--p", table_p, "Exponent for rad1_sweep");
  table->add_option("--t", table_t, "Weight for witness_rect_sweep");
  table->add_option("--p-list", p_list, "Comma-separated exponents");
  table->add_option("--t-list", t_list, "Comma-separated t grid");
  table->add_option("--theta-list", theta_list, "Comma-separated theta grid");
  add_common_flags(table, topt);

  std::string map_file;
  int level = 2;
  double est_p = 4.0;
  bool est_p_inf = false;
  CLI::App* estimate =
      app.add_subcommand("estimate", "Lower-bound a map's [k]-norm");
  estimate->add_option("--map-spec", map_file, "Map description file")
      ->required();
  estimate->add_option("-k,--level", level, "Amplification level");
  estimate->add_option("-p,--exponent", est_p, "Schatten exponent");
  estimate->add_flag("--p-inf", est_p_inf, "Use the operator norm");
  add_common_flags(estimate, eopt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) {
      finish_config(vopt);
      Report report;
      report.config = vopt.config;
      report.results = run_suite(suite, vopt.config);
      return emit(report);
    }
    if (table->parsed()) {
      finish_config(topt);
      Report report;
      report.config = topt.config;
      if (kind == "tau_cb") {
        report.results = table_tau_cb(n_min, std::max(n_max, 4), topt.config);
      } else if (kind == "theorem7_grid") {
        report.results = table_theorem7_grid(n_min, n_max, parse_list(p_list),
                                             parse_list(t_list), topt.config);
      } else if (kind == "rad1_sweep") {
        report.results =
            table_rad1_sweep(n_min, table_p, parse_list(t_list), topt.config);
      } else if (kind == "witness_rect_sweep") {
        report.results = table_witness_rect_sweep(
            parse_list(p_list), table_t, parse_list(theta_list), topt.config);
      } else {
        std::cerr << "error: unknown table kind '" << kind << "'\n";
        return 2;
      }
      return emit(report);
    }
    if (estimate->parsed()) {
      finish_config(eopt);
      SubspaceMap map = read_map_spec_file(map_file);
      OptimizerConfig oc;
      oc.seed = eopt.config.seed;
      oc.restarts = eopt.config.restarts;
      oc.max_iter = eopt.config.max_iter;
      oc.step0 = eopt.config.step0;
      oc.tol = eopt.config.tol_opt;
      PExponent p =
          est_p_inf ? PExponent::inf() : PExponent::of(est_p);
      NormEstimate est = level_norm_lower_bound(map, level, p, oc,
                                                eopt.config.dimension_cap);
      Report report;
      report.config = eopt.config;
      CheckResult row = CheckResult::bound("estimate." + map.name, est.value,
                                           true);
      row.with("k", (long long)level)
          .with("p", est_p_inf ? "inf" : format_double(est_p))
          .with("method", est.method)
          .with("iterations", (long long)est.iterations);
      if (!est.witness.empty() && !eopt.config.output_path.empty()) {
        std::string wpath = eopt.config.output_path + ".witness";
        std::ofstream w(wpath, std::ios::binary);
        if (w) {
          for (const auto& blk : est.witness) {
            for (Index r = 0; r < blk.rows(); ++r) {
              for (Index c = 0; c < blk.cols(); ++c)
                w << (c ? " " : "") << format_complex(blk(r, c));
              w << "\n";
            }
            w << "\n";
          }
          row.witness_ref = wpath;
        }
      }
      report.results.push_back(std::move(row));
      return emit(report);
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const UnknownSuite& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
