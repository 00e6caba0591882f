// lrbounds: compute likelihood-ratio tail bounds, verify them against Monte
// Carlo estimates, and sweep grids.
//
// Exit status: 0 success, 2 when the query violates the entry's validity
// conditions (the bound is trivially 1), 1 on any error.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lrb/catalog.hpp"
#include "lrb/multivariate.hpp"
#include "lrb/verifier.hpp"

using nlohmann::json;

namespace {

std::string num17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json to_json_number(double v) { return json::parse(num17(v)); }

json spec_to_json(const lrb::DistributionSpec& s) {
  json p = json::object();
  for (const auto& [k, v] : s.params) p[k] = to_json_number(v);
  return json{{"family", s.family}, {"params", p}};
}

json query_to_json(const lrb::TailQuery& q) {
  return json{{"direction", lrb::direction_name(q.direction)},
              {"z", to_json_number(q.z)},
              {"n", q.n},
              {"relaxed", q.relaxed}};
}

json bound_to_json(const lrb::BoundResult& b) {
  json j{{"bound", to_json_number(b.bound)},
         {"log_bound", to_json_number(b.log_bound)},
         {"valid", b.valid},
         {"reason", b.reason}};
  if (b.theta_star) j["theta_star"] = to_json_number(*b.theta_star);
  return j;
}

json report_to_json(const lrb::VerificationReport& r) {
  return json{{"entry_id", r.entry_id},
              {"spec", spec_to_json(r.spec)},
              {"query", query_to_json(r.query)},
              {"bound", to_json_number(r.bound)},
              {"log_bound", to_json_number(r.log_bound)},
              {"valid", r.valid},
              {"reason", r.reason},
              {"p_hat", to_json_number(r.p_hat)},
              {"cp_lower", to_json_number(r.cp_lower)},
              {"cp_upper", to_json_number(r.cp_upper)},
              {"dominated", r.dominated},
              {"tightness", std::isfinite(r.tightness)
                                ? to_json_number(r.tightness)
                                : json("inf")},
              {"samples", r.samples},
              {"seed", r.seed}};
}

std::string params_text(const lrb::DistributionSpec& s) {
  std::string out;
  for (const auto& [k, v] : s.params) {
    if (!out.empty()) out += ";";
    out += k + "=" + num17(v);
  }
  return out;
}

std::string report_csv_row(const lrb::VerificationReport& r) {
  std::ostringstream o;
  o << r.entry_id << ",\"" << params_text(r.spec) << "\"," << num17(r.query.z) << ","
    << r.query.n << "," << num17(r.bound) << "," << num17(r.p_hat) << ","
    << num17(r.cp_lower) << "," << (r.dominated ? "true" : "false") << ","
    << (std::isfinite(r.tightness) ? num17(r.tightness) : "inf");
  return o.str();
}

constexpr const char* kCsvHeader =
    "entry_id,params,z,n,bound,p_hat,cp_lower,dominated,tightness";

void print_bound(const lrb::BoundResult& b, const std::string& fmt) {
  if (fmt == "text") {
    std::cout << "bound = " << num17(b.bound) << "\n"
              << "log_bound = " << num17(b.log_bound) << "\n";
    if (b.theta_star) std::cout << "theta_star = " << num17(*b.theta_star) << "\n";
    std::cout << "valid = " << (b.valid ? "true" : "false") << "\n";
    if (!b.reason.empty()) std::cout << "reason = " << b.reason << "\n";
  } else {
    std::cout << bound_to_json(b).dump() << "\n";
  }
}

void print_report(const lrb::VerificationReport& r, const std::string& fmt) {
  if (fmt == "csv") {
    std::cout << kCsvHeader << "\n" << report_csv_row(r) << "\n";
  } else if (fmt == "text") {
    std::cout << "entry = " << r.entry_id << "\n"
              << "bound = " << num17(r.bound) << "\n"
              << "p_hat = " << num17(r.p_hat) << "\n"
              << "cp_lower = " << num17(r.cp_lower) << "\n"
              << "cp_upper = " << num17(r.cp_upper) << "\n"
              << "dominated = " << (r.dominated ? "true" : "false") << "\n"
              << "tightness = "
              << (std::isfinite(r.tightness) ? num17(r.tightness) : "inf") << "\n"
              << "valid = " << (r.valid ? "true" : "false") << "\n";
    if (!r.reason.empty()) std::cout << "reason = " << r.reason << "\n";
  } else {
    std::cout << report_to_json(r).dump() << "\n";
  }
}

struct Flags {
  std::string entry;
  std::map<std::string, double> params;
  std::vector<std::string> kv;        // -P key=value
  double z = std::numeric_limits<double>::quiet_NaN();
  std::optional<double> rho;          // pareto convenience
  std::optional<double> theta_direct; // powerlaw tilt-exponent interface
  long n = 1;
  bool relaxed = false;
  double c_be = 0.4748;
  std::string input;                  // multivariate JSON file
  std::uint64_t samples = 100000;
  std::uint64_t seed = 12345;
  double confidence = 0.9999;
  unsigned workers = 1;
  std::string format = "json";
  std::string z_grid, n_grid;
  std::string strategy = "best";
  std::string cgf = "normal";
};

void add_param_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--entry", f.entry, "catalog entry id");
  static const char* direct[] = {"mu",    "sigma", "alpha", "beta", "theta",
                                 "lambda", "m",    "a",     "q",    "p"};
  for (const char* name : direct)
    cmd->add_option(std::string("--") + name, f.params[name]);
  cmd->add_option("--dof", f.params["dof"], "degrees of freedom (t entries)");
  cmd->add_option("--dof1", f.params["dof1"], "first degrees of freedom (f entries)");
  cmd->add_option("--dof2", f.params["dof2"], "second degrees of freedom (f entries)");
  cmd->add_option("--trials", f.params["trials"], "trial count (beta_negbinom)");
  cmd->add_option("-P,--param", f.kv, "extra parameter as key=value")->take_all();
  cmd->add_option("--z", f.z, "threshold");
  cmd->add_option("--rho", f.rho, "pareto threshold as a fraction of the mean");
  cmd->add_option("--theta-direct", f.theta_direct,
                  "powerlaw: supply the tilt exponent, derive z from it");
  cmd->add_option("--n", f.n, "number of averaged observations");
  cmd->add_flag("--relaxed", f.relaxed, "uniform entries: relaxed closed form");
  cmd->add_option("--c-be", f.c_be, "Berry-Esseen constant for chernoff_refined");
  cmd->add_option("--cgf", f.cgf, "CGF model for the chernoff entries")
      ->check(CLI::IsMember({"normal", "exponential", "bernoulli", "poisson"}));
  cmd->add_option("--input", f.input, "JSON file with multivariate inputs");
  cmd->add_option("--output", f.format, "json|csv|text")
      ->check(CLI::IsMember({"json", "csv", "text"}));
}

void add_mc_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--samples", f.samples);
  cmd->add_option("--seed", f.seed);
  cmd->add_option("--confidence", f.confidence);
  cmd->add_option("--workers", f.workers);
}

// Translate the flag spellings to the catalog's parameter names.
lrb::DistributionSpec build_spec(const CLI::App* cmd, const Flags& f,
                                 const std::string& family) {
  lrb::DistributionSpec spec;
  spec.family = family;
  static const std::map<std::string, std::string> rename = {
      {"dof", "n"}, {"dof1", "m"}, {"dof2", "n"}, {"trials", "n"}};
  for (const auto& [k, v] : f.params) {
    if (cmd->count("--" + k) == 0) continue;
    auto it = rename.find(k);
    spec.params[it == rename.end() ? k : it->second] = v;
  }
  for (const auto& s : f.kv) {
    const auto eq = s.find('=');
    if (eq == std::string::npos)
      throw CLI::ValidationError("--param", "expected key=value, got " + s);
    spec.params[s.substr(0, eq)] = std::stod(s.substr(eq + 1));
  }
  return spec;
}

double resolve_z(const Flags& f, const lrb::DistributionSpec& spec,
                 const std::string& entry_id) {
  if (f.rho) {
    if (spec.family != "pareto")
      throw std::invalid_argument("--rho applies to the pareto entry only");
    const double th = spec.param("theta"), a = spec.param("a");
    return *f.rho * th * a / (th - 1);
  }
  if (f.theta_direct) {
    if (entry_id != "powerlaw_lower")
      throw std::invalid_argument("--theta-direct applies to powerlaw_lower only");
    return lrb::powerlaw_threshold(*f.theta_direct, spec.param("beta"));
  }
  return f.z;
}

bool is_multivariate(const std::string& id) {
  return id == "mvn_upper_orthant" || id == "dcm_lower_orthant" ||
         id == "img_loewner_lower" || id == "mvp_lower_orthant";
}

json load_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open --input file " + path);
  json j;
  in >> j;
  return j;
}

lrb::SpdMatrix matrix_from_json(const json& rows) {
  const std::size_t p = rows.size();
  lrb::SpdMatrix m(p);
  for (std::size_t i = 0; i < p; ++i) {
    if (rows[i].size() != p) throw std::invalid_argument("sigma must be square");
    for (std::size_t j = 0; j < p; ++j) m.at(i, j) = rows[i][j].get<double>();
  }
  return m;
}

lrb::MvpStrategy parse_strategy(const std::string& s) {
  if (s == "direct") return lrb::MvpStrategy::direct;
  if (s == "balanced_root") return lrb::MvpStrategy::balanced_root;
  if (s == "mean_based") return lrb::MvpStrategy::mean_based;
  if (s == "best") return lrb::MvpStrategy::best;
  throw std::invalid_argument("unknown mvp strategy " + s);
}

lrb::BoundResult multivariate_bound(const CLI::App* cmd, const Flags& f) {
  if (f.entry == "img_loewner_lower") {
    json in = f.input.empty() ? json::object() : load_input(f.input);
    const int p = in.contains("p") ? in["p"].get<int>()
                                   : static_cast<int>(f.params.at("p"));
    const double alpha =
        in.contains("alpha") ? in["alpha"].get<double>() : f.params.at("alpha");
    const double rho = in.contains("rho") ? in["rho"].get<double>()
                                          : (f.rho ? *f.rho : f.z);
    return lrb::img_loewner_bound(p, alpha, rho);
  }
  json in = load_input(f.input);
  if (f.entry == "mvn_upper_orthant") {
    const auto mu = in["mu"].get<std::vector<double>>();
    const auto z = in["z"].get<std::vector<double>>();
    const long n = in.contains("n") ? in["n"].get<long>() : f.n;
    return lrb::mvn_orthant_bound(mu, matrix_from_json(in["sigma"]), z, n);
  }
  if (f.entry == "dcm_lower_orthant") {
    return lrb::dcm_orthant_bound(in["alphas"].get<std::vector<double>>(),
                                  in["trials"].get<double>(),
                                  in["z"].get<std::vector<double>>());
  }
  // mvp_lower_orthant
  const long n = in.contains("n") ? in["n"].get<long>() : f.n;
  const std::string strat =
      in.contains("strategy") ? in["strategy"].get<std::string>() : f.strategy;
  std::optional<double> theta;
  if (in.contains("theta")) theta = in["theta"].get<double>();
  (void)cmd;
  return lrb::mvp_orthant_bound(in["alpha"].get<double>(),
                                in["betas"].get<std::vector<double>>(),
                                in["z"].get<std::vector<double>>(), n,
                                parse_strategy(strat), theta);
}

lrb::VerificationReport multivariate_verify(const Flags& f,
                                            const lrb::MonteCarloConfig& cfg) {
  if (f.entry == "img_loewner_lower") {
    json in = f.input.empty() ? json::object() : load_input(f.input);
    const int p = in.contains("p") ? in["p"].get<int>()
                                   : static_cast<int>(f.params.at("p"));
    const double alpha =
        in.contains("alpha") ? in["alpha"].get<double>() : f.params.at("alpha");
    const double rho = in.contains("rho") ? in["rho"].get<double>()
                                          : (f.rho ? *f.rho : f.z);
    return lrb::check_dominance_img(p, alpha, rho, cfg);
  }
  json in = load_input(f.input);
  if (f.entry == "mvn_upper_orthant") {
    const long n = in.contains("n") ? in["n"].get<long>() : f.n;
    return lrb::check_dominance_mvn(in["mu"].get<std::vector<double>>(),
                                    matrix_from_json(in["sigma"]),
                                    in["z"].get<std::vector<double>>(), n, cfg);
  }
  if (f.entry == "dcm_lower_orthant") {
    return lrb::check_dominance_dcm(in["alphas"].get<std::vector<double>>(),
                                    in["trials"].get<long>(),
                                    in["z"].get<std::vector<double>>(), cfg);
  }
  const long n = in.contains("n") ? in["n"].get<long>() : f.n;
  const std::string strat =
      in.contains("strategy") ? in["strategy"].get<std::string>() : f.strategy;
  return lrb::check_dominance_mvp(in["alpha"].get<double>(),
                                  in["betas"].get<std::vector<double>>(),
                                  in["z"].get<std::vector<double>>(), n,
                                  parse_strategy(strat), cfg);
}

// Saddle-point bounds over a named CGF, outside the theorem catalog.
lrb::BoundResult cgf_bound(const CLI::App* cmd, const Flags& f, bool refined) {
  lrb::DistributionSpec s = build_spec(cmd, f, "cgf");
  lrb::CgfModel cgf =
      f.cgf == "bernoulli"
          ? lrb::bernoulli_cgf(s.param("p"))
          : f.cgf == "poisson"
                ? lrb::poisson_cgf(s.param("lambda"))
                : f.cgf == "exponential"
                      ? lrb::exponential_cgf(s.param("lambda"))
                      : lrb::normal_cgf(s.param("mu"), s.param("sigma"));
  return refined ? lrb::refined_chernoff_bound(cgf, f.z, f.n, f.c_be)
                 : lrb::chernoff_bound(cgf, f.z, f.n);
}

std::vector<double> parse_grid(const std::string& s) {
  std::vector<double> out;
  const auto colon = s.find(':');
  if (colon != std::string::npos) {  // lo:hi:count
    const auto colon2 = s.find(':', colon + 1);
    const double lo = std::stod(s.substr(0, colon));
    const double hi = std::stod(s.substr(colon + 1, colon2 - colon - 1));
    const int count = std::stoi(s.substr(colon2 + 1));
    for (int i = 0; i < count; ++i)
      out.push_back(count == 1 ? lo : lo + (hi - lo) * i / (count - 1));
    return out;
  }
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"likelihood-ratio tail bound calculator and verifier"};
  app.require_subcommand(1);
  Flags f;
  if (const char* env_seed = std::getenv("LRBOUNDS_SEED"))
    f.seed = std::strtoull(env_seed, nullptr, 10);

  auto* cmd_bound = app.add_subcommand("bound", "compute one bound");
  add_param_flags(cmd_bound, f);

  auto* cmd_verify = app.add_subcommand("verify", "Monte Carlo dominance check");
  add_param_flags(cmd_verify, f);
  add_mc_flags(cmd_verify, f);

  auto* cmd_sweep = app.add_subcommand("sweep", "grid of dominance checks");
  add_param_flags(cmd_sweep, f);
  add_mc_flags(cmd_sweep, f);
  cmd_sweep->add_option("--z-grid", f.z_grid, "comma list or lo:hi:count")->required();
  cmd_sweep->add_option("--n-grid", f.n_grid, "comma list of n values");

  auto* cmd_catalog = app.add_subcommand("catalog", "list catalog entries");
  cmd_catalog->add_option("--output", f.format, "json|csv|text")
      ->check(CLI::IsMember({"json", "csv", "text"}));

  CLI11_PARSE(app, argc, argv);

  if (cmd_catalog->parsed()) {
    struct Row {
      std::string id, family, direction, validity, theta_kind;
    };
    std::vector<Row> rows;
    for (const auto& e : lrb::list_catalog())
      rows.push_back({e.id, e.family, lrb::direction_name(e.direction),
                      e.validity_text, e.theta_kind});
    rows.push_back({"mvn_upper_orthant", "mvn", "upper_orthant",
                    "sigma SPD, sigma^-1 z >= sigma^-1 mu componentwise",
                    "closed_form"});
    rows.push_back({"dcm_lower_orthant", "dcm", "lower_orthant",
                    "0 < z_l <= trials*alpha_l/sum(alpha), sum(z) < trials",
                    "closed_form"});
    rows.push_back({"img_loewner_lower", "img", "loewner_lower",
                    "0 < rho < 1, 2*alpha > p + 1", "closed_form"});
    rows.push_back({"mvp_lower_orthant", "mvp", "lower_orthant",
                    "z_l > beta_l for all l", "closed_form"});
    if (f.format == "json") {
      json out = json::array();
      for (const auto& r : rows)
        out.push_back(json{{"id", r.id},
                           {"family", r.family},
                           {"direction", r.direction},
                           {"validity", r.validity},
                           {"theta_kind", r.theta_kind}});
      std::cout << out.dump(2) << "\n";
    } else {
      for (const auto& r : rows)
        std::cout << r.id << "\t" << r.family << "\t" << r.direction << "\t"
                  << r.theta_kind << "\t" << r.validity << "\n";
    }
    return 0;
  }

  if (f.entry.empty()) {
    std::cerr << "error: --entry is required\n";
    return 1;
  }

  if (cmd_bound->parsed()) {
    lrb::BoundResult b;
    if (f.entry == "chernoff" || f.entry == "chernoff_refined") {
      b = cgf_bound(cmd_bound, f, f.entry == "chernoff_refined");
    } else if (is_multivariate(f.entry)) {
      b = multivariate_bound(cmd_bound, f);
    } else {
      const auto* e = lrb::find_entry(f.entry);
      if (!e) {
        std::cerr << "error: unknown entry " << f.entry << "\n";
        return 1;
      }
      auto spec = build_spec(cmd_bound, f, e->family);
      lrb::TailQuery q{e->direction, resolve_z(f, spec, f.entry), f.n, f.relaxed};
      b = lrb::evaluate_bound(f.entry, spec, q);
    }
    print_bound(b, f.format);
    return b.valid ? 0 : 2;
  }

  lrb::MonteCarloConfig cfg{f.samples, f.seed, f.confidence, f.workers};

  if (cmd_verify->parsed()) {
    lrb::VerificationReport r;
    if (is_multivariate(f.entry)) {
      r = multivariate_verify(f, cfg);
    } else {
      const auto* e = lrb::find_entry(f.entry);
      if (!e) {
        std::cerr << "error: unknown entry " << f.entry << "\n";
        return 1;
      }
      auto spec = build_spec(cmd_verify, f, e->family);
      lrb::TailQuery q{e->direction, resolve_z(f, spec, f.entry), f.n, f.relaxed};
      r = lrb::check_dominance(f.entry, spec, q, cfg);
    }
    print_report(r, f.format);
    return r.valid ? 0 : 2;
  }

  // sweep
  const auto* e = lrb::find_entry(f.entry);
  if (!e) {
    std::cerr << "error: unknown entry " << f.entry << "\n";
    return 1;
  }
  auto spec = build_spec(cmd_sweep, f, e->family);
  std::vector<long> ns{1};
  if (!f.n_grid.empty()) {
    ns.clear();
    for (double v : parse_grid(f.n_grid)) ns.push_back(static_cast<long>(v));
  }
  auto reports =
      lrb::tightness_sweep(f.entry, {spec}, parse_grid(f.z_grid), ns, cfg);
  if (f.format == "csv") {
    std::cout << kCsvHeader << "\n";
    for (const auto& r : reports) std::cout << report_csv_row(r) << "\n";
  } else {
    for (const auto& r : reports) std::cout << report_to_json(r).dump() << "\n";
  }
  const auto s = lrb::summarize(reports);
  json summary{{"summary",
                {{"total", s.total},
                 {"valid_points", s.valid_points},
                 {"violations", s.violations},
                 {"min_tightness", to_json_number(s.min_tightness)},
                 {"median_tightness", to_json_number(s.median_tightness)},
                 {"max_tightness", to_json_number(s.max_tightness)}}}};
  std::cout << summary.dump() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
}
