#include "sdom_cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>
#include <system_error>

#include "sdom/class_h.hpp"
#include "sdom/compound.hpp"
#include "sdom/distribution_spec.hpp"
#include "sdom/dominance.hpp"
#include "sdom/errors.hpp"
#include "sdom/majorization.hpp"
#include "sdom/stable.hpp"
#include "sdom/version.hpp"

namespace sdom::cli {

namespace {

using nlohmann::json;

std::string fmt(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const auto end = comma == std::string::npos ? text.size() : comma;
    std::string item = text.substr(pos, end - pos);
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    double v = 0.0;
    const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || res.ec != std::errc() || res.ptr != item.data() + item.size()) {
      throw ParseError(std::string("cannot parse ") + what + " entry '" + item + "'");
    }
    out.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

// Inline JSON when the argument starts with '{', otherwise a file path.
Distribution load_distribution(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && arg[first] == '{') return parse_distribution(arg);
  std::ifstream in(arg);
  if (!in) throw ParseError("cannot open distribution spec '" + arg + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_distribution(ss.str());
}

std::string config_hash(const json& config) {
  // FNV-1a over the canonical dump.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : config.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json metadata(const std::string& command, const json& config) {
  return {{"tool", "sdom"},
          {"version", std::string(version())},
          {"command", command},
          {"config", config},
          {"config_hash", config_hash(config)}};
}

std::string csv_header(const std::string& command, const json& config) {
  std::string s = "# sdom " + std::string(version()) + "\n";
  s += "# command: " + command + "\n";
  s += "# config: " + config.dump() + "\n";
  s += "# config_hash: " + config_hash(config) + "\n";
  return s;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot write '" + path + "'");
  f << text;
}

json witness_json(const std::optional<Witness>& w) {
  if (!w) return nullptr;
  return {{"kind", std::string(to_string(w->kind))},
          {"x1", w->x1},
          {"x2", w->x2},
          {"lhs", w->lhs},
          {"rhs", w->rhs}};
}

json verdict_json(const MembershipVerdict& v) {
  return {{"status", std::string(to_string(v.status))},
          {"method", std::string(to_string(v.method))},
          {"label", std::string(v.label())},
          {"rule_id", v.rule_id},
          {"witness", witness_json(v.witness)}};
}

int verdict_exit(DominanceVerdict v) {
  switch (v) {
    case DominanceVerdict::ConsistentWithSD: return kOk;
    case DominanceVerdict::ViolationFound: return kNegative;
    case DominanceVerdict::Inconclusive: return kInconclusive;
  }
  return kInconclusive;
}

struct Options {
  std::string dist;
  std::string severity;
  std::string theta;
  std::string eta;
  std::string weights = "1,4,2,3";
  std::string out;
  std::string xs;
  std::uint64_t seed = 0;
  std::size_t n = 100000;
  std::size_t grid_points = 1000;
  double grid_lo = 1e-6;
  double grid_hi = 1e6;
  double delta = 0.01;
  double alpha = 1.0;
  double beta = 0.0;
  double sigma = 1.0;
  double mu = 0.0;
  double lambda = 1.0;
  double a = 0.5;
  double tol = 1e-8;
  bool hstar = false;
};

GridSpec grid_of(const Options& o) {
  GridSpec g;
  g.lo = o.grid_lo;
  g.hi = o.grid_hi;
  g.points = o.grid_points;
  return g;
}

int cmd_check_h(const Options& o, std::ostream& out) {
  const auto d = load_distribution(o.dist);
  const auto grid = grid_of(o);
  const json config = {{"dist", json::parse(to_json_string(d))},
                       {"grid_points", o.grid_points},
                       {"grid_lo", o.grid_lo},
                       {"grid_hi", o.grid_hi},
                       {"hstar", o.hstar}};
  const auto v = h_membership(d, grid);
  json j = {{"meta", metadata("check-h", config)}, {"distribution", d.describe()},
            {"verdict", verdict_json(v)}};
  int code = v.status == MembershipStatus::Out ? kNegative : kOk;
  if (o.hstar) {
    const auto hs = hstar_check(d, grid);
    j["hstar"] = verdict_json(hs);
    if (hs.status == MembershipStatus::Out) code = kNegative;
  }
  emit(j.dump(2) + "\n", o.out, out);
  return code;
}

json dominance_json(const std::string& command, const json& config, const DominanceReport& r) {
  json j = json::parse(report_json(r));
  j["meta"] = metadata(command, config);
  return j;
}

int cmd_check_sd(const Options& o, std::ostream& out) {
  const auto d = load_distribution(o.dist);
  const WeightVector theta(parse_list(o.theta, "theta"));
  const WeightVector eta(parse_list(o.eta, "eta"));
  const json config = {{"dist", json::parse(to_json_string(d))}, {"theta", theta.values()},
                       {"eta", eta.values()}, {"n", o.n}, {"delta", o.delta}, {"seed", o.seed}};
  RngStream rng(o.seed);
  const auto r = mc_dominance_test(d, theta, eta, o.n, o.delta, rng);
  emit(dominance_json("check-sd", config, r).dump(2) + "\n", o.out, out);
  return verdict_exit(r.verdict);
}

int cmd_sd_star(const Options& o, std::ostream& out) {
  const auto d = load_distribution(o.dist);
  const WeightVector theta(parse_list(o.theta, "theta"));
  const json config = {{"dist", json::parse(to_json_string(d))}, {"theta", theta.values()},
                       {"n", o.n}, {"delta", o.delta}, {"seed", o.seed}};
  RngStream rng(o.seed);
  const auto r = sd_star_test(d, theta, o.n, o.delta, rng);
  emit(dominance_json("sd-star", config, r).dump(2) + "\n", o.out, out);
  return verdict_exit(r.verdict);
}

int cmd_majorize(const Options& o, std::ostream& out) {
  const WeightVector theta(parse_list(o.theta, "theta"));
  const WeightVector eta(parse_list(o.eta, "eta"));
  const json config = {{"theta", theta.values()}, {"eta", eta.values()}};
  const bool ok = majorizes(theta, eta);
  json j = {{"meta", metadata("majorize", config)}, {"majorized", ok}};
  if (ok) {
    json chain = json::array();
    const auto c = t_transform_chain(eta, theta);
    for (const auto& t : c) chain.push_back({{"i", t.i}, {"j", t.j}, {"lambda", t.lambda}});
    j["chain"] = chain;
    j["replay"] = replay(eta.values(), c);
  } else {
    j["chain"] = nullptr;
  }
  emit(j.dump(2) + "\n", o.out, out);
  return ok ? kOk : kNegative;
}

int cmd_stable_sample(const Options& o, std::ostream& out) {
  const StableParams p{o.alpha, o.beta, o.sigma, o.mu};
  const json config = {{"alpha", o.alpha}, {"beta", o.beta}, {"sigma", o.sigma},
                       {"mu", o.mu}, {"n", o.n}, {"seed", o.seed}};
  RngStream rng(o.seed);
  const auto xs = sample_stable(p, rng, o.n);
  std::string s = csv_header("stable-sample", config);
  s += "# sd_classification: " + std::string(sd_classification(o.alpha, o.beta) ? "true" : "false") + "\n";
  s += "x\n";
  for (double x : xs) s += fmt(x) + "\n";
  emit(s, o.out, out);
  return kOk;
}

int cmd_cp_sim(const Options& o, std::ostream& out) {
  const CompoundPoissonSpec spec(o.lambda, load_distribution(o.severity));
  const json config = {{"lambda", o.lambda},
                       {"severity", json::parse(to_json_string(spec.severity()))},
                       {"n", o.n},
                       {"seed", o.seed}};
  RngStream rng(o.seed);
  const auto xs = sample_cp(spec, rng, o.n);
  const auto v = cp_sd_verdict(spec);
  std::string s = csv_header("cp-sim", config);
  s += "# severity_h_status: " + std::string(to_string(v.status)) + " (" + v.rule_id + ")\n";
  s += "x\n";
  for (double x : xs) s += fmt(x) + "\n";
  emit(s, o.out, out);
  return kOk;
}

int cmd_figure(const Options& o, std::ostream& out) {
  const auto w = parse_list(o.weights, "weights");
  const json config = {{"alpha", o.alpha}, {"beta", o.beta}, {"weights", w},
                       {"n", o.n}, {"seed", o.seed}};
  const auto t = figure_data(o.alpha, o.beta, w, o.n, o.seed);
  std::string s = csv_header("figure", config);
  s += "x,F1,F2\n";
  for (std::size_t i = 0; i < t.x.size(); ++i) {
    s += fmt(t.x[i]) + "," + fmt(t.f1[i]) + "," + fmt(t.f2[i]) + "\n";
  }
  emit(s, o.out, out);
  return kOk;
}

int cmd_exact_tail(const Options& o, std::ostream& out) {
  const auto d = load_distribution(o.dist);
  const auto xs = parse_list(o.xs, "x");
  const json config = {{"dist", json::parse(to_json_string(d))}, {"a", o.a}, {"x", xs},
                       {"tol", o.tol}};
  QuadratureSpec q;
  q.abs_tol = o.tol;
  json rows = json::array();
  for (double x : xs) {
    const auto e = exact_two_weight_tail_detail(d, o.a, x, q);
    rows.push_back({{"x", x}, {"tail", e.value}, {"error_estimate", e.error_estimate},
                    {"evaluations", e.evaluations}});
  }
  const json j = {{"meta", metadata("exact-tail", config)}, {"results", rows}};
  emit(j.dump(2) + "\n", o.out, out);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stochastic dominance toolkit for heavy-tailed risks", "sdom"};
  app.footer(std::string(distribution_schema_help()));
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(version()));
  Options o;

  auto add_seed = [&](CLI::App* c) { c->add_option("--seed", o.seed, "RNG seed")->capture_default_str(); };
  auto add_out = [&](CLI::App* c) { c->add_option("--out", o.out, "Output file (default stdout)"); };
  auto add_mc = [&](CLI::App* c) {
    c->add_option("--n", o.n, "Sample size per portfolio")->capture_default_str();
    c->add_option("--delta", o.delta, "DKW confidence parameter")->capture_default_str();
    add_seed(c);
    add_out(c);
  };

  auto* check_h = app.add_subcommand("check-h", "Class H membership verdict with witness");
  check_h->add_option("--dist", o.dist, "Distribution spec (JSON text or file)")->required();
  check_h->add_option("--grid-points", o.grid_points, "Grid size")->capture_default_str();
  check_h->add_option("--grid-lo", o.grid_lo, "Smallest grid point")->capture_default_str();
  check_h->add_option("--grid-hi", o.grid_hi, "Largest grid point")->capture_default_str();
  check_h->add_flag("--hstar", o.hstar, "Also run the class H* scan");
  add_out(check_h);

  auto* check_sd = app.add_subcommand("check-sd", "Monte-Carlo dominance test of theta vs eta");
  check_sd->add_option("--dist", o.dist, "Distribution spec (JSON text or file)")->required();
  check_sd->add_option("--theta", o.theta, "Comma-separated weights (majorized)")->required();
  check_sd->add_option("--eta", o.eta, "Comma-separated weights (majorizing)")->required();
  add_mc(check_sd);

  auto* sd_star = app.add_subcommand("sd-star", "Monte-Carlo test of (sum theta) X1 vs sum theta_i X_i");
  sd_star->add_option("--dist", o.dist, "Distribution spec (JSON text or file)")->required();
  sd_star->add_option("--theta", o.theta, "Comma-separated weights")->required();
  add_mc(sd_star);

  auto* maj = app.add_subcommand("majorize", "Majorization check and T-transform chain");
  maj->add_option("--theta", o.theta, "Comma-separated weights")->required();
  maj->add_option("--eta", o.eta, "Comma-separated weights")->required();
  add_out(maj);

  auto* stable = app.add_subcommand("stable-sample", "Draw S_alpha(sigma, beta, mu) samples as CSV");
  stable->add_option("--alpha", o.alpha, "Stability index in (0,2]")->required();
  stable->add_option("--beta", o.beta, "Skewness in [-1,1]")->capture_default_str();
  stable->add_option("--sigma", o.sigma, "Scale")->capture_default_str();
  stable->add_option("--mu", o.mu, "Location")->capture_default_str();
  stable->add_option("--n", o.n, "Sample size")->capture_default_str();
  add_seed(stable);
  add_out(stable);

  auto* cp = app.add_subcommand("cp-sim", "Compound Poisson samples as CSV");
  cp->add_option("--lambda", o.lambda, "Poisson mean")->required();
  cp->add_option("--severity", o.severity, "Severity spec (JSON text or file)")->required();
  cp->add_option("--n", o.n, "Sample size")->capture_default_str();
  add_seed(cp);
  add_out(cp);

  auto* fig = app.add_subcommand("figure", "ECDFs of a1|X1|+a2|X2| and b1|X1|+b2|X2| as CSV");
  fig->add_option("--alpha", o.alpha, "Stability index")->required();
  fig->add_option("--beta", o.beta, "Skewness")->capture_default_str();
  fig->add_option("--weights", o.weights, "a1,a2,b1,b2")->capture_default_str();
  fig->add_option("--n", o.n, "Sample size")->capture_default_str();
  add_seed(fig);
  add_out(fig);

  auto* tail = app.add_subcommand("exact-tail", "P(a X1 + (1-a) X2 > x) by quadrature");
  tail->add_option("--dist", o.dist, "Distribution spec (JSON text or file)")->required();
  tail->add_option("--a", o.a, "Weight in (0,1)")->capture_default_str();
  tail->add_option("--x", o.xs, "Comma-separated thresholds")->required();
  tail->add_option("--tol", o.tol, "Absolute quadrature tolerance")->capture_default_str();
  add_out(tail);

  std::vector<const char*> argv{"sdom"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    err << distribution_schema_help();
    return kUsage;
  }

  try {
    if (check_h->parsed()) return cmd_check_h(o, out);
    if (check_sd->parsed()) return cmd_check_sd(o, out);
    if (sd_star->parsed()) return cmd_sd_star(o, out);
    if (maj->parsed()) return cmd_majorize(o, out);
    if (stable->parsed()) return cmd_stable_sample(o, out);
    if (cp->parsed()) return cmd_cp_sim(o, out);
    if (fig->parsed()) return cmd_figure(o, out);
    if (tail->parsed()) return cmd_exact_tail(o, out);
  } catch (const sdom::Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace sdom::cli
