#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qsplit/acceptance.hpp"
#include "qsplit/dary_bounds.hpp"
#include "qsplit/errors.hpp"
#include "qsplit/gbeta.hpp"
#include "qsplit/hitters.hpp"
#include "qsplit/splitting.hpp"
#include "qsplit/strategy.hpp"

using json = nlohmann::json;
using namespace qsplit;

namespace {

struct Options {
  int n = 0;
  int d = 2;
  std::string beta = "5/4";
  int b = 1;
  int a = 1;
  std::string ks = "2,3,4";
  double s = kScanS;
  double step = 1e-3;
  double beta_min = 1.5;
  double beta_max = 1.999;
  std::uint64_t seed = 1;
  double multiplier = 1.0;
  std::string method;
  std::string format = "json";
  std::string out;
  unsigned threads = 1;
  bool cap_override = false;
  bool no_verify = false;
  bool include_uniform = false;
  bool cross_check = false;
  std::string exponents;
  std::string probs;
  std::string c;
  std::string questions;
  std::string profile = "quick";
};

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<int> parse_ints(const std::string& text) {
  std::vector<int> out;
  for (const auto& s : split_commas(text)) {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size()) throw DomainError("not an integer: " + s);
    out.push_back(v);
  }
  return out;
}

std::vector<Rational> parse_rationals(const std::string& text) {
  std::vector<Rational> out;
  for (const auto& s : split_commas(text)) out.push_back(parse_rational(s));
  return out;
}

// Exponent form of a d-adic probability vector.
DAdicDistribution parse_distribution(const Options& o) {
  if (!o.exponents.empty()) {
    std::vector<int> exps;
    for (const auto& s : split_commas(o.exponents)) {
      exps.push_back(s == "z" || s == "zero" ? DAdicDistribution::kZero : std::stoi(s));
    }
    return DAdicDistribution::from_exponents(o.d, std::move(exps));
  }
  if (o.probs.empty()) throw DomainError("--exponents or --probs is required");
  const auto probs = parse_rationals(o.probs);
  std::vector<int> exps;
  for (const auto& p : probs) {
    if (p == 0) {
      exps.push_back(DAdicDistribution::kZero);
      continue;
    }
    int e = 0;
    while (e <= static_cast<int>(probs.size()) && inverse_power(o.d, e) > p) ++e;
    if (inverse_power(o.d, e) != p) throw DomainError(to_string(p) + " is not a power of 1/" + std::to_string(o.d));
    exps.push_back(e);
  }
  return DAdicDistribution::from_exponents(o.d, std::move(exps));
}

json distribution_json(const DAdicDistribution& mu) {
  json probs = json::array();
  for (std::size_t i = 0; i < mu.size(); ++i) probs.push_back(to_string(mu.probability(i)));
  json exps = json::array();
  for (int e : mu.exponents) exps.push_back(e == DAdicDistribution::kZero ? json(nullptr) : json(e));
  return json{{"d", mu.d}, {"exponents", exps}, {"probabilities", probs}};
}

json questions_json(const QuestionSet& Q) {
  json out = json::array();
  for (const auto& q : Q) out.push_back(q.parts);
  return out;
}

QuestionSet read_questions(const std::string& path, int n) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read " + path);
  json doc = json::parse(in);
  const json& list = doc.is_object() ? doc.at("questions") : doc;
  QuestionSet Q;
  for (const auto& item : list) {
    Question q;
    q.parts = item.get<std::vector<std::vector<int>>>();
    q.validate(n);
    Q.push_back(std::move(q));
  }
  return Q;
}

json profile_json(const DensityProfile& p) {
  json rows = json::array();
  for (const auto& [type, e] : p.entries) {
    rows.push_back({{"type", type}, {"count", e.count.str()}, {"denom", e.denom.str()}, {"ratio", to_string(e.ratio)}});
  }
  return rows;
}

json bound_json(const BoundRecord& r) {
  json j{{"beta", r.beta}, {"method", to_string(r.method)}, {"value", r.value}, {"params", r.params}};
  j["b"] = r.b ? json(*r.b) : json(nullptr);
  return j;
}

json hitter_json(const HitterResult& r, int n, int d) {
  json j{{"n", n},
         {"d", d},
         {"method", to_string(r.method)},
         {"size", r.size},
         {"verified", r.verified},
         {"checked", r.checked},
         {"questions", questions_json(r.questions)}};
  j["seed"] = r.seed ? json(*r.seed) : json(nullptr);
  return j;
}

// RFC 4180 quoting: cells with commas, quotes or newlines are quoted and inner quotes doubled.
std::string csv_cell(const json& v) {
  std::string text = v.is_string() ? v.get<std::string>() : v.is_null() ? "" : v.dump();
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char ch : text) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return out + "\"";
}

// Arrays of flat objects under "rows" become a table; everything else becomes key,value lines.
std::string to_csv(const json& doc) {
  std::ostringstream os;
  if (doc.contains("rows") && doc["rows"].is_array() && !doc["rows"].empty()) {
    const auto& rows = doc["rows"];
    std::vector<std::string> keys;
    for (auto it = rows[0].begin(); it != rows[0].end(); ++it) keys.push_back(it.key());
    for (std::size_t i = 0; i < keys.size(); ++i) os << (i ? "," : "") << keys[i];
    os << "\n";
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < keys.size(); ++i) os << (i ? "," : "") << csv_cell(row.value(keys[i], json()));
      os << "\n";
    }
    return os.str();
  }
  os << "key,value\n";
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    os << it.key() << "," << csv_cell(it.value()) << "\n";
  }
  return os.str();
}

void emit(const Options& o, const json& doc) {
  const std::string text = o.format == "csv" ? to_csv(doc) : doc.dump() + "\n";
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw DomainError("cannot write " + o.out);
  f << text;
  std::cout << "wrote " << o.out << "\n";
}

Limits limits_of(const Options& o) {
  Limits l = Limits::from_environment();
  l.cap_override = o.cap_override;
  l.threads = std::max(1u, o.threads);
  return l;
}

json run_rho_min(const Options& o) {
  const Limits l = limits_of(o);
  const RhoResult r = o.d == 2 ? rho_min(o.n, !o.include_uniform, l) : rho_min_d(o.n, o.d, l);
  const DensityProfile profile = o.d == 2 ? splitting_counts(r.witness) : dividing_counts(r.witness);
  return {{"n", o.n},
          {"d", o.d},
          {"rho_min", to_string(r.rho)},
          {"witness", distribution_json(r.witness)},
          {"profile", profile_json(profile)}};
}

json run_rho_star(const Options& o) {
  const Limits l = limits_of(o);
  return {{"n", o.n}, {"rho_star", to_string(rho_star_min(o.n, l))}, {"rho_min", to_string(rho_min(o.n, true, l).rho)}};
}

json run_hitter(const Options& o, const std::string& method_name) {
  const Limits l = limits_of(o);
  switch (parse_hitter_method(method_name)) {
    case HitterMethod::exact: return hitter_json(exact_min_hitter(o.n, o.d, l), o.n, o.d);
    case HitterMethod::greedy: return hitter_json(greedy_hitter(o.n, o.d, l), o.n, o.d);
    case HitterMethod::random:
      return hitter_json(randomized_hitter(o.n, o.d, o.seed, o.multiplier, !o.no_verify, l), o.n, o.d);
    case HitterMethod::halving:
      if (o.d != 2) throw DomainError("the halving baseline is binary");
      return hitter_json(halving_baseline(o.n, !o.no_verify, l), o.n, o.d);
  }
  throw DomainError("unknown method");
}

json run_verify(const Options& o) {
  const QuestionSet Q = read_questions(o.questions, o.n);
  const auto v = is_optimal_question_set(Q, o.n, o.d, o.cross_check, limits_of(o));
  json j{{"n", o.n}, {"d", o.d}, {"optimal", v.optimal}, {"distributions_checked", v.distributions_checked},
         {"methods_agree", v.methods_agree}};
  j["counterexample"] = v.counterexample ? distribution_json(*v.counterexample) : json(nullptr);
  j["cost_method_optimal"] = v.cost_method_optimal ? json(*v.cost_method_optimal) : json(nullptr);
  return j;
}

json cost_json(const CostReport& r) {
  return {{"cost", to_string(r.cost)}, {"cost_value", r.cost_value}, {"depths", r.depths}, {"padding", r.padding},
          {"tau", r.tau}};
}

json run_huffman(const Options& o) {
  json j = cost_json(huffman(parse_rationals(o.probs), o.d));
  j["d"] = o.d;
  return j;
}

json run_restricted(const Options& o) {
  const auto pi = parse_rationals(o.probs);
  const QuestionSet Q = read_questions(o.questions, static_cast<int>(pi.size()));
  json j = cost_json(restricted_opt_cost(pi, Q, o.d, limits_of(o)));
  j["d"] = o.d;
  j["opt_cost"] = to_string(opt_cost(pi, o.d));
  return j;
}

json run_g_bound(const Options& o) {
  const std::string m = o.method.empty() ? "single" : o.method;
  const double beta = to_double(parse_rational(o.beta));
  if (m == "uniform") return bound_json(g_lb_uniform());
  if (m == "single") return bound_json(g_ub_single_block(beta, o.b));
  if (m == "two-block") {
    const auto t = two_block_solve(beta, o.s);
    return {{"beta", t.beta}, {"s", t.s}, {"c0", t.c0}, {"c1", t.c1}, {"alpha0", t.alpha0}, {"alpha1", t.alpha1},
            {"lambda", t.lambda}, {"value", t.value}, {"is_interior_max", t.is_interior_max},
            {"residuals", {t.residuals[0], t.residuals[1], t.residuals[2]}}};
  }
  RealAmount amount;
  amount.b = o.b;
  amount.beta = beta;
  for (const auto& x : parse_rationals(o.c)) amount.c.push_back(to_double(x));
  if (m == "inner") {
    const auto r = inner_max(amount);
    return {{"beta", beta}, {"b", o.b}, {"alpha", r.alpha}, {"value", r.value}, {"certified", r.certified}};
  }
  if (m == "perturbation") {
    const auto p = perturbation_gain(amount);
    json j{{"far_branch", p.far_branch}, {"S", p.S}, {"p_S", p.p_S}, {"q_S", p.q_S}, {"p_T", p.p_T},
           {"q_T", p.q_T}, {"eta_S", p.eta_S}, {"eta_T", p.eta_T}, {"eta_0", p.eta_0}, {"lever", p.lever},
           {"alpha", p.alpha}, {"value", p.value}, {"uniform_value", p.uniform_value}, {"gain", p.gain}};
    j["I"] = p.I ? json(*p.I) : json(nullptr);
    return j;
  }
  throw DomainError("unknown --method " + m + " (uniform, single, two-block, inner, perturbation)");
}

json run_curves(const Options& o) {
  json rows = json::array();
  for (const auto& r : curves(o.beta_min, o.beta_max, o.step, o.s)) {
    rows.push_back({{"beta", r.beta}, {"single_b1", r.single_b1}, {"single_b0", r.single_b0},
                    {"two_block", std::isfinite(r.two_block) ? json(r.two_block) : json(nullptr)}});
  }
  return {{"s", o.s}, {"rows", rows}};
}

json run_empirical(const Options& o) {
  json rows = json::array();
  for (const auto& r : empirical_G(parse_rational(o.beta), parse_ints(o.ks), limits_of(o))) rows.push_back(bound_json(r));
  return {{"beta", o.beta}, {"rows", rows}};
}

json run_dary(const Options& o) {
  const auto r = dary_report(o.d);
  return {{"d", r.d}, {"magic", r.magic_constant}, {"beta", r.optimal_beta}, {"f_opt", r.f_opt},
          {"two_minus_mc", r.two_minus_mc}};
}

json run_hard_dist(const Options& o) {
  const auto h = hard_distribution(o.d, o.a);
  return {{"d", o.d}, {"a", h.a}, {"n", h.n}, {"beta_prime", to_string(h.beta_prime)}, {"head", h.head},
          {"tail", h.tail}, {"distribution", distribution_json(h.mu)}};
}

json run_block_partition(const Options& o) {
  const auto bp = block_partition(parse_distribution(o));
  json blocks = json::array();
  for (const auto& blk : bp.blocks) {
    blocks.push_back({{"D", blk.D}, {"E", blk.E}, {"p", to_string(blk.p.value())}, {"c", blk.c}, {"r", blk.r}});
  }
  return {{"gamma", bp.gamma}, {"blocks", blocks}};
}

json run_report(const Options& o, bool& all_pass) {
  const auto profile = o.profile == "full" ? acceptance::Profile::full : acceptance::Profile::quick;
  if (o.profile != "full" && o.profile != "quick") throw DomainError("--profile must be quick or full");
  json rows = json::array();
  all_pass = true;
  for (const auto& r : acceptance::run_all(profile, limits_of(o))) {
    rows.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    all_pass = all_pass && r.pass;
  }
  return {{"profile", o.profile}, {"all_pass", all_pass}, {"rows", rows}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and numerical tools for dyadic search strategies and their question sets"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", o.out, "Write the report to this path");
  app.add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--cap-override", o.cap_override, "Disable resource caps");

  auto with_n = [&](CLI::App* c) { c->add_option("--n", o.n, "Number of elements")->required(); };
  auto with_d = [&](CLI::App* c) { c->add_option("--d", o.d, "Arity")->check(CLI::Range(2, 64)); };

  auto* rho = app.add_subcommand("rho-min", "Minimum maximal relative density");
  with_n(rho);
  with_d(rho);
  rho->add_flag("--include-uniform", o.include_uniform, "Keep all-equal distributions");
  auto* star = app.add_subcommand("rho-star", "Exact product-of-binomials density minimum");
  with_n(star);
  auto* qexact = app.add_subcommand("q-exact", "Size of a minimum optimal question set");
  with_n(qexact);
  with_d(qexact);
  auto* hitter = app.add_subcommand("hitter", "Construct a question set");
  with_n(hitter);
  with_d(hitter);
  o.method = "exact";
  hitter->add_option("--method", o.method, "exact|random|halving|greedy");
  hitter->add_option("--seed", o.seed, "Random seed");
  hitter->add_option("--multiplier", o.multiplier, "Sample multiplier for the random method");
  hitter->add_flag("--no-verify", o.no_verify, "Skip verification");
  auto* verify = app.add_subcommand("verify", "Check a question set for optimality");
  with_n(verify);
  with_d(verify);
  verify->add_option("--questions", o.questions, "Question set JSON file")->required();
  verify->add_flag("--cross-check", o.cross_check, "Also compare restricted costs");
  auto* huff = app.add_subcommand("huffman", "d-ary Huffman cost");
  huff->add_option("--probs", o.probs, "Comma-separated rationals")->required();
  with_d(huff);
  auto* rcost = app.add_subcommand("restricted-cost", "Optimal cost using only the given questions");
  rcost->add_option("--probs", o.probs, "Comma-separated rationals")->required();
  rcost->add_option("--questions", o.questions, "Question set JSON file")->required();
  with_d(rcost);
  auto* gbound = app.add_subcommand("g-bound", "Bounds on G(beta)");
  gbound->add_option("--beta", o.beta, "beta in [1,2)");
  gbound->add_option("--method", o.method, "uniform|single|two-block|inner|perturbation");
  gbound->add_option("--b", o.b, "Block offset b");
  gbound->add_option("--s", o.s, "Two-block parameter s");
  gbound->add_option("--c", o.c, "Amount sequence c (comma-separated)");
  auto* scan = app.add_subcommand("scan-1236", "Global scan of the two-block and single-block bounds");
  scan->add_option("--s", o.s, "Two-block parameter s");
  scan->add_option("--step", o.step, "beta grid step");
  auto* curve = app.add_subcommand("curves", "Bound curves over a beta range");
  curve->add_option("--beta-min", o.beta_min, "Range start");
  curve->add_option("--beta-max", o.beta_max, "Range end");
  curve->add_option("--step", o.step, "Grid step");
  curve->add_option("--s", o.s, "Two-block parameter s");
  auto* emp = app.add_subcommand("empirical-g", "log2(rho_min(n))/n along n = beta 2^k");
  emp->add_option("--beta", o.beta, "Exact beta, e.g. 5/4");
  emp->add_option("--k", o.ks, "Comma-separated k values");
  auto* dary = app.add_subcommand("dary", "d-ary constants");
  with_d(dary);
  auto* hard = app.add_subcommand("hard-dist", "Hard d-adic distribution");
  with_d(hard);
  hard->add_option("--a", o.a, "Level a")->check(CLI::PositiveNumber);
  auto* block = app.add_subcommand("block-partition", "Equal-probability block decomposition");
  with_d(block);
  block->add_option("--exponents", o.exponents, "Comma-separated exponents (z for zero)");
  block->add_option("--probs", o.probs, "Comma-separated probabilities");
  auto* report = app.add_subcommand("report", "Run the acceptance suite");
  report->add_option("--profile", o.profile, "quick|full");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    json doc;
    bool ok = true;
    if (*rho) doc = run_rho_min(o);
    else if (*star) doc = run_rho_star(o);
    else if (*qexact) doc = run_hitter(o, "exact");
    else if (*hitter) doc = run_hitter(o, o.method);
    else if (*verify) doc = run_verify(o);
    else if (*huff) doc = run_huffman(o);
    else if (*rcost) doc = run_restricted(o);
    else if (*gbound) doc = run_g_bound(o);
    else if (*scan) doc = bound_json(scan_1236(o.s, o.step));
    else if (*curve) doc = run_curves(o);
    else if (*emp) doc = run_empirical(o);
    else if (*dary) doc = run_dary(o);
    else if (*hard) doc = run_hard_dist(o);
    else if (*block) doc = run_block_partition(o);
    else if (*report) doc = run_report(o, ok);
    emit(o, doc);
    return ok ? 0 : 4;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceCapError& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return 3;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
