// frankl-forge: weighted union-closed / intersection-closed family checks,
// lifted-family entropy identity verification, and functional threshold
// computation. Exit codes: 0 pass, 1 verification failure, 2 input error,
// 3 budget exceeded.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "franklforge/entropy.hpp"
#include "franklforge/family_io.hpp"
#include "franklforge/optimizer.hpp"

namespace {

using frankl::Rational;
using frankl::families::ClosureOp;
using frankl::families::SetFamily;
using frankl::families::WeightSpec;
using nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitInputError = 2;
constexpr int kExitBudget = 3;

std::string fmt9(double v) {
  std::ostringstream os;
  os << std::setprecision(9) << v;
  return os.str();
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string content_hash(const std::string& bytes) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << fnv1a(bytes);
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw frankl::ParseError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::istringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw frankl::ParseError("bad integer list entry '" + tok + "'");
    }
  }
  if (out.empty()) throw frankl::ParseError("empty integer list");
  return out;
}

// "5..12" or "5,7,9" or "6"
std::vector<int> parse_k_values(const std::string& text) {
  auto dots = text.find("..");
  if (dots == std::string::npos) return parse_int_list(text);
  try {
    const int lo = std::stoi(text.substr(0, dots));
    const int hi = std::stoi(text.substr(dots + 2));
    if (lo < 1 || hi < lo) throw std::invalid_argument(text);
    std::vector<int> out;
    for (int k = lo; k <= hi; ++k) out.push_back(k);
    return out;
  } catch (const std::exception&) {
    throw frankl::ParseError("bad k range '" + text + "'");
  }
}

std::vector<int> broadcast(const std::vector<int>& v, int n, const char* what) {
  if (static_cast<int>(v.size()) == n) return v;
  if (v.size() == 1) return std::vector<int>(static_cast<std::size_t>(n), v[0]);
  throw frankl::ParseError(std::string(what) + " needs 1 or n entries");
}

struct CommonOpts {
  std::string format = "text";
  std::string kspec;
  std::string mspec;
  std::string tspec;
  double tol = 1e-4;
  int grid = 2048;
  std::uint64_t seed = 1;
  int jobs = 1;
  std::uint64_t budget = frankl::lifting::kDefaultLiftBudget;
  bool allow_n5 = false;
};

json config_json(const CommonOpts& o, const std::string& subcommand) {
  return json{{"subcommand", subcommand}, {"format", o.format}, {"k", o.kspec},
              {"m", o.mspec},             {"t", o.tspec},       {"tol", o.tol},
              {"grid", o.grid},           {"seed", o.seed},     {"jobs", o.jobs},
              {"budget", o.budget},       {"allow_n5", o.allow_n5}};
}

WeightSpec make_weights(const CommonOpts& o, int n) {
  if (!o.tspec.empty()) {
    if (!o.kspec.empty() || !o.mspec.empty()) {
      throw frankl::ParseError("--t is mutually exclusive with --k/--m");
    }
    return WeightSpec::boltzmann(n, frankl::parse_rational(o.tspec));
  }
  if (o.kspec.empty() && o.mspec.empty()) return WeightSpec::uniform(n);
  if (o.kspec.empty() || o.mspec.empty()) {
    throw frankl::ParseError("--k and --m must be given together");
  }
  return WeightSpec::product(broadcast(parse_int_list(o.kspec), n, "--k"),
                             broadcast(parse_int_list(o.mspec), n, "--m"));
}

json weights_json(const WeightSpec& w) {
  json doc{{"mode", w.boltzmann_mode() ? "boltzmann" : "product"},
           {"k", w.kvec()},
           {"m", w.mvec()}};
  if (w.boltzmann_mode()) doc["t"] = frankl::to_string(w.t());
  return doc;
}

int cmd_check(const CommonOpts& o, const std::string& family_path) {
  const std::string bytes = read_file(family_path);
  SetFamily loaded = frankl::io::load_family_file(family_path);
  const bool int_closed = frankl::families::is_intersection_closed(loaded);
  const bool un_closed = frankl::families::is_union_closed(loaded);
  if (!int_closed && !un_closed) {
    throw frankl::NotClosedError("family is closed under neither intersection nor union");
  }
  // Union-closed inputs are handled through the complemented family: the
  // membership fraction of i under weights prod k/m equals the avoidance
  // fraction of i in the dual under prod m/k.
  const bool dualized = !int_closed;
  SetFamily fam = dualized ? frankl::families::dualize(loaded) : loaded;
  WeightSpec w = make_weights(o, fam.n());
  auto rec = frankl::families::verify_frankl(fam, w);

  // Elements of a union-closed input that lie in every set have membership
  // fraction 1 (trivial witnesses); they fall outside the complemented
  // family's support and never appear in the abundance table.
  std::vector<int> in_every_set;
  if (dualized) {
    frankl::families::Bitmask common = ~frankl::families::Bitmask{0};
    for (auto a : loaded.sets()) common &= a;
    for (int j = 0; j < loaded.n(); ++j) {
      if ((common >> j) & 1) in_every_set.push_back(j + 1);
    }
  }

  json out{{"command", "check"},
           {"config", config_json(o, "check")},
           {"input", family_path},
           {"input_hash", content_hash(bytes)},
           {"n", fam.n()},
           {"family_size", fam.size()},
           {"dualized", dualized},
           {"weights", weights_json(w)},
           {"pass", rec.pass},
           {"best_element", rec.best_element},
           {"best_abundance", frankl::to_string(rec.best_abundance)},
           {"best_abundance_float", frankl::to_double(rec.best_abundance)}};
  json ab = json::array();
  for (const auto& [elem, val] : rec.abundances) {
    ab.push_back(json{{"element", elem},
                      {"value", frankl::to_string(val)},
                      {"value_float", frankl::to_double(val)}});
  }
  out["abundances"] = ab;
  out["elements_in_every_set"] = in_every_set;

  if (o.format == "json") {
    std::cout << out.dump(2) << '\n';
  } else {
    if (dualized) {
      std::cout << "note: union-closed input; checking the complemented family\n";
      if (!in_every_set.empty()) {
        std::cout << "note: element(s)";
        for (int e : in_every_set) std::cout << ' ' << e;
        std::cout << " lie in every set (membership fraction 1, omitted below)\n";
      }
    }
    std::cout << "family: n=" << fam.n() << ", " << fam.size() << " sets (hash "
              << content_hash(bytes) << ")\n";
    const char* frac_name = dualized ? "membership fraction" : "avoidance fraction";
    for (const auto& [elem, val] : rec.abundances) {
      std::cout << "  element " << elem << ": " << frac_name << " = "
                << frankl::to_string(val) << " = " << fmt9(frankl::to_double(val)) << '\n';
    }
    std::cout << "best element " << rec.best_element << " with "
              << frankl::to_string(rec.best_abundance) << (rec.pass ? " >= 1/2" : " < 1/2")
              << (rec.pass ? "  [pass]" : "  [FAIL]") << '\n';
  }
  return rec.pass ? kExitPass : kExitVerificationFailure;
}

int cmd_exhaustive(const CommonOpts& o, int n) {
  WeightSpec w = make_weights(o, n);
  auto summary = frankl::families::run_exhaustive(n, w, 2, o.jobs, o.allow_n5);
  json out{{"command", "exhaustive"},
           {"config", config_json(o, "exhaustive")},
           {"input_hash", content_hash("exhaustive:n=" + std::to_string(n))},
           {"n", n},
           {"weights", weights_json(w)},
           {"families_checked", summary.families_checked},
           {"failures", summary.failures},
           {"min_best_abundance", frankl::to_string(summary.min_best_abundance)},
           {"min_best_abundance_float", frankl::to_double(summary.min_best_abundance)},
           {"argmin_family", summary.argmin_sets}};
  if (o.format == "json") {
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << "n=" << n << ": " << summary.families_checked
              << " intersection-closed families with >= 2 sets\n"
              << "counterexamples: " << summary.failures << '\n'
              << "min over families of the best avoidance fraction: "
              << frankl::to_string(summary.min_best_abundance) << " = "
              << fmt9(frankl::to_double(summary.min_best_abundance)) << '\n';
  }
  return summary.failures == 0 ? kExitPass : kExitVerificationFailure;
}

int cmd_entropy_verify(const CommonOpts& o, const std::string& family_path, int random_n,
                       double density, const std::string& which) {
  const std::string input_bytes =
      family_path.empty() ? "random:n=" + std::to_string(random_n) +
                                ",density=" + fmt9(density) + ",seed=" + std::to_string(o.seed)
                          : read_file(family_path);
  SetFamily fam = [&] {
    if (!family_path.empty()) {
      SetFamily loaded = frankl::io::load_family_file(family_path);
      if (frankl::families::is_intersection_closed(loaded)) return loaded;
      if (frankl::families::is_union_closed(loaded)) return frankl::families::dualize(loaded);
      throw frankl::NotClosedError("family is closed under neither intersection nor union");
    }
    return frankl::families::random_closed_family(random_n, ClosureOp::Intersection, density,
                                                  o.seed);
  }();
  WeightSpec w = make_weights(o, fam.n());
  frankl::lifting::LiftedFamily lf(fam, w, o.budget);
  const std::string instance =
      (family_path.empty() ? "random(seed=" + std::to_string(o.seed) + ")" : family_path) +
      " n=" + std::to_string(fam.n());

  std::vector<frankl::entropy::ResidualReport> reports;
  const bool all = which == "all";
  if (all || which == "basic") {
    reports.push_back(frankl::entropy::verify_basic_inequality(lf));
  }
  for (int i = 1; i <= fam.n(); ++i) {
    if (all || which == "hf") reports.push_back(frankl::entropy::verify_hf(lf, i));
    if (all || which == "hfmin") reports.push_back(frankl::entropy::verify_hfmin(lf, i));
    if (all || which == "diff") {
      reports.push_back(frankl::entropy::verify_difference_identity(lf, i));
    }
  }
  double max_residual = 0.0;
  bool pass = true;
  for (auto& r : reports) {
    r.instance = instance;
    max_residual = std::max(max_residual, r.residual);
    pass = pass && r.pass;
  }

  // per-coordinate prefix-mixture measures, exact
  std::vector<frankl::lifting::RationalMeasure> measures;
  for (int i = 1; i <= fam.n(); ++i) measures.push_back(frankl::lifting::mu_i(lf, i));

  if (o.format == "json") {
    json rows = json::array();
    for (const auto& r : reports) rows.push_back(json::parse(frankl::entropy::to_json(r)));
    json mus = json::array();
    for (const auto& mu : measures) {
      json atoms = json::array();
      for (const auto& [loc, mass] : mu.atoms) {
        atoms.push_back(json{{"location", frankl::to_string(loc)},
                             {"mass", frankl::to_string(mass)}});
      }
      mus.push_back(atoms);
    }
    json out{{"command", "entropy-verify"},
             {"config", config_json(o, "entropy-verify")},
             {"instance", instance},
             {"input_hash", content_hash(input_bytes)},
             {"lift_size", lf.size()},
             {"checks", rows},
             {"mu", mus},
             {"max_residual", max_residual},
             {"pass", pass}};
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << "instance: " << instance << " (lift size " << lf.size() << ")\n";
    for (const auto& r : reports) {
      std::cout << "  " << r.check;
      if (r.coord > 0) std::cout << "[i=" << r.coord << "]";
      std::cout << ": lhs=" << fmt9(r.lhs) << " rhs=" << fmt9(r.rhs)
                << " residual=" << r.residual << (r.pass ? "  [pass]" : "  [FAIL]") << '\n';
    }
    for (int i = 1; i <= fam.n(); ++i) {
      std::cout << "  mu[" << i << "] =";
      for (const auto& [loc, mass] : measures[static_cast<std::size_t>(i - 1)].atoms) {
        std::cout << ' ' << frankl::to_string(mass) << "*d(" << frankl::to_string(loc) << ")";
      }
      std::cout << '\n';
    }
    std::cout << "max residual " << max_residual << (pass ? "  [pass]" : "  [FAIL]") << '\n';
  }
  return pass ? kExitPass : kExitVerificationFailure;
}

int cmd_threshold(const CommonOpts& o, int k, int m) {
  frankl::optimizer::ThresholdConfig cfg;
  cfg.bisection_tol = o.tol;
  cfg.inner.grid = o.grid;
  auto rep = frankl::optimizer::threshold_phi({k, m}, cfg);
  if (o.format == "json") {
    json out{{"command", "threshold"},
             {"config", config_json(o, "threshold")},
             {"report", json::parse(frankl::optimizer::to_json(rep))}};
    std::cout << out.dump(2) << '\n';
  } else if (o.format == "csv") {
    std::cout << frankl::optimizer::csv_header() << '\n'
              << frankl::optimizer::to_csv_row(rep) << '\n';
  } else {
    std::cout << "k=" << rep.k << " m=" << rep.m << ": phi* = " << fmt9(rep.phi_star)
              << (rep.capped ? " (capped at 1/2)" : "") << '\n';
    if (rep.limiting_type) {
      std::cout << "limiting class: " << frankl::optimizer::to_string(*rep.limiting_type);
      if (rep.argmin_x) std::cout << " at x = " << fmt9(*rep.argmin_x);
      std::cout << '\n';
    }
    std::cout << "grid " << rep.grid_points << ", bisection tol " << rep.bisection_tolerance
              << ", " << rep.all_evaluations_count << " evaluations\n";
    for (const auto& f : rep.flags) std::cout << "flag: " << f << '\n';
  }
  return kExitPass;
}

int cmd_scan(const CommonOpts& o, const std::string& krange, const std::string& mrule) {
  std::vector<int> ks = parse_k_values(krange);
  std::vector<int> ms;  // empty -> all m up to floor(sqrt(k))
  if (!mrule.empty() && mrule != "auto") ms = parse_int_list(mrule);
  std::vector<std::pair<int, int>> cells;
  for (int k : ks) {
    auto one = frankl::optimizer::make_scan_cells(k, k, ms);
    cells.insert(cells.end(), one.begin(), one.end());
  }
  frankl::optimizer::ThresholdConfig cfg;
  cfg.bisection_tol = o.tol;
  cfg.inner.grid = o.grid;
  auto rows = frankl::optimizer::scan_km(cells, cfg, o.jobs);
  if (o.format == "json") {
    json arr = json::array();
    for (const auto& r : rows) arr.push_back(json::parse(frankl::optimizer::to_json(r)));
    json out{{"command", "scan"}, {"config", config_json(o, "scan")}, {"rows", arr}};
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << frankl::optimizer::csv_header() << '\n';
    for (const auto& r : rows) std::cout << frankl::optimizer::to_csv_row(r) << '\n';
  }
  return kExitPass;
}

int cmd_sample(const CommonOpts& o, int n, double density, const std::string& op) {
  ClosureOp cop;
  if (op == "intersection") {
    cop = ClosureOp::Intersection;
  } else if (op == "union") {
    cop = ClosureOp::Union;
  } else {
    throw frankl::ParseError("--op must be 'intersection' or 'union'");
  }
  auto fam = frankl::families::random_closed_family(n, cop, density, o.seed);
  std::cout << frankl::io::family_to_json(fam) << '\n';
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"frankl-forge: weighted set-family conjecture checks, lifted-family entropy "
               "identities, and functional thresholds"};
  app.require_subcommand(1);

  CommonOpts o;
  if (const char* env = std::getenv("FRANKL_FORGE_BUDGET")) {
    try {
      o.budget = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "error: bad FRANKL_FORGE_BUDGET value '" << env << "'\n";
      return kExitInputError;
    }
  }

  auto add_misc = [&](CLI::App* sub, const char* default_format = "text") {
    sub->add_option("--format", o.format, "text | json | csv")->default_val(default_format);
    sub->add_option("--tol", o.tol, "bisection tolerance")->default_val(1e-4);
    sub->add_option("--grid", o.grid, "inner grid size")->default_val(2048);
    sub->add_option("--seed", o.seed, "random seed")->default_val(1);
    sub->add_option("--jobs", o.jobs, "worker threads")->default_val(1);
    sub->add_option("--budget", o.budget, "lift/pair enumeration budget");
    sub->add_flag("--allow-n5", o.allow_n5, "permit the 2^32-candidate n=5 enumeration");
  };
  auto add_weight_opts = [&](CLI::App* sub) {
    auto* k = sub->add_option("--k", o.kspec, "k parameters (scalar or comma list)");
    auto* m = sub->add_option("--m", o.mspec, "m parameters (scalar or comma list)");
    auto* t = sub->add_option("--t", o.tspec, "Boltzmann t as rational 'p/q'");
    t->excludes(k)->excludes(m);
  };

  std::string family_path;
  auto* check = app.add_subcommand("check", "verify one family from a file");
  check->add_option("family", family_path, "family file (JSON or text)")->required();
  add_weight_opts(check);
  add_misc(check);

  int exhaustive_n = 3;
  auto* exhaustive = app.add_subcommand("exhaustive", "verify every closed family on [n]");
  exhaustive->add_option("--n", exhaustive_n, "ground-set size")->required();
  add_weight_opts(exhaustive);
  add_misc(exhaustive);

  std::string ev_family;
  int ev_n = 2;
  double ev_density = 0.5;
  std::string ev_which = "all";
  auto* ev = app.add_subcommand("entropy-verify", "lifted-family entropy identity checks");
  ev->add_option("--family", ev_family, "family file; omit to generate randomly");
  ev->add_option("--n", ev_n, "ground-set size for random instances")->default_val(2);
  ev->add_option("--density", ev_density, "random draw density")->default_val(0.5);
  ev->add_option("--which", ev_which, "hf | hfmin | diff | basic | all")->default_val("all");
  add_weight_opts(ev);
  add_misc(ev);

  int th_k = 5, th_m = 1;
  auto* th = app.add_subcommand("threshold", "phi* for one (k, m)");
  th->add_option("--k", th_k, "k")->required();
  th->add_option("--m", th_m, "m")->required();
  add_misc(th);

  std::string scan_k = "5..12", scan_m = "auto";
  auto* scan = app.add_subcommand("scan", "phi* table over (k, m) cells");
  scan->add_option("--k", scan_k, "k range '5..12' or comma list")->default_val("5..12");
  scan->add_option("--m", scan_m, "'auto' (all m <= sqrt(k)) or comma list")
      ->default_val("auto");
  add_misc(scan, "csv");

  int sample_n = 3;
  double sample_density = 0.5;
  std::string sample_op = "intersection";
  auto* sample = app.add_subcommand("sample", "draw a random closed family");
  sample->add_option("--n", sample_n, "ground-set size")->required();
  sample->add_option("--density", sample_density, "draw density")->default_val(0.5);
  sample->add_option("--op", sample_op, "intersection | union")->default_val("intersection");
  add_misc(sample);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitPass : kExitInputError;
  }

  try {
    if (check->parsed()) return cmd_check(o, family_path);
    if (exhaustive->parsed()) return cmd_exhaustive(o, exhaustive_n);
    if (ev->parsed()) return cmd_entropy_verify(o, ev_family, ev_n, ev_density, ev_which);
    if (th->parsed()) return cmd_threshold(o, th_k, th_m);
    if (scan->parsed()) return cmd_scan(o, scan_k, scan_m);
    if (sample->parsed()) return cmd_sample(o, sample_n, sample_density, sample_op);
  } catch (const frankl::BudgetExceededError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBudget;
  } catch (const frankl::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}
