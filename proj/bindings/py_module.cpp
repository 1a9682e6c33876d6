#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "franklforge/entropy.hpp"
#include "franklforge/family_io.hpp"
#include "franklforge/optimizer.hpp"

namespace py = pybind11;
using namespace frankl;

namespace {

families::Bitmask mask_from_elements(const std::vector<int>& elems, int n) {
  families::Bitmask mask = 0;
  for (int e : elems) {
    if (e < 1 || e > n) {
      throw DomainError("element " + std::to_string(e) + " outside [1, " + std::to_string(n) + "]");
    }
    mask |= families::Bitmask{1} << (e - 1);
  }
  return mask;
}

std::vector<int> elements_from_mask(families::Bitmask a, int n) {
  std::vector<int> out;
  for (int j = 0; j < n; ++j) {
    if ((a >> j) & 1) out.push_back(j + 1);
  }
  return out;
}

py::object to_fraction(const Rational& r) {
  static py::object fraction_cls = py::module_::import("fractions").attr("Fraction");
  return fraction_cls(to_string(r));
}

Rational rational_from_py(const py::object& obj) {
  return parse_rational(py::cast<std::string>(py::str(obj)));  // int, str, or Fraction
}

families::SetFamily make_family(int n, const std::vector<std::vector<int>>& sets) {
  std::vector<families::Bitmask> masks;
  masks.reserve(sets.size());
  for (const auto& s : sets) masks.push_back(mask_from_elements(s, n));
  return families::SetFamily(n, std::move(masks));
}

py::list family_sets(const families::SetFamily& f) {
  py::list out;
  for (auto a : f.sets()) out.append(elements_from_mask(a, f.n()));
  return out;
}

py::dict residual_dict(const entropy::ResidualReport& r) {
  py::dict d;
  d["check"] = r.check;
  d["i"] = r.coord;
  d["lhs"] = r.lhs;
  d["rhs"] = r.rhs;
  d["residual"] = r.residual;
  d["pass"] = r.pass;
  return d;
}

py::dict threshold_dict(const optimizer::ThresholdReport& r) {
  py::dict d;
  d["k"] = r.k;
  d["m"] = r.m;
  d["phi_star"] = r.phi_star;
  d["capped"] = r.capped;
  d["limiting_type"] =
      r.limiting_type ? py::cast(optimizer::to_string(*r.limiting_type)) : py::none();
  d["argmin_x"] = r.argmin_x ? py::cast(*r.argmin_x) : py::none();
  d["grid"] = r.grid_points;
  d["tol"] = r.bisection_tolerance;
  d["evaluations"] = r.all_evaluations_count;
  d["flags"] = r.flags;
  return d;
}

}  // namespace

PYBIND11_MODULE(franklforge, m) {
  m.doc() = "Weighted union-closed / intersection-closed set-family checks, lifted-family "
            "entropy identities, and thresholds of the associated functional.";

  py::register_exception<Error>(m, "FranklForgeError", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "FranklForgeDomainError", PyExc_ValueError);
  py::register_exception<BudgetExceededError>(m, "BudgetExceededError", PyExc_RuntimeError);

  py::enum_<families::ClosureOp>(m, "ClosureOp")
      .value("INTERSECTION", families::ClosureOp::Intersection)
      .value("UNION", families::ClosureOp::Union);

  py::class_<families::SetFamily>(m, "SetFamily")
      .def(py::init(&make_family), py::arg("n"), py::arg("sets"),
           "Family of subsets of [n]; sets are lists of 1-based elements.")
      .def_property_readonly("n", &families::SetFamily::n)
      .def_property_readonly("sets", &family_sets)
      .def("__len__", &families::SetFamily::size)
      .def("__eq__",
           [](const families::SetFamily& a, const families::SetFamily& b) { return a == b; })
      .def("__repr__", [](const families::SetFamily& f) {
        return "SetFamily(n=" + std::to_string(f.n()) + ", size=" + std::to_string(f.size()) +
               ")";
      });

  py::class_<families::WeightSpec>(m, "WeightSpec")
      .def_static("product", &families::WeightSpec::product, py::arg("kvec"), py::arg("mvec"))
      .def_static(
          "boltzmann",
          [](int n, const py::object& t) {
            return families::WeightSpec::boltzmann(n, rational_from_py(t));
          },
          py::arg("n"), py::arg("t"), "t accepts 'p/q' strings, ints, or Fractions")
      .def_static("uniform", &families::WeightSpec::uniform, py::arg("n"))
      .def_property_readonly("kvec", &families::WeightSpec::kvec)
      .def_property_readonly("mvec", &families::WeightSpec::mvec)
      .def_property_readonly("boltzmann_mode", &families::WeightSpec::boltzmann_mode)
      .def_property_readonly("t",
                             [](const families::WeightSpec& w) { return to_fraction(w.t()); })
      .def_property_readonly("beta", &families::WeightSpec::beta);

  m.def("is_intersection_closed", &families::is_intersection_closed);
  m.def("is_union_closed", &families::is_union_closed);
  m.def("close_under", &families::close_under, py::arg("family"), py::arg("op"));
  m.def("dualize", &families::dualize);
  m.def(
      "weight",
      [](const std::vector<int>& a, const families::WeightSpec& w) {
        return to_fraction(families::weight(mask_from_elements(a, w.n()), w));
      },
      py::arg("a"), py::arg("weights"));
  m.def(
      "abundance",
      [](const families::SetFamily& f, const families::WeightSpec& w, int element) {
        return to_fraction(families::abundance(f, w, element));
      },
      py::arg("family"), py::arg("weights"), py::arg("element"));
  m.def(
      "best_element",
      [](const families::SetFamily& f, const families::WeightSpec& w) {
        auto [e, v] = families::best_element(f, w);
        return py::make_tuple(e, to_fraction(v));
      },
      py::arg("family"), py::arg("weights"));
  m.def(
      "verify_frankl",
      [](const families::SetFamily& f, const families::WeightSpec& w) {
        auto rec = families::verify_frankl(f, w);
        py::dict d;
        d["pass"] = rec.pass;
        d["best_element"] = rec.best_element;
        d["best_abundance"] = to_fraction(rec.best_abundance);
        py::list ab;
        for (const auto& [elem, val] : rec.abundances) {
          ab.append(py::make_tuple(elem, to_fraction(val)));
        }
        d["abundances"] = ab;
        return d;
      },
      py::arg("family"), py::arg("weights"));
  m.def("enumerate_closed_families", &families::enumerate_closed_families, py::arg("n"),
        py::arg("op"), py::arg("min_size") = 2, py::arg("allow_n5") = false);
  m.def("random_closed_family", &families::random_closed_family, py::arg("n"), py::arg("op"),
        py::arg("density"), py::arg("seed"));
  m.def(
      "run_exhaustive",
      [](int n, const families::WeightSpec& w, int min_size, int jobs) {
        auto s = families::run_exhaustive(n, w, min_size, jobs);
        py::dict d;
        d["families_checked"] = s.families_checked;
        d["failures"] = s.failures;
        d["min_best_abundance"] = to_fraction(s.min_best_abundance);
        py::list argmin;
        for (auto a : s.argmin_sets) argmin.append(elements_from_mask(a, n));
        d["argmin_family"] = argmin;
        return d;
      },
      py::arg("n"), py::arg("weights"), py::arg("min_size") = 2, py::arg("jobs") = 1);

  m.def("load_family_file", &io::load_family_file, py::arg("path"));
  m.def("parse_family_json", &io::parse_family_json, py::arg("text"));
  m.def("family_to_json", &io::family_to_json, py::arg("family"));

  py::class_<lifting::LiftedFamily>(m, "LiftedFamily")
      .def(py::init<families::SetFamily, families::WeightSpec, std::uint64_t>(),
           py::arg("base"), py::arg("weights"),
           py::arg("budget") = lifting::kDefaultLiftBudget)
      .def_property_readonly("size", &lifting::LiftedFamily::size)
      .def_property_readonly("base", &lifting::LiftedFamily::base)
      .def(
          "tuple",
          [](const lifting::LiftedFamily& lf, std::uint64_t i) {
            if (i >= lf.size()) throw py::index_error();
            auto row = lf.tuple(i);
            return std::vector<int>(row.begin(), row.end());
          },
          py::arg("index"), "Symbol codes: 0, eps^1..eps^{k-1}, one, zeta^1..zeta^{m-1}.");

  m.def(
      "mul_symbol",
      [](int a, int b, int k, int m) {
        return static_cast<int>(lifting::mul_symbol(static_cast<lifting::SymbolCode>(a),
                                                    static_cast<lifting::SymbolCode>(b), k, m));
      },
      py::arg("a"), py::arg("b"), py::arg("k"), py::arg("m"));
  m.def(
      "theta",
      [](const std::vector<int>& codes, const families::WeightSpec& w) {
        std::vector<lifting::SymbolCode> row(codes.begin(), codes.end());
        return elements_from_mask(lifting::theta(row, w), w.n());
      },
      py::arg("codes"), py::arg("weights"));
  m.def(
      "base_marginal",
      [](const lifting::LiftedFamily& lf, const std::vector<int>& a) {
        return to_fraction(lifting::base_marginal(lf, mask_from_elements(a, lf.n())));
      },
      py::arg("lift"), py::arg("a"));
  m.def(
      "conditional_zero_prob",
      [](const lifting::LiftedFamily& lf, int coord, const std::vector<int>& prefix) {
        std::vector<lifting::SymbolCode> p(prefix.begin(), prefix.end());
        return to_fraction(lifting::conditional_zero_prob(lf, coord, p));
      },
      py::arg("lift"), py::arg("coord"), py::arg("prefix"));
  m.def(
      "mu_i",
      [](const lifting::LiftedFamily& lf, int coord) {
        py::list out;
        for (const auto& [loc, mass] : lifting::mu_i(lf, coord).atoms) {
          out.append(py::make_tuple(to_fraction(loc), to_fraction(mass)));
        }
        return out;
      },
      py::arg("lift"), py::arg("coord"));

  m.def(
      "shannon_entropy",
      [](const std::vector<py::object>& masses) {
        entropy::FiniteDistribution d;
        for (const auto& p : masses) d.masses.push_back(rational_from_py(p));
        return entropy::entropy(d);
      },
      py::arg("masses"), "Entropy in nats of exact rational masses summing to 1.");
  m.def("chain_terms", &entropy::chain_terms, py::arg("lift"));
  m.def(
      "verify_basic_inequality",
      [](const lifting::LiftedFamily& lf, std::uint64_t budget) {
        return residual_dict(entropy::verify_basic_inequality(lf, budget));
      },
      py::arg("lift"), py::arg("pair_budget") = entropy::kDefaultPairBudget);
  m.def(
      "verify_hf",
      [](const lifting::LiftedFamily& lf, int i) {
        return residual_dict(entropy::verify_hf(lf, i));
      },
      py::arg("lift"), py::arg("coord"));
  m.def(
      "verify_hfmin",
      [](const lifting::LiftedFamily& lf, int i, std::uint64_t budget) {
        return residual_dict(entropy::verify_hfmin(lf, i, budget));
      },
      py::arg("lift"), py::arg("coord"), py::arg("pair_budget") = entropy::kDefaultPairBudget);
  m.def(
      "verify_difference_identity",
      [](const lifting::LiftedFamily& lf, int i, std::uint64_t budget) {
        return residual_dict(entropy::verify_difference_identity(lf, i, budget));
      },
      py::arg("lift"), py::arg("coord"), py::arg("pair_budget") = entropy::kDefaultPairBudget);

  m.def(
      "h", [](int k, int m, double t) { return functional::h({k, m}, t); }, py::arg("k"),
      py::arg("m"), py::arg("t"));
  m.def(
      "g", [](int k, int m, double x, double y) { return functional::g({k, m}, x, y); },
      py::arg("k"), py::arg("m"), py::arg("x"), py::arg("y"));
  m.def(
      "F",
      [](int k, int m, const std::vector<std::pair<double, double>>& atoms) {
        return functional::F({k, m}, functional::DiscreteMeasure(atoms));
      },
      py::arg("k"), py::arg("m"), py::arg("atoms"),
      "atoms: list of (location, mass) pairs on [0, 1] with masses summing to 1.");
  m.def(
      "F_type1", [](int k, int m, double phi) { return functional::F_type1({k, m}, phi); },
      py::arg("k"), py::arg("m"), py::arg("phi"));
  m.def(
      "F_type2",
      [](int k, int m, double phi, double x) { return functional::F_type2({k, m}, phi, x); },
      py::arg("k"), py::arg("m"), py::arg("phi"), py::arg("x"));
  m.def(
      "F_type3",
      [](int k, int m, double phi, double x) { return functional::F_type3({k, m}, phi, x); },
      py::arg("k"), py::arg("m"), py::arg("phi"), py::arg("x"));
  m.def("B_lower_bound", &functional::B_lower_bound, py::arg("k"), py::arg("x"),
        py::arg("phi"));
  m.def("boltzmann_expected_energy", &functional::boltzmann_expected_energy,
        py::arg("family"), py::arg("t"));

  m.def(
      "min_over_types",
      [](int k, int m, double phi, int grid) {
        optimizer::MinimizerConfig cfg;
        cfg.grid = grid;
        auto r = optimizer::min_over_types({k, m}, phi, cfg);
        py::dict d;
        d["min_value"] = r.min_value;
        d["type"] = optimizer::to_string(r.type);
        d["argmin_x"] = r.argmin_x ? py::cast(*r.argmin_x) : py::none();
        d["witness"] = r.witness.atoms();
        return d;
      },
      py::arg("k"), py::arg("m"), py::arg("phi"), py::arg("grid") = 2048);
  m.def(
      "threshold_phi",
      [](int k, int m, double tol, int grid) {
        optimizer::ThresholdConfig cfg;
        cfg.bisection_tol = tol;
        cfg.inner.grid = grid;
        return threshold_dict(optimizer::threshold_phi({k, m}, cfg));
      },
      py::arg("k"), py::arg("m"), py::arg("tol") = 1e-4, py::arg("grid") = 2048);
  m.def(
      "two_point_scan",
      [](int k, int m, double phi, long long samples, std::uint64_t seed) {
        auto r = optimizer::two_point_scan({k, m}, phi, samples, seed);
        py::dict d;
        d["samples"] = r.samples;
        d["type_minimum"] = r.type_minimum;
        d["sampled_minimum"] = r.sampled_minimum;
        d["worst_gap"] = r.worst_gap;
        d["assertion_mode"] = r.assertion_mode;
        d["pass"] = r.pass;
        return d;
      },
      py::arg("k"), py::arg("m"), py::arg("phi"), py::arg("samples") = 10000,
      py::arg("seed") = 1);
  m.def(
      "scan_km",
      [](int k_lo, int k_hi, const std::vector<int>& m_list, double tol, int grid, int jobs) {
        optimizer::ThresholdConfig cfg;
        cfg.bisection_tol = tol;
        cfg.inner.grid = grid;
        auto rows = optimizer::scan_km(optimizer::make_scan_cells(k_lo, k_hi, m_list), cfg, jobs);
        py::list out;
        for (const auto& r : rows) out.append(threshold_dict(r));
        return out;
      },
      py::arg("k_lo"), py::arg("k_hi"), py::arg("m_list") = std::vector<int>{},
      py::arg("tol") = 1e-4, py::arg("grid") = 2048, py::arg("jobs") = 1);
}
