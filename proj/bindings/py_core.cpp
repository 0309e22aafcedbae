// Python bindings for the main operations: sieve tables, Mobius partial
// sums, polynomial patterns mod p, class selectors, the checkpointed series,
// smooth counting and the exact identities.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "frobsum/frobenius.hpp"
#include "frobsum/selfcheck.hpp"
#include "frobsum/series.hpp"
#include "frobsum/smooth.hpp"

namespace py = pybind11;
using namespace frobsum;

namespace {

py::object to_fraction(const Rational& r) {
    static py::object fraction = py::module_::import("fractions").attr("Fraction");
    return fraction(py::cast(numerator(r).str()), py::cast(denominator(r).str()));
}

Rational from_fraction(const py::object& obj) {
    const std::string num = py::str(obj.attr("numerator"));
    const std::string den = py::str(obj.attr("denominator"));
    return Rational(BigInt(num), BigInt(den));
}

std::vector<CycleType> patterns_from_lists(const std::vector<std::vector<int>>& parts) {
    std::vector<CycleType> out;
    out.reserve(parts.size());
    for (const auto& p : parts) out.emplace_back(p);
    return out;
}

RamifiedPolicy policy_from_string(const std::string& name) {
    if (name == "exclude") return RamifiedPolicy::Exclude;
    if (name == "root-count") return RamifiedPolicy::RootCount;
    throw std::invalid_argument("ramified policy must be 'exclude' or 'root-count'");
}

py::dict series_to_dict(const SumSeries& s) {
    py::dict d;
    d["selector"] = s.selector;
    d["target_density"] = to_fraction(s.density);
    d["exact_mode"] = s.exact_mode;
    d["skipped_ramified"] = s.skipped_ramified;
    py::list rows;
    for (const Checkpoint& cp : s.checkpoints) {
        py::dict row;
        row["x"] = cp.x;
        row["value"] = cp.value;
        row["target"] = cp.target;
        row["abs_error"] = cp.abs_error;
        row["skipped_ramified"] = cp.skipped_ramified;
        if (s.exact_mode) row["value_exact"] = to_fraction(cp.value_exact);
        rows.append(std::move(row));
    }
    d["checkpoints"] = std::move(rows);
    return d;
}

SeriesOptions make_options(bool exact, unsigned threads) {
    SeriesOptions o;
    o.mode = exact ? SumMode::ExactRational : SumMode::Compensated;
    o.threads = threads;
    return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "prime-factor class densities: sieves, Mobius sums, patterns mod p";

    py::register_exception<CapacityError>(m, "CapacityError");
    py::register_exception<RangeError>(m, "RangeError");

    py::class_<FactorSieve>(m, "FactorSieve")
        .def(py::init<std::uint64_t>(), py::arg("limit"))
        .def_property_readonly("limit", &FactorSieve::limit)
        .def("spf", &FactorSieve::spf, py::arg("n"))
        .def("pmax", &FactorSieve::pmax, py::arg("n"))
        .def("mobius", &FactorSieve::mobius, py::arg("n"))
        .def("is_prime", &FactorSieve::is_prime, py::arg("n"))
        .def("distinct_primes", &FactorSieve::distinct_primes, py::arg("n"))
        .def("mertens_weighted", &FactorSieve::mertens_weighted, py::arg("x"))
        .def("mertens_weighted_exact",
             [](const FactorSieve& s, std::uint64_t x) {
                 return to_fraction(s.mertens_weighted_exact(x));
             },
             py::arg("x"))
        .def("mertens_log_weighted", &FactorSieve::mertens_log_weighted, py::arg("x"))
        .def("save", [](const FactorSieve& s, const std::string& p) { s.save(p); },
             py::arg("path"))
        .def_static("load", [](const std::string& p) { return FactorSieve::load(p); },
                    py::arg("path"))
        .def_static("limit_ceiling", &FactorSieve::limit_ceiling);

    py::class_<IntPolynomial>(m, "IntPolynomial")
        .def(py::init([](const std::string& text) { return IntPolynomial::parse(text); }),
             py::arg("text"))
        .def_property_readonly("degree", &IntPolynomial::degree)
        .def_property_readonly("discriminant",
                               [](const IntPolynomial& f) {
                                   return py::cast(f.discriminant().str()).attr("__int__")();
                               })
        .def("__str__", &IntPolynomial::to_string)
        .def("__repr__",
             [](const IntPolynomial& f) { return "IntPolynomial(\"" + f.to_string() + "\")"; });

    m.def("classify_prime",
          [](const IntPolynomial& f, std::uint64_t p) -> py::object {
              const PrimeClass c = classify_prime(f, p);
              if (c.ramified) return py::none();
              return py::cast(c.pattern.parts());
          },
          py::arg("f"), py::arg("p"),
          "Factorization pattern of f mod p as a list of factor degrees, or None if p is "
          "ramified.");

    m.def("is_squarefree_mod", &is_squarefree_mod, py::arg("f"), py::arg("p"));

    m.def("symmetric_density",
          [](const std::vector<int>& parts, int n) {
              return to_fraction(symmetric_density(CycleType(parts), n));
          },
          py::arg("pattern"), py::arg("n"));

    m.def("euler_phi", &euler_phi, py::arg("k"));

    py::class_<ClassSelector>(m, "ClassSelector")
        .def_static("residue_set", &ClassSelector::residue_set, py::arg("k"), py::arg("residues"))
        .def_static("pattern_set",
                    [](const IntPolynomial& f, const std::vector<std::vector<int>>& patterns,
                       const std::string& ramified, const py::object& density) {
                        std::optional<Rational> override_density;
                        if (!density.is_none()) override_density = from_fraction(density);
                        return ClassSelector::pattern_set(f, patterns_from_lists(patterns),
                                                          policy_from_string(ramified),
                                                          override_density);
                    },
                    py::arg("f"), py::arg("patterns"), py::arg("ramified") = "exclude",
                    py::arg("density") = py::none())
        .def_static("explicit_predicate",
                    [](const std::function<bool(std::uint64_t)>& fn, const py::object& density) {
                        return ClassSelector::explicit_predicate(fn, from_fraction(density));
                    },
                    py::arg("membership"), py::arg("density"))
        .def_static("all_primes", &ClassSelector::all_primes)
        .def("contains", &ClassSelector::contains, py::arg("p"))
        .def_property_readonly("target_density",
                               [](const ClassSelector& s) { return to_fraction(s.target_density()); })
        .def_property_readonly("description",
                               [](const ClassSelector& s) { return s.describe(); });

    auto bind_series = [&m](const char* name, auto fn, const char* doc) {
        m.def(name,
              [fn](const FactorSieve& sieve, const ClassSelector& sel, std::uint64_t x,
                   const std::vector<std::uint64_t>& checkpoints, bool exact, unsigned threads) {
                  return series_to_dict(fn(sieve, sel, x, checkpoints, make_options(exact, threads)));
              },
              py::arg("sieve"), py::arg("selector"), py::arg("x"), py::arg("checkpoints"),
              py::arg("exact") = false, py::arg("threads") = 1, doc);
    };
    bind_series("min_mobius_sum",
                [](const FactorSieve& s, const ClassSelector& sel, std::uint64_t x,
                   std::span<const std::uint64_t> c, const SeriesOptions& o) {
                    return min_mobius_sum(s, sel, x, c, o);
                },
                "Signed Mobius sum over n with selected smallest prime factor.");
    bind_series("max_count",
                [](const FactorSieve& s, const ClassSelector& sel, std::uint64_t x,
                   std::span<const std::uint64_t> c, const SeriesOptions& o) {
                    return max_count(s, sel, x, c, o);
                },
                "Count of n with selected largest prime factor.");
    bind_series("max_harmonic",
                [](const FactorSieve& s, const ClassSelector& sel, std::uint64_t x,
                   std::span<const std::uint64_t> c, const SeriesOptions& o) {
                    return max_harmonic(s, sel, x, c, o);
                },
                "Harmonic sum over n with selected largest prime factor.");
    bind_series("prime_pi_series",
                [](const FactorSieve& s, const ClassSelector& sel, std::uint64_t x,
                   std::span<const std::uint64_t> c, const SeriesOptions& o) {
                    return prime_pi_series(s, sel, x, c, o);
                },
                "Prime counts per class with Li(X)-scaled targets.");

    m.def("prime_count_class", &prime_count_class, py::arg("sieve"), py::arg("selector"),
          py::arg("x"));
    m.def("li", &li, py::arg("x"));

    m.def("duality_check",
          [](const FactorSieve& sieve, std::uint64_t n, const py::dict& f) {
              std::map<std::uint64_t, Rational> fv;
              for (const auto& item : f)
                  fv[item.first.cast<std::uint64_t>()] = from_fraction(
                      py::reinterpret_borrow<py::object>(item.second));
              const DualityResult r = duality_check(sieve, n, fv);
              return py::make_tuple(to_fraction(r.lhs1), to_fraction(r.rhs1), to_fraction(r.lhs2),
                                    to_fraction(r.rhs2), r.ok);
          },
          py::arg("sieve"), py::arg("n"), py::arg("f"),
          "Both pmin/pmax duality identities for one n; returns (lhs1, rhs1, lhs2, rhs2, ok).");

    m.def("fit_convergence",
          [](const std::vector<std::uint64_t>& xs, const std::vector<double>& errors) {
              if (xs.size() != errors.size())
                  throw std::invalid_argument("xs and errors must have equal length");
              SumSeries s;
              for (std::size_t i = 0; i < xs.size(); ++i) {
                  Checkpoint cp;
                  cp.x = xs[i];
                  cp.abs_error = errors[i];
                  s.checkpoints.push_back(cp);
              }
              const ConvergenceFit f = fit_convergence(s);
              return py::make_tuple(f.exact, f.k_hat, f.quality);
          },
          py::arg("xs"), py::arg("errors"),
          "Fit log|error| against -(log X)^(1/3); returns (exact, k_hat, r_squared).");

    py::class_<DickmanTable>(m, "DickmanTable")
        .def(py::init<double, unsigned>(), py::arg("beta_max") = 64.0, py::arg("log2_step") = 10)
        .def("rho", &DickmanTable::rho, py::arg("beta"))
        .def_property_readonly("step", &DickmanTable::step)
        .def_property_readonly("beta_max", &DickmanTable::beta_max);

    m.def("rho_upper_bound", &rho_upper_bound, py::arg("beta"));
    m.def("psi_exact", &psi_exact, py::arg("sieve"), py::arg("x"), py::arg("y"));
    m.def("hildebrand_estimate", &hildebrand_estimate, py::arg("table"), py::arg("x"),
          py::arg("y"));

    m.def("tetris_identity",
          [](const FactorSieve& sieve, std::uint64_t x, std::uint64_t a) {
              const TetrisIdentity t = tetris_identity(sieve, x, a);
              return py::make_tuple(to_fraction(t.lhs), to_fraction(t.rhs), t.equal);
          },
          py::arg("sieve"), py::arg("x"), py::arg("a"),
          "Exact interval identity for smooth counts; returns (lhs, rhs, equal).");

    m.attr("__version__") = "0.1.0";
}
