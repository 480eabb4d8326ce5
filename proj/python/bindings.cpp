// Python module _rdlab. Integers cross as Python int, rationals as
// fractions.Fraction (int and "a/b" strings are accepted on input), reports
// as plain dicts.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cli/context.hpp"
#include "rdlab/cli.hpp"
#include "rdlab/counting.hpp"
#include "rdlab/kernels.hpp"
#include "rdlab/measures.hpp"
#include "rdlab/separation.hpp"
#include "rdlab/sequences.hpp"
#include "rdlab/series.hpp"

namespace py = pybind11;
using namespace rdlab;

namespace {

BigInt to_bigint(const py::handle& v) {
  if (!py::isinstance<py::int_>(v)) throw py::type_error("expected int");
  return BigInt(py::str(v).cast<std::string>());
}

Rational to_rational(const py::handle& v) {
  if (py::isinstance<py::str>(v)) return parse_rational(v.cast<std::string>());
  if (py::isinstance<py::int_>(v)) return Rational(to_bigint(v));
  const py::object fraction = py::module_::import("fractions").attr("Fraction");
  if (!py::isinstance(v, fraction)) throw py::type_error("expected int, Fraction or str");
  return parse_rational(py::str(v).cast<std::string>());
}

py::int_ from_bigint(const BigInt& v) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(v.get_str().c_str(), nullptr, 10));
}

py::object from_rational(const Rational& v) {
  const py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(from_bigint(v.get_num()), from_bigint(v.get_den()));
}

std::vector<BigInt> to_terms(const py::iterable& items) {
  std::vector<BigInt> out;
  for (const auto& v : items) out.push_back(to_bigint(v));
  return out;
}

py::list from_terms(std::span<const BigInt> terms) {
  py::list out;
  for (const auto& t : terms) out.append(from_bigint(t));
  return out;
}

py::object from_json(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

KernelSign to_sign(const std::string& s) {
  if (s == "+" || s == "plus") return KernelSign::kPlus;
  if (s == "-" || s == "minus") return KernelSign::kMinus;
  throw std::invalid_argument("sign must be '+' or '-'");
}

KernelParams kernel_params(std::int64_t q, const py::handle& gamma, const py::handle& eps, const py::handle& psi) {
  KernelParams p;
  p.q = q;
  p.gamma = to_rational(gamma);
  p.epsilon = to_rational(eps);
  p.psi_q = to_rational(psi);
  p.validate();
  return p;
}

CountingInstance counting_instance(const py::iterable& terms, std::size_t N, const std::string& psi,
                                   const py::handle& gamma) {
  CountingInstance inst;
  inst.terms = to_terms(terms);
  inst.N = N;
  inst.psi = ApproxFunction::parse(psi);
  inst.gamma = Shift(to_rational(gamma));
  inst.validate();
  return inst;
}

py::tuple form_tuple(const std::optional<FormMinimum>& f) {
  if (!f) return py::tuple();
  return py::make_tuple(from_bigint(f->s), from_bigint(f->t), from_bigint(f->value));
}

}  // namespace

PYBIND11_MODULE(_rdlab, m) {
  m.attr("__version__") = RDLAB_VERSION;

  m.def("gen_seq", [](const std::string& spec, std::size_t n) {
    auto seq = cli::build_sequence(cli::parse_sequence_spec(spec), n);
    return from_terms(seq.prefix(n));
  }, py::arg("spec"), py::arg("n"), "First n terms of a sequence given as 'kind:key=value,...' or JSON.");

  m.def("min_form_value", [](const py::int_& a, const py::int_& b, const py::int_& S) {
    return form_tuple(min_form_value(to_bigint(a), to_bigint(b), to_bigint(S)));
  }, py::arg("q_m"), py::arg("q_n"), py::arg("S"), "(s, t, min |s q_m - t q_n|) over 1 <= s, t <= S, or ().");
  m.def("brute_min_form_value", [](const py::int_& a, const py::int_& b, const py::int_& S) {
    return form_tuple(brute_min_form_value(to_bigint(a), to_bigint(b), to_bigint(S)));
  }, py::arg("q_m"), py::arg("q_n"), py::arg("S"));
  m.def("certify_sequence", [](const py::iterable& terms, const py::object& alpha, std::size_t m0, std::size_t N,
                               bool exhaustive, std::optional<std::size_t> threshold, unsigned threads) {
    const auto t = to_terms(terms);
    const Rational a = to_rational(alpha);
    CertifyOptions o;
    o.exhaustive = exhaustive;
    o.threshold = threshold;
    o.threads = threads;
    SeparationReport rep;
    {
      py::gil_scoped_release release;
      rep = certify_sequence(t, a, m0, N, o);
    }
    return from_json(rep.to_json());
  }, py::arg("terms"), py::arg("alpha"), py::arg("m0") = 1, py::arg("N"), py::arg("exhaustive") = false,
     py::arg("threshold") = py::none(), py::arg("threads") = 1);

  m.def("psi_sum", [](const py::iterable& terms, std::size_t N, const std::string& psi) {
    return from_rational(psi_sum(counting_instance(terms, N, psi, py::int_(0))));
  }, py::arg("terms"), py::arg("N"), py::arg("psi"));
  m.def("gcd_error_term", [](const py::iterable& terms, std::size_t N, const std::string& psi, bool exact,
                             unsigned threads) -> py::object {
    const auto inst = counting_instance(terms, N, psi, py::int_(0));
    if (exact) return from_rational(gcd_error_term_exact(inst));
    double v;
    {
      py::gil_scoped_release release;
      v = gcd_error_term(inst, threads).value;
    }
    return py::float_(v);
  }, py::arg("terms"), py::arg("N"), py::arg("psi"), py::arg("exact") = false, py::arg("threads") = 1);
  m.def("counting_R", [](const py::iterable& terms, std::size_t N, const std::string& psi, const py::object& gamma,
                         const py::object& x) {
    const auto inst = counting_instance(terms, N, psi, gamma);
    return counting_R(DyadicPoint::floor_of(to_rational(x)), inst);
  }, py::arg("terms"), py::arg("N"), py::arg("psi"), py::arg("gamma"), py::arg("x"),
     "Number of n <= N with ||q_n x - gamma|| <= psi(q_n), x rounded down to 128 bits.");
  m.def("lebesgue_measure_E", [](const py::int_& q, const py::object& gamma, const py::object& psi) {
    return from_rational(lebesgue_measure_E(to_bigint(q), Shift(to_rational(gamma)), to_rational(psi)));
  }, py::arg("q"), py::arg("gamma"), py::arg("psi"));
  m.def("lebesgue_measure_E_intersection", [](const py::int_& q, const py::int_& r, const py::object& gamma,
                                              const py::object& psi, const py::object& psi2) {
    return from_json(lebesgue_measure_E_intersection(to_bigint(q), to_bigint(r), Shift(to_rational(gamma)),
                                                     to_rational(psi), to_rational(psi2))
                         .to_json());
  }, py::arg("q"), py::arg("q_prime"), py::arg("gamma"), py::arg("psi"), py::arg("psi_prime"));
  m.def("schmidt_experiment", [](const py::iterable& terms, std::size_t N, const std::string& psi,
                                 const py::object& gamma, std::size_t M, std::uint64_t seed, const std::string& sampler,
                                 const py::object& epsilon, double K, unsigned threads) {
    const auto inst = counting_instance(terms, N, psi, gamma);
    SchmidtOptions o;
    o.epsilon = to_rational(epsilon);
    o.K = K;
    o.threads = threads;
    const auto spec = MeasureSpec::parse(sampler);
    SchmidtReport rep;
    {
      py::gil_scoped_release release;
      rep = schmidt_experiment(inst, spec, M, seed, o);
    }
    py::dict out = from_json(rep.summary_json());
    py::list R;
    for (const auto& s : rep.samples) R.append(s.R);
    out["R"] = R;
    return out;
  }, py::arg("terms"), py::arg("N"), py::arg("psi"), py::arg("gamma"), py::arg("M"), py::arg("seed"),
     py::arg("sampler") = "lebesgue", py::arg("epsilon") = "1/10", py::arg("K") = 1.0, py::arg("threads") = 1);

  m.def("fourier_coeff", [](const std::string& sign, std::int64_t q, const py::object& gamma, const py::object& eps,
                            const py::object& psi, std::int64_t k) {
    return fourier_coeff(to_sign(sign), kernel_params(q, gamma, eps, psi), k);
  }, py::arg("sign"), py::arg("q"), py::arg("gamma"), py::arg("eps"), py::arg("psi"), py::arg("k"));
  m.def("W_direct", [](const std::string& sign, double x, std::int64_t q, const py::object& gamma,
                       const py::object& eps, const py::object& psi) {
    return W_direct(to_sign(sign), x, kernel_params(q, gamma, eps, psi));
  }, py::arg("sign"), py::arg("x"), py::arg("q"), py::arg("gamma"), py::arg("eps"), py::arg("psi"));
  m.def("W_exact", [](const std::string& sign, const py::object& x, std::int64_t q, const py::object& gamma,
                      const py::object& eps, const py::object& psi) {
    return from_rational(W_exact(to_sign(sign), to_rational(x), kernel_params(q, gamma, eps, psi)));
  }, py::arg("sign"), py::arg("x"), py::arg("q"), py::arg("gamma"), py::arg("eps"), py::arg("psi"));
  m.def("reconstruct", [](const std::string& sign, std::int64_t q, const py::object& gamma, const py::object& eps,
                          const py::object& psi, std::int64_t K, const py::object& x) {
    const auto r = reconstruct(to_sign(sign), kernel_params(q, gamma, eps, psi), K, to_rational(x));
    return py::make_tuple(r.value, r.tail_bound);
  }, py::arg("sign"), py::arg("q"), py::arg("gamma"), py::arg("eps"), py::arg("psi"), py::arg("K"), py::arg("x"),
     "(truncated Fourier value, tail bound).");
  m.def("verify_bounds", [](std::int64_t q, const py::object& gamma, const py::object& eps, const py::object& psi,
                            std::int64_t q2, const py::object& eps2, const py::object& psi2, std::int64_t truncation) {
    const auto a = kernel_params(q, gamma, eps, psi);
    const auto b = kernel_params(q2, gamma, eps2, psi2);
    BoundsReport rep;
    {
      py::gil_scoped_release release;
      rep = verify_bounds(a, b, truncation);
    }
    return from_json(rep.to_json());
  }, py::arg("q"), py::arg("gamma"), py::arg("eps"), py::arg("psi"), py::arg("q2"), py::arg("eps2"), py::arg("psi2"),
     py::arg("truncation") = 10000);

  m.def("mu_hat", [](const std::string& measure, const py::int_& t, std::size_t M, std::uint64_t seed,
                     unsigned threads) {
    const auto spec = MeasureSpec::parse(measure);
    const BigInt tb = to_bigint(t);
    if (M == 0) return exact_mu_hat(spec).eval(tb);
    py::gil_scoped_release release;
    const auto pts = sample(spec, M, seed, threads);
    return EmpiricalMeasure(pts).mu_hat(tb, threads).value;
  }, py::arg("measure"), py::arg("t"), py::arg("M") = 0, py::arg("seed") = 0, py::arg("threads") = 1,
     "Exact transform when M == 0, otherwise the empirical mean over M seeded samples.");
  m.def("cantor_mu_hat_exact", [](unsigned base, std::vector<unsigned> digits, const py::int_& t, unsigned depth) {
    return cantor_mu_hat_exact(base, digits, to_bigint(t), depth).value;
  }, py::arg("base"), py::arg("digits"), py::arg("t"), py::arg("depth"));

  m.def("tau_exponent", [](const py::object& g, const py::object& lambda) {
    const auto t = tau_exponent(to_rational(g), to_rational(lambda));
    return py::make_tuple(from_rational(t.tau), from_rational(t.clipped));
  }, py::arg("g"), py::arg("lam"), "(tau, min(tau, 1)).");
  m.def("tau_partial_sum_trend", [](const py::object& g, const py::object& lambda, double eta, unsigned decades) {
    const auto t = tau_partial_sum_trend(to_rational(g), to_rational(lambda), eta, decades);
    py::dict out;
    out["eta"] = t.eta;
    out["decade_increments"] = t.decade_increments;
    out["increment_ratios"] = t.increment_ratios;
    out["converging"] = t.converging;
    return out;
  }, py::arg("g"), py::arg("lam"), py::arg("eta"), py::arg("decades") = 6);

  m.def("ratio_series_check", [](const py::iterable& terms, const py::object& xi) {
    std::vector<Rational> a;
    for (const auto& v : terms) a.push_back(to_rational(v));
    const NonnegSeries s(std::move(a));
    return from_json(ratio_series_check(s, to_rational(xi), s.size()).to_json());
  }, py::arg("terms"), py::arg("xi"));
  m.def("log_bound_check", [](const py::iterable& terms) {
    std::vector<Rational> a;
    for (const auto& v : terms) a.push_back(to_rational(v));
    const NonnegSeries s(std::move(a));
    return from_json(log_bound_check(s, s.size()).to_json());
  }, py::arg("terms"));

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code;
    {
      py::gil_scoped_release release;
      code = cli::run(args, out, err);
    }
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"), "Runs a CLI subcommand in-process: (exit code, stdout, stderr).");
}
