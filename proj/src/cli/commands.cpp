#include <algorithm>
#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "cli/context.hpp"
#include "detail/stats.hpp"
#include "rdlab/approx.hpp"
#include "rdlab/cli.hpp"
#include "rdlab/counting.hpp"
#include "rdlab/kernels.hpp"
#include "rdlab/measures.hpp"
#include "rdlab/separation.hpp"
#include "rdlab/sequences.hpp"
#include "rdlab/series.hpp"

namespace rdlab::cli {

namespace {

using nlohmann::json;

const std::map<std::string, std::set<std::string>>& sequence_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"geometric", {"a"}},
      {"smooth", {"primes"}},
      {"pc", {"rho1", "rho2", "c", "n1", "seed"}},
      {"pc-prime", {"rho1", "rho2", "c", "n1"}},
      {"liouville", {"ratio"}},
      {"power", {"g"}},
      {"range", {"start"}},
  };
  return keys;
}

std::string spec_value(const json& spec, const std::string& key) {
  if (!spec.contains(key)) throw std::invalid_argument("sequence spec: missing '" + key + "'");
  const auto& v = spec[key];
  return v.is_string() ? v.get<std::string>() : v.dump();
}

std::vector<BigInt> parse_bigint_list(const std::string& text) {
  std::vector<BigInt> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(parse_bigint(item));
  }
  return out;
}

PCParams pc_params(const json& spec, bool seeded) {
  PCParams p;
  p.rho1 = parse_rational(spec_value(spec, "rho1"));
  p.rho2 = parse_rational(spec_value(spec, "rho2"));
  p.c = parse_rational(spec_value(spec, "c"));
  p.n1 = parse_bigint(spec_value(spec, "n1"));
  if (seeded) {
    const BigInt seed = parse_bigint(spec_value(spec, "seed"));
    if (seed < 0 || seed > BigInt("18446744073709551615")) throw std::invalid_argument("seed must fit in 64 bits");
    p.seed = static_cast<std::uint64_t>(to_u128(seed));
  }
  return p;
}

json canonical_spec(const json& spec) {
  json out = json::object();
  for (const auto& [key, value] : spec.items()) out[key] = value.is_string() ? value : json(value.dump());
  return out;
}

std::string digest_or_check(Context& ctx, const std::string& key, const std::string& path) {
  const std::string digest = sha256_file(path);
  const std::string name = key + "-sha256";
  if (ctx.has(name) && ctx.str(name) != digest) throw std::invalid_argument(path + ": contents differ from " + name);
  ctx.config[name] = digest;
  return digest;
}

ApproxFunction load_psi(Context& ctx) {
  const auto& v = ctx.config["psi"];
  ApproxFunction psi = v.is_object() ? ApproxFunction::from_json(v) : ApproxFunction::parse(ctx.str("psi"));
  ctx.config["psi"] = psi.to_json();
  return psi;
}

MeasureSpec load_measure(Context& ctx, const std::string& key) {
  const auto& v = ctx.config[key];
  MeasureSpec spec = v.is_object() ? MeasureSpec::from_json(v) : MeasureSpec::parse(ctx.str(key));
  spec.validate();
  ctx.config[key] = spec.to_json();
  return spec;
}

CountingInstance load_instance(Context& ctx, bool with_gamma) {
  CountingInstance inst;
  inst.N = ctx.size("N");
  inst.terms = load_terms(ctx, inst.N);
  inst.psi = load_psi(ctx);
  if (with_gamma) inst.gamma = Shift(ctx.rational("gamma"));
  inst.validate();
  return inst;
}

// Exact transform when --M is absent, else the empirical one (seed required).
MuHatSource load_source(Context& ctx, const MeasureSpec& spec) {
  if (!ctx.has("M")) return exact_mu_hat(spec);
  if (!ctx.has("seed")) throw std::invalid_argument("--seed is required with --M");
  const std::size_t M = ctx.size("M");
  if (M < 1) throw std::invalid_argument("--M must be >= 1");
  return empirical_source(spec, M, ctx.u64("seed"), ctx.threads);
}

KernelParams kernel_params(const Context& ctx, const std::string& suffix, const KernelParams* fallback) {
  auto pick = [&](const std::string& name) { return ctx.has(name + suffix) || !fallback; };
  KernelParams p = fallback ? *fallback : KernelParams{};
  if (pick("q")) {
    const BigInt q = ctx.bigint("q" + suffix);
    if (!q.fits_slong_p()) throw std::invalid_argument("--q" + suffix + " is too large");
    p.q = q.get_si();
  }
  if (pick("gamma")) p.gamma = ctx.rational("gamma" + suffix);
  if (pick("eps")) p.epsilon = ctx.rational("eps" + suffix);
  if (pick("psi")) p.psi_q = ctx.rational("psi" + suffix);
  p.validate();
  return p;
}

std::vector<std::string> point_row(std::size_t index, const std::vector<std::string>& rest) {
  std::vector<std::string> row = {std::to_string(index)};
  row.insert(row.end(), rest.begin(), rest.end());
  return row;
}

}  // namespace

json parse_sequence_spec(const std::string& text) {
  if (!text.empty() && text.front() == '{') return canonical_spec(json::parse(text));
  const auto colon = text.find(':');
  json spec = json::object();
  spec["kind"] = text.substr(0, colon);
  if (colon == std::string::npos) return spec;
  std::stringstream in(text.substr(colon + 1));
  std::string token;
  std::string last;
  while (std::getline(in, token, ',')) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) {
      if (last.empty()) throw std::invalid_argument("sequence spec: expected key=value, got '" + token + "'");
      spec[last] = spec[last].get<std::string>() + "," + token;
      continue;
    }
    last = token.substr(0, eq);
    spec[last] = token.substr(eq + 1);
  }
  return spec;
}

DenominatorSequence build_sequence(const json& spec, std::size_t count) {
  if (!spec.is_object() || !spec.contains("kind")) throw std::invalid_argument("sequence spec needs a kind");
  const std::string kind = spec_value(spec, "kind");
  const auto found = sequence_keys().find(kind);
  if (found == sequence_keys().end()) throw std::invalid_argument("unknown sequence kind '" + kind + "'");
  for (const auto& [key, value] : spec.items()) {
    if (key != "kind" && !found->second.count(key)) {
      throw std::invalid_argument("sequence kind " + kind + " takes no '" + key + "'");
    }
  }
  if (kind == "geometric") return gen_geometric(parse_bigint(spec_value(spec, "a")), count);
  if (kind == "smooth") return gen_smooth(parse_bigint_list(spec_value(spec, "primes")), count);
  if (kind == "pc") return gen_pc(pc_params(spec, true), count);
  if (kind == "pc-prime") return gen_pc_prime(pc_params(spec, false), count);
  if (kind == "liouville") return gen_liouville_growth(parse_rational(spec_value(spec, "ratio")), count);
  if (kind == "power") {
    const BigInt g = parse_bigint(spec_value(spec, "g"));
    if (g < 1 || g > 64) throw std::invalid_argument("power: g must lie in [1, 64]");
    return gen_power(static_cast<unsigned>(g.get_ui()), count);
  }
  const BigInt start = spec.contains("start") ? parse_bigint(spec_value(spec, "start")) : BigInt(1);
  return gen_range(start, count);
}

std::vector<BigInt> load_terms(Context& ctx, std::size_t count) {
  const bool inline_spec = ctx.has("seq");
  const bool file = ctx.has("seq-file");
  if (inline_spec == file) throw std::invalid_argument("give exactly one of --seq and --seq-file");
  if (inline_spec) {
    const auto& v = ctx.config["seq"];
    const json spec = v.is_object() ? canonical_spec(v) : parse_sequence_spec(ctx.str("seq"));
    ctx.config["seq"] = spec;
    auto seq = build_sequence(spec, count);
    const auto prefix = seq.prefix(count);
    return {prefix.begin(), prefix.end()};
  }
  const std::string path = ctx.str("seq-file");
  digest_or_check(ctx, "seq-file", path);
  auto seq = read_sequence_file(path);
  const auto prefix = seq.prefix(count);
  return {prefix.begin(), prefix.end()};
}

int cmd_gen_seq(Context& ctx) {
  const std::string kind = ctx.str("kind");
  const std::size_t n = ctx.size("n");
  if (n < 1) throw std::invalid_argument("--n must be >= 1");
  const auto found = sequence_keys().find(kind);
  if (found == sequence_keys().end()) throw std::invalid_argument("unknown sequence kind '" + kind + "'");
  json spec = {{"kind", kind}};
  for (const auto& [key, value] : ctx.config.items()) {
    if (key == "kind" || key == "n" || value.is_null()) continue;
    if (!found->second.count(key)) throw std::invalid_argument("--" + key + " does not apply to kind " + kind);
    spec[key] = ctx.str(key);
  }
  if (kind == "pc" && !spec.contains("seed")) throw std::invalid_argument("--seed is required for kind pc");
  auto seq = build_sequence(spec, n);
  const auto terms = seq.prefix(n);

  if (ctx.output) {
    write_sequence_file(*ctx.output, seq.provenance(), terms);
  } else {
    write_sequence(*ctx.out, seq.provenance(), terms);
  }

  bool ok = true;
  std::string what;
  if (kind == "pc" || kind == "pc-prime") {
    for (std::size_t m = 1; m <= n && ok; ++m) {
      if (terms[m - 1] <= BigInt(static_cast<unsigned long>(m))) {
        ok = false;
        what = "q_m <= m at m = " + std::to_string(m);
      }
    }
    if (ok) {
      const auto audit = growth_slope_audit(terms, pc_params(spec, kind == "pc"), n);
      ok = audit.pass;
      if (!ok) what = "growth slope " + format_double(audit.max_slope) + " exceeds " + format_double(audit.bound);
    }
  }
  return ctx.verdict(ok, what);
}

int cmd_check_separation(Context& ctx) {
  const std::size_t upto = ctx.size("upto");
  const auto terms = load_terms(ctx, upto);
  CertifyOptions options;
  options.threads = ctx.threads;
  options.exhaustive = ctx.flag("exhaustive");
  if (ctx.has("threshold")) options.threshold = ctx.size("threshold");
  const auto report = certify_sequence(terms, ctx.rational("alpha"), ctx.size("m0"), upto, options);
  ctx.write_json(report.to_json());
  return ctx.verdict(report.separated, "sequence is not separated on the scanned range");
}

int cmd_count(Context& ctx) {
  const auto inst = load_instance(ctx, true);
  const BigInt precision = ctx.bigint("precision");
  if (precision < 1 || precision > 4096) throw std::invalid_argument("--precision must lie in [1, 4096]");
  const unsigned P = static_cast<unsigned>(precision.get_ui());
  if (ctx.has("x") == ctx.has("x-hex")) throw std::invalid_argument("give exactly one of --x and --x-hex");
  DyadicPoint x;
  if (ctx.has("x")) {
    const Rational value = ctx.rational("x");
    if (value < 0 || value >= 1) throw std::invalid_argument("--x must lie in [0, 1)");
    x = DyadicPoint::floor_of(value, P);
  } else {
    x = DyadicPoint::from_hex(ctx.str("x-hex"), P);
  }
  const std::size_t R = counting_R(x, inst);
  const Rational Psi = psi_sum(inst);
  ctx.write_json({{"x_hex", x.hex()}, {"R", R}, {"Psi", to_string(Psi)}, {"two_Psi", to_double(2 * Psi)}});
  return kExitOk;
}

int cmd_gcd_term(Context& ctx) {
  const auto inst = load_instance(ctx, false);
  const Rational Psi = psi_sum(inst);
  json body;
  bool ok = true;
  std::string what;
  bool csv = false;

  if (ctx.has("checkpoints")) {
    std::vector<std::size_t> checkpoints;
    for (const auto& item : ctx.list("checkpoints")) checkpoints.push_back(parse_bigint(item).get_ui());
    if (!std::is_sorted(checkpoints.begin(), checkpoints.end()) || checkpoints.empty() || checkpoints.front() < 1 ||
        checkpoints.back() > inst.N) {
      throw std::invalid_argument("--checkpoints must be ascending within [1, N]");
    }
    const auto profile = gcd_error_profile(inst, checkpoints, ctx.threads);
    const auto psi = inst.psi_values();
    std::vector<std::vector<std::string>> rows;
    std::vector<std::pair<double, double>> points;
    Rational running = 0;
    std::size_t next = 0;
    for (std::size_t n = 1; n <= inst.N && next < checkpoints.size(); ++n) {
      running += psi[n - 1];
      while (next < checkpoints.size() && checkpoints[next] == n) {
        const double Psi_n = to_double(running);
        rows.push_back({std::to_string(n), format_double(Psi_n), format_double(profile[next].value),
                        format_double(profile[next].error_bound)});
        if (Psi_n > 0 && profile[next].value > 0) points.emplace_back(std::log(Psi_n), std::log(profile[next].value));
        ++next;
      }
    }
    ctx.write_csv({"N", "Psi", "E", "error_bound"}, rows);
    csv = !ctx.output;
    if (points.size() >= 2) {
      const double slope = detail::least_squares_slope(points);
      body["slope_logE_logPsi"] = slope;
      if (slope > ctx.real("max-slope")) {
        ok = false;
        what = "log E / log Psi slope " + format_double(slope) + " exceeds --max-slope";
      }
    } else {
      body["slope_logE_logPsi"] = nullptr;
    }
  }

  const auto E = gcd_error_term(inst, ctx.threads);
  body["N"] = inst.N;
  body["Psi"] = to_double(Psi);
  body["E"] = E.value;
  body["error_bound"] = E.error_bound;
  if (ctx.flag("exact")) {
    const Rational exact = gcd_error_term_exact(inst);
    const double exact_d = to_double(exact);
    const double rel = exact_d == 0 ? std::fabs(E.value) : std::fabs(E.value - exact_d) / std::fabs(exact_d);
    body["E_exact"] = to_string(exact);
    body["relative_difference"] = rel;
    if (rel > 1e-9) {
      ok = false;
      what = "float and exact E differ by " + format_double(rel) + " relative";
    }
  }
  ctx.write_json(body, csv);
  return ctx.verdict(ok, what);
}

int cmd_schmidt_experiment(Context& ctx) {
  if (!ctx.has("seed")) throw std::invalid_argument("--seed is required");
  const auto inst = load_instance(ctx, true);
  const auto sampler = load_measure(ctx, "sampler");
  SchmidtOptions options;
  options.epsilon = ctx.rational("epsilon");
  options.K = ctx.real("K");
  options.threads = ctx.threads;
  const auto report = schmidt_experiment(inst, sampler, ctx.size("M"), ctx.u64("seed"), options);

  std::vector<std::vector<std::string>> rows;
  rows.reserve(report.samples.size());
  for (const auto& s : report.samples) {
    rows.push_back(point_row(s.index, {s.x.hex(), std::to_string(s.R), format_double(s.ratio), format_double(s.deviation)}));
  }
  ctx.write_csv({"sample_index", "x_hex", "R", "ratio", "normalized_deviation"}, rows);
  ctx.write_json(report.summary_json(), !ctx.output);

  bool ok = report.summary.fraction_within >= ctx.real("min-fraction");
  std::string what = ok ? "" : "fraction within the band " + format_double(report.summary.fraction_within);
  if (ok && report.summary.z_score && std::fabs(*report.summary.z_score) > ctx.real("max-z")) {
    ok = false;
    what = "mean R is " + format_double(*report.summary.z_score) + " standard errors from the reference";
  }
  return ctx.verdict(ok, what);
}

int cmd_fourier_w(Context& ctx) {
  const KernelSign sign = parse_sign(ctx.str("sign"));
  const KernelParams p = kernel_params(ctx, "", nullptr);
  const BigInt kmax_big = ctx.bigint("kmax");
  if (kmax_big < 0 || kmax_big > 10'000'000) throw std::invalid_argument("--kmax must lie in [0, 10^7]");
  const std::int64_t kmax = kmax_big.get_si();
  std::vector<std::vector<std::string>> rows;
  bool ok = true;
  std::string what;
  const double w0 = to_double((sign == KernelSign::kPlus ? Rational(2 + p.epsilon) : Rational(2 - p.epsilon)) * p.psi_q);
  for (std::int64_t k = -kmax; k <= kmax; ++k) {
    const auto c = fourier_coeff(sign, p, k);
    rows.push_back({std::to_string(k), format_double(c.real()), format_double(c.imag())});
    if (k != 0 && k % p.q != 0 && c != std::complex<double>(0.0, 0.0)) {
      ok = false;
      what = "nonzero coefficient at k = " + std::to_string(k);
    }
    if (k == 0 && std::fabs(c.real() - w0) > 1e-12 * w0) {
      ok = false;
      what = "k = 0 coefficient differs from (2 +- eps) psi";
    }
  }
  ctx.write_csv({"k", "re", "im"}, rows);
  return ctx.verdict(ok, what);
}

int cmd_verify_bounds(Context& ctx) {
  const KernelParams p = kernel_params(ctx, "", nullptr);
  const KernelParams p2 = kernel_params(ctx, "2", &p);
  const BigInt truncation = ctx.bigint("truncation");
  if (truncation < 1 || truncation > 100'000'000) throw std::invalid_argument("--truncation must lie in [1, 10^8]");
  const auto report = verify_bounds(p, p2, truncation.get_si());
  std::vector<std::vector<std::string>> rows;
  for (const auto& c : report.checks) {
    rows.push_back({c.name, c.sign, format_double(c.lhs), format_double(c.rhs), format_double(c.margin),
                    c.pass ? "true" : "false"});
  }
  ctx.write_csv({"name", "sign", "lhs", "rhs", "margin", "pass"}, rows);
  ctx.write_json({{"pass", report.pass()}, {"min_margin", report.min_margin()}, {"truncation", report.truncation}},
                 !ctx.output);
  return ctx.verdict(report.pass(), "a bound fails; see the margin table");
}

int cmd_mu_hat(Context& ctx) {
  const MeasureSpec spec = load_measure(ctx, "measure");
  std::vector<BigInt> ts;
  if (ctx.has("t")) {
    for (const auto& item : ctx.list("t")) ts.push_back(parse_bigint(item));
  } else {
    const Rational ratio = ctx.rational("t-ratio");
    if (ratio <= 1) throw std::invalid_argument("--t-ratio must exceed 1");
    const BigInt t_max = ctx.bigint("t-max");
    std::set<BigInt> grid;
    for (Rational power = 1; floor(power) <= t_max; power *= ratio) grid.insert(floor(power));
    ts.assign(grid.begin(), grid.end());
  }
  if (ts.empty()) throw std::invalid_argument("no frequencies given");

  const bool empirical = ctx.has("M");
  std::vector<std::vector<std::string>> rows;
  bool ok = true;
  std::string what;
  if (empirical) {
    if (!ctx.has("seed")) throw std::invalid_argument("--seed is required with --M");
    const std::size_t M = ctx.size("M");
    if (M < 1) throw std::invalid_argument("--M must be >= 1");
    const auto samples = sample(spec, M, ctx.u64("seed"), ctx.threads);
    const EmpiricalMeasure measure(samples);
    const auto exact = exact_mu_hat(spec);
    const double tolerance = ctx.real("tolerance");
    for (const auto& t : ts) {
      const auto est = measure.mu_hat(t, ctx.threads);
      rows.push_back({t.get_str(), format_double(est.value.real()), format_double(est.value.imag()),
                      format_double(est.standard_error)});
      const double gap = std::abs(est.value - exact.eval(t));
      if (gap > tolerance * est.standard_error) {
        ok = false;
        what = "empirical transform at t = " + t.get_str() + " is " + format_double(gap / est.standard_error) +
               " standard errors from the exact value";
      }
    }
  } else {
    const auto exact = exact_mu_hat(spec);
    for (const auto& t : ts) {
      const auto v = exact.eval(t);
      rows.push_back({t.get_str(), format_double(v.real()), format_double(v.imag()), "0"});
    }
  }
  ctx.write_csv({"t", "re", "im", "stderr"}, rows);
  return ctx.verdict(ok, what);
}

int cmd_decay_audit(Context& ctx) {
  const MeasureSpec spec = load_measure(ctx, "measure");
  const auto source = load_source(ctx, spec);
  const auto& mv = ctx.config["model"];
  const DecayModel model = mv.is_object() ? DecayModel::parse(mv.dump()) : DecayModel::parse(ctx.str("model"));
  ctx.config["model"] = model.to_json();
  const std::size_t n_hi = ctx.size("n-hi");
  const auto terms = load_terms(ctx, n_hi);
  DecayProbe probe;
  probe.ratio = ctx.rational("t-ratio");
  probe.t_max = ctx.bigint("t-max");
  probe.multiples = static_cast<unsigned>(ctx.size("multiples"));
  const auto report =
      decay_audit(source, model, terms, ctx.rational("rho"), ctx.size("n-lo"), n_hi, probe, ctx.real("tolerance"));
  if (ctx.output) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& [n, c] : report.c_n) rows.push_back({"c_n", std::to_string(n), format_double(c)});
    for (const auto& [t, r] : report.ratios) rows.push_back({"ratio", t.get_str(), format_double(r)});
    ctx.write_csv({"series", "x", "value"}, rows);
  }
  ctx.write_json(report.to_json());
  return ctx.verdict(report.pass(), "balance condition not bounded on the audited range");
}

int cmd_criteria_audit(Context& ctx) {
  const MeasureSpec spec = load_measure(ctx, "measure");
  const auto source = load_source(ctx, spec);
  const std::size_t N = ctx.size("N");
  const auto terms = load_terms(ctx, N);
  const auto audit = convergence_criteria_audit(source, terms, ctx.size("K"), N);
  std::vector<std::vector<std::string>> rows;
  for (std::size_t n = 0; n < audit.max_sum.size(); ++n) {
    rows.push_back({std::to_string(n + 1), format_double(audit.max_sum[n]), format_double(audit.weighted_sum[n])});
  }
  ctx.write_csv({"n", "max_sum", "weighted_sum"}, rows);
  ctx.write_json({{"max_sum", audit.max_sum.back()}, {"weighted_sum", audit.weighted_sum.back()}}, !ctx.output);
  return kExitOk;
}

int cmd_tau(Context& ctx) {
  const Rational g = ctx.rational("g");
  const Rational lambda = ctx.rational("lambda");
  const auto tau = tau_exponent(g, lambda);
  const double t = to_double(tau.tau);
  std::vector<double> etas;
  if (ctx.has("eta")) {
    for (const auto& item : ctx.list("eta")) etas.push_back(to_double(parse_rational(item)));
  } else {
    if (t - 0.1 > 0) etas.push_back(t - 0.1);
    etas.push_back(t + 0.1);
  }
  const unsigned decades = static_cast<unsigned>(ctx.size("decades"));
  json trends = json::array();
  bool ok = true;
  std::string what;
  for (const double eta : etas) {
    const auto trend = tau_partial_sum_trend(g, lambda, eta, decades);
    trends.push_back({{"eta", eta},
                      {"decade_increments", trend.decade_increments},
                      {"increment_ratios", trend.increment_ratios},
                      {"converging", trend.converging}});
    const bool expected = eta > t;
    if (eta != t && trend.converging != expected) {
      ok = false;
      what = "partial sums at eta = " + format_double(eta) + (expected ? " do not settle" : " settle");
    }
  }
  ctx.write_json({{"tau", to_string(tau.tau)},
                  {"tau_value", t},
                  {"clipped", to_string(tau.clipped)},
                  {"trends", trends}});
  return ctx.verdict(ok, what);
}

int cmd_series_check(Context& ctx) {
  const std::string kind = ctx.str("kind");
  const std::string path = ctx.str("terms-file");
  digest_or_check(ctx, "terms-file", path);
  const auto series = NonnegSeries::read_file(path);
  const std::size_t N = ctx.has("N") ? ctx.size("N") : series.size();
  SeriesCheck check;
  std::vector<double> profile;
  if (kind == "ratio") {
    const Rational xi = ctx.rational("xi");
    check = ratio_series_check(series, xi, N);
    if (ctx.output) profile = ratio_series_profile(series, xi, N);
  } else if (kind == "log") {
    if (ctx.has("xi")) throw std::invalid_argument("--xi applies to --kind ratio only");
    check = log_bound_check(series, N);
    if (ctx.output) profile = log_bound_profile(series, N);
  } else {
    throw std::invalid_argument("--kind must be ratio or log");
  }
  if (ctx.output) {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t n = 0; n < profile.size(); ++n) rows.push_back({std::to_string(n + 1), format_double(profile[n])});
    ctx.write_csv({"n", "B"}, rows);
  }
  json body = check.to_json();
  body["N"] = N;
  ctx.write_json(body);
  return ctx.verdict(check.pass, "B_N exceeds the bound");
}

int cmd_manifest(Context& ctx) {
  const auto manifest = build_manifest(ctx.str("dir"), ctx.output);
  const std::string text = manifest.dump(2) + "\n";
  if (ctx.output) {
    std::ofstream file(*ctx.output, std::ios::binary);
    if (!file) throw std::invalid_argument("cannot open '" + *ctx.output + "' for writing");
    file << text;
  } else {
    *ctx.out << text;
  }
  return kExitOk;
}

}  // namespace rdlab::cli
