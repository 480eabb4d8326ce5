#include "rdlab/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"

#include "cli/context.hpp"
#include "rdlab/parallel.hpp"

namespace rdlab::cli {

namespace {

struct OptionDef {
  std::string name;
  std::optional<std::string> default_value;
  std::string help;
  bool is_flag = false;
};

struct CommandDef {
  std::string name;
  std::string help;
  std::vector<OptionDef> options;
  int (*run)(Context&);
};

OptionDef opt(std::string name, std::string help) { return {std::move(name), std::nullopt, std::move(help), false}; }
OptionDef opt(std::string name, std::string default_value, std::string help) {
  return {std::move(name), std::move(default_value), std::move(help), false};
}
OptionDef flag(std::string name, std::string help) { return {std::move(name), std::nullopt, std::move(help), true}; }

std::vector<OptionDef> sequence_options() {
  return {opt("seq", "sequence constructor: JSON or kind:key=value,..."), opt("seq-file", "sequence file")};
}

std::vector<OptionDef> concat(std::vector<OptionDef> a, const std::vector<OptionDef>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::vector<OptionDef> measure_options() {
  return {opt("measure", "lebesgue", "measure: lebesgue, poly:D, cantor:B:digits, cantor_smoothed:B:digits:SIGMA, points:X@W,..."),
          opt("M", "sample count; empirical transform when given"), opt("seed", "RNG seed")};
}

const std::vector<CommandDef>& commands() {
  static const std::vector<CommandDef> table = {
      {"gen-seq", "generate a denominator sequence",
       {opt("kind", "geometric | smooth | pc | pc-prime | liouville | power | range"), opt("n", "number of terms"),
        opt("a", "geometric base"), opt("primes", "smooth: comma separated primes"), opt("rho1", "block exponent rho1"),
        opt("rho2", "block exponent rho2"), opt("c", "block bracket constant"), opt("n1", "first block leader"),
        opt("seed", "pc: RNG seed"), opt("ratio", "liouville: rho / c2"), opt("g", "power: exponent"),
        opt("start", "range: first term")},
       cmd_gen_seq},
      {"check-separation", "certify alpha-separation of a sequence prefix",
       concat(sequence_options(), {opt("alpha", "separation exponent p/r"), opt("m0", "1", "first row"),
                                   opt("upto", "last index N"), flag("exhaustive", "collect every violation"),
                                   opt("threshold", "mark violations with m below this")}),
       cmd_check_separation},
      {"count", "evaluate R(x, N) at one point",
       concat(sequence_options(),
              {opt("N", "prefix length"), opt("psi", "approximation function"), opt("gamma", "0", "shift"),
               opt("x", "point as a rational in [0, 1)"), opt("x-hex", "point as a hex numerator"),
               opt("precision", "128", "dyadic precision in bits")}),
       cmd_count},
      {"gcd-term", "evaluate the gcd error term E(N)",
       concat(sequence_options(),
              {opt("N", "prefix length"), opt("psi", "approximation function"), flag("exact", "also evaluate exactly"),
               opt("checkpoints", "comma separated N' for a profile"),
               opt("max-slope", "1.05", "--check: bound on the log E / log Psi slope")}),
       cmd_gcd_term},
      {"schmidt-experiment", "Monte Carlo distribution of R(x, N) / 2 Psi(N)",
       concat(sequence_options(),
              {opt("N", "prefix length"), opt("psi", "approximation function"), opt("gamma", "0", "shift"),
               opt("M", "sample count"), opt("seed", "RNG seed"), opt("sampler", "lebesgue", "sampling measure"),
               opt("epsilon", "1/10", "log exponent slack"), opt("K", "1", "band multiplier"),
               opt("min-fraction", "0.9", "--check: required fraction inside the band"),
               opt("max-z", "3", "--check: bound on |z| of the mean")}),
       cmd_schmidt_experiment},
      {"fourier-w", "Fourier coefficients of the W kernels",
       {opt("sign", "+", "+ or -"), opt("q", "modulus"), opt("gamma", "0", "shift"), opt("eps", "epsilon"),
        opt("psi", "psi(q)"), opt("kmax", "largest |k|")},
       cmd_fourier_w},
      {"verify-bounds", "margin table for the kernel coefficient bounds",
       {opt("q", "modulus"), opt("gamma", "0", "shift"), opt("eps", "epsilon"), opt("psi", "psi(q)"),
        opt("q2", "second modulus (default q)"), opt("gamma2", "second shift (default gamma)"),
        opt("eps2", "second epsilon (default eps)"), opt("psi2", "second psi (default psi)"),
        opt("truncation", "10000", "terms summed before the analytic tail")},
       cmd_verify_bounds},
      {"mu-hat", "Fourier transform of a measure",
       concat(measure_options(), {opt("t", "comma separated frequencies"), opt("t-ratio", "2", "grid ratio"),
                                  opt("t-max", "grid limit when --t is absent"),
                                  opt("tolerance", "5", "--check: allowed |empirical - exact| in standard errors")}),
       cmd_mu_hat},
      {"decay-audit", "balance-condition audit of a decay model",
       concat(concat(measure_options(), sequence_options()),
              {opt("model", "power:c:a | logpow:c:A | expsqrtlog:c2"), opt("rho", "exponent rho"),
               opt("n-lo", "1", "first index"), opt("n-hi", "last index"), opt("t-ratio", "2", "probe grid ratio"),
               opt("t-max", "1000000", "probe grid limit"), opt("multiples", "3", "probe k q_n for k <= this"),
               opt("tolerance", "0.05", "slope tolerance")}),
       cmd_decay_audit},
      {"criteria-audit", "partial sums of |mu_hat(k q_n)|",
       concat(concat(measure_options(), sequence_options()),
              {opt("K", "3", "largest multiplier"), opt("N", "prefix length")}),
       cmd_criteria_audit},
      {"tau", "critical exponent for q_n ~ n^g, psi(q) = q^-lambda",
       {opt("g", "1", "growth exponent"), opt("lambda", "decay exponent"),
        opt("eta", "comma separated exponents (default tau -+ 0.1)"), opt("decades", "6", "partial sums to 10^decades")},
       cmd_tau},
      {"series-check", "partial-sum bounds for a nonnegative series",
       {opt("kind", "ratio | log"), opt("xi", "ratio: exponent xi > 0"), opt("terms-file", "one rational per line"),
        opt("N", "number of terms (default all)")},
       cmd_series_check},
      {"manifest", "digest a run directory", {opt("dir", "run directory")}, cmd_manifest},
  };
  return table;
}

nlohmann::json normalize_scalar(const nlohmann::json& value) {
  if (value.is_number()) return value.dump();
  return value;
}

nlohmann::json read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("config '" + path + "': " + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config '" + path + "' must hold a JSON object");
  return j;
}

}  // namespace

bool Context::has(const std::string& name) const { return config.contains(name) && !config[name].is_null(); }

std::string Context::str(const std::string& name) const {
  if (!has(name)) throw std::invalid_argument("missing --" + name);
  const auto& v = config[name];
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

Rational Context::rational(const std::string& name) const {
  try {
    return parse_rational(str(name));
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument("--" + name + ": " + e.what());
  }
}

BigInt Context::bigint(const std::string& name) const {
  try {
    return parse_bigint(str(name));
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument("--" + name + ": " + e.what());
  }
}

std::size_t Context::size(const std::string& name) const {
  const BigInt v = bigint(name);
  if (v < 0 || !v.fits_ulong_p()) throw std::invalid_argument("--" + name + " must be a nonnegative integer");
  return v.get_ui();
}

std::uint64_t Context::u64(const std::string& name) const {
  const BigInt v = bigint(name);
  if (v < 0 || v > BigInt("18446744073709551615")) throw std::invalid_argument("--" + name + " must fit in 64 bits");
  return static_cast<std::uint64_t>(to_u128(v));
}

double Context::real(const std::string& name) const { return to_double(rational(name)); }

bool Context::flag(const std::string& name) const {
  if (!has(name)) return false;
  const auto& v = config[name];
  if (v.is_boolean()) return v.get<bool>();
  const std::string s = str(name);
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw std::invalid_argument("--" + name + " must be true or false");
}

std::vector<std::string> Context::list(const std::string& name) const {
  std::vector<std::string> items;
  if (config[name].is_array()) {
    for (const auto& v : config[name]) items.push_back(v.is_string() ? v.get<std::string>() : v.dump());
    return items;
  }
  std::stringstream in(str(name));
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

nlohmann::json Context::echo() const {
  nlohmann::json j = config;
  j["subcommand"] = subcommand;
  return j;
}

std::string format_double(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

void Context::write_csv(const std::vector<std::string>& columns,
                        const std::vector<std::vector<std::string>>& rows) const {
  std::ofstream file;
  std::ostream* sink = out;
  if (output) {
    file.open(*output, std::ios::binary);
    if (!file) throw std::invalid_argument("cannot open '" + *output + "' for writing");
    sink = &file;
  }
  std::string text = "# " + echo().dump() + "\n";
  for (std::size_t i = 0; i < columns.size(); ++i) text += (i ? "," : "") + columns[i];
  text += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) text += (i ? "," : "") + row[i];
    text += '\n';
  }
  *sink << text;
  if (!*sink) throw std::runtime_error("write failed");
}

void Context::write_json(nlohmann::json body, bool csv_on_stdout) const {
  body["config"] = echo();
  const std::string text = body.dump(2) + "\n";
  if (report) {
    std::ofstream file(*report, std::ios::binary);
    if (!file) throw std::invalid_argument("cannot open '" + *report + "' for writing");
    file << text;
    return;
  }
  *(csv_on_stdout ? err : out) << text;
}

int Context::verdict(bool ok, const std::string& what) const {
  if (!check || ok) return kExitOk;
  *err << "check failed: " << what << '\n';
  return kExitCheckFailed;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"rdlab: experiments on approximation by rationals with restricted denominators"};
  app.set_version_flag("--version", std::string(RDLAB_VERSION));
  app.require_subcommand(1);

  struct Bound {
    const CommandDef* def;
    CLI::App* app;
    std::map<std::string, std::string> values;
    std::map<std::string, CLI::Option*> handles;
    std::string config_path;
    std::string output;
    std::string report;
    unsigned threads = 0;
    CLI::Option* threads_opt = nullptr;
    bool check = false;
  };
  std::vector<std::unique_ptr<Bound>> bound;
  for (const auto& def : commands()) {
    auto b = std::make_unique<Bound>();
    b->def = &def;
    b->app = app.add_subcommand(def.name, def.help);
    for (const auto& o : def.options) {
      std::string help = o.help;
      if (o.default_value) help += " [" + *o.default_value + "]";
      if (o.is_flag) {
        b->handles[o.name] = b->app->add_flag("--" + o.name, help);
      } else {
        b->handles[o.name] = b->app->add_option("--" + o.name, b->values[o.name], help);
      }
    }
    b->app->add_option("--config", b->config_path, "JSON config; flags override it");
    b->app->add_option("-o,--output", b->output, "primary artifact path");
    b->app->add_option("--report", b->report, "JSON report path");
    b->threads_opt = b->app->add_option("--threads", b->threads, "worker count [RDLAB_THREADS]");
    b->app->add_flag("--check", b->check, "exit 3 when an embedded assertion fails");
    bound.push_back(std::move(b));
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  for (auto& b : bound) {
    if (!b->app->parsed()) continue;
    Context ctx;
    ctx.subcommand = b->def->name;
    ctx.out = &out;
    ctx.err = &err;
    try {
      std::map<std::string, const OptionDef*> known;
      for (const auto& o : b->def->options) {
        known[o.name] = &o;
        if (o.default_value) ctx.config[o.name] = *o.default_value;
      }
      std::optional<unsigned> threads;
      if (!b->config_path.empty()) {
        const auto file = read_config_file(b->config_path);
        for (const auto& [key, value] : file.items()) {
          if (key == "subcommand") {
            if (value != b->def->name) throw std::invalid_argument("config is for subcommand " + value.dump());
          } else if (key == "threads") {
            threads = value.get<unsigned>();
          } else if (key == "output") {
            ctx.output = value.get<std::string>();
          } else if (key == "report") {
            ctx.report = value.get<std::string>();
          } else if (key == "check") {
            ctx.check = value.get<bool>();
          } else if (known.count(key) || key.ends_with("-sha256")) {
            ctx.config[key] = normalize_scalar(value);
          } else {
            throw std::invalid_argument("unknown config key '" + key + "' for " + b->def->name);
          }
        }
      }
      for (const auto& o : b->def->options) {
        if (b->handles[o.name]->count() == 0) continue;
        ctx.config[o.name] = o.is_flag ? nlohmann::json(true) : nlohmann::json(b->values[o.name]);
      }
      if (b->threads_opt->count() > 0) threads = b->threads;
      if (!b->output.empty()) ctx.output = b->output;
      if (!b->report.empty()) ctx.report = b->report;
      if (b->check) ctx.check = true;
      ctx.threads = std::max(1u, threads.value_or(default_thread_count()));
      return b->def->run(ctx);
    } catch (const std::invalid_argument& e) {
      err << "error: " << e.what() << '\n';
      return kExitInvalid;
    } catch (const std::out_of_range& e) {
      err << "error: " << e.what() << '\n';
      return kExitInvalid;
    } catch (const nlohmann::json::exception& e) {
      err << "error: " << e.what() << '\n';
      return kExitInvalid;
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return 1;
    }
  }
  return kExitInvalid;
}

}  // namespace rdlab::cli
