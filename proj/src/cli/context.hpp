#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "rdlab/core.hpp"
#include "rdlab/sequence.hpp"

namespace rdlab::cli {

// The resolved configuration of one run plus where its artifacts go.
// Precedence: option defaults < --config file < explicit flags.
struct Context {
  std::string subcommand;
  nlohmann::json config = nlohmann::json::object();  // option name -> value
  unsigned threads = 1;
  bool check = false;
  std::optional<std::string> output;  // primary artifact (CSV or sequence file)
  std::optional<std::string> report;  // JSON report
  std::ostream* out = nullptr;
  std::ostream* err = nullptr;

  bool has(const std::string& name) const;
  std::string str(const std::string& name) const;  // throws when missing
  Rational rational(const std::string& name) const;
  BigInt bigint(const std::string& name) const;
  std::size_t size(const std::string& name) const;
  std::uint64_t u64(const std::string& name) const;
  double real(const std::string& name) const;
  bool flag(const std::string& name) const;
  std::vector<std::string> list(const std::string& name) const;  // comma separated

  // The config as echoed into artifacts: worker count and paths excluded, so
  // artifacts compare byte for byte across them.
  nlohmann::json echo() const;

  // Writes "# {config}", the header row and the rows to --output or stdout.
  void write_csv(const std::vector<std::string>& columns, const std::vector<std::vector<std::string>>& rows) const;
  // Writes body + {"config": echo()} to --report, else stdout (stderr when
  // stdout already carries a CSV).
  void write_json(nlohmann::json body, bool csv_on_stdout = false) const;
  // Returns the exit code for a --check verdict and reports failures.
  int verdict(bool ok, const std::string& what) const;
};

std::string format_double(double value);

// Sequence from --seq (JSON object or "kind:key=value,...") or --seq-file,
// holding at least `count` terms. Records the file digest in the config.
std::vector<BigInt> load_terms(Context& ctx, std::size_t count);
// Builds a sequence from a constructor spec {"kind": ..., parameters}.
DenominatorSequence build_sequence(const nlohmann::json& spec, std::size_t count);
nlohmann::json parse_sequence_spec(const std::string& text);

int cmd_gen_seq(Context& ctx);
int cmd_check_separation(Context& ctx);
int cmd_count(Context& ctx);
int cmd_gcd_term(Context& ctx);
int cmd_schmidt_experiment(Context& ctx);
int cmd_fourier_w(Context& ctx);
int cmd_verify_bounds(Context& ctx);
int cmd_mu_hat(Context& ctx);
int cmd_decay_audit(Context& ctx);
int cmd_criteria_audit(Context& ctx);
int cmd_tau(Context& ctx);
int cmd_series_check(Context& ctx);
int cmd_manifest(Context& ctx);

// Hex SHA-256 of a byte string / of a file's contents.
std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::string& path);
// Digest, size and embedded config of every file in a run directory.
nlohmann::json build_manifest(const std::string& directory, const std::optional<std::string>& exclude);

}  // namespace rdlab::cli
