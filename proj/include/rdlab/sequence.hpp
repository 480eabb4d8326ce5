#pragma once

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "rdlab/core.hpp"

namespace rdlab {

struct Provenance {
  std::string construction;
  nlohmann::json params = nlohmann::json::object();
  std::vector<std::string> notes;

  nlohmann::json to_json() const;
  static Provenance from_json(const nlohmann::json& j);
};

// Deterministic producer of q_1 < q_2 < ...; returns nullopt once exhausted.
class TermSource {
 public:
  virtual ~TermSource() = default;
  virtual std::optional<BigInt> next() = 0;
  // Notes appended while generating (e.g. a probabilistic primality fallback).
  virtual std::vector<std::string> notes() const { return {}; }
};

// A lazily generated, strictly increasing sequence of positive integers with
// a materialized prefix cache. Not thread safe while extending; copies of
// prefix() are immutable values.
class DenominatorSequence {
 public:
  DenominatorSequence(Provenance provenance, std::unique_ptr<TermSource> source);
  // A finite sequence from explicit terms (validated).
  static DenominatorSequence from_terms(Provenance provenance, std::vector<BigInt> terms);

  // 1-based access; extends the cache as needed.
  const BigInt& term(std::size_t n);
  // The first count terms; throws std::out_of_range if the source runs out.
  std::span<const BigInt> prefix(std::size_t count);
  std::size_t materialized() const { return cache_.size(); }

  Provenance provenance() const;

 private:
  bool extend_to(std::size_t count);

  Provenance provenance_;
  std::unique_ptr<TermSource> source_;
  std::vector<BigInt> cache_;
};

// Newline-delimited decimal terms preceded by a single "# {json}" header line
// holding the provenance and the term count.
void write_sequence(std::ostream& out, const Provenance& provenance, std::span<const BigInt> terms);
void write_sequence_file(const std::string& path, const Provenance& provenance, std::span<const BigInt> terms);
DenominatorSequence read_sequence(std::istream& in);
DenominatorSequence read_sequence_file(const std::string& path);

// Throws std::invalid_argument unless terms are >= 1 and strictly increasing.
void require_strictly_increasing(std::span<const BigInt> terms);

}  // namespace rdlab
