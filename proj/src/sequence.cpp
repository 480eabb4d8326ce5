#include "rdlab/sequence.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace rdlab {

nlohmann::json Provenance::to_json() const {
  return {{"construction", construction}, {"params", params}, {"notes", notes}};
}

Provenance Provenance::from_json(const nlohmann::json& j) {
  Provenance p;
  p.construction = j.value("construction", std::string("unknown"));
  if (j.contains("params")) p.params = j.at("params");
  if (j.contains("notes")) p.notes = j.at("notes").get<std::vector<std::string>>();
  return p;
}

namespace {

class VectorSource final : public TermSource {
 public:
  explicit VectorSource(std::vector<BigInt> terms) : terms_(std::move(terms)) {}
  std::optional<BigInt> next() override {
    if (pos_ >= terms_.size()) return std::nullopt;
    return terms_[pos_++];
  }

 private:
  std::vector<BigInt> terms_;
  std::size_t pos_ = 0;
};

}  // namespace

void require_strictly_increasing(std::span<const BigInt> terms) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i] < 1) throw std::invalid_argument("sequence term " + std::to_string(i + 1) + " is < 1");
    if (i > 0 && terms[i] <= terms[i - 1]) {
      throw std::invalid_argument("sequence is not strictly increasing at index " + std::to_string(i + 1));
    }
  }
}

DenominatorSequence::DenominatorSequence(Provenance provenance, std::unique_ptr<TermSource> source)
    : provenance_(std::move(provenance)), source_(std::move(source)) {
  if (!source_) throw std::invalid_argument("DenominatorSequence: null source");
}

DenominatorSequence DenominatorSequence::from_terms(Provenance provenance, std::vector<BigInt> terms) {
  require_strictly_increasing(terms);
  return DenominatorSequence(std::move(provenance), std::make_unique<VectorSource>(std::move(terms)));
}

bool DenominatorSequence::extend_to(std::size_t count) {
  while (cache_.size() < count) {
    auto next = source_->next();
    if (!next) return false;
    if (*next < 1 || (!cache_.empty() && *next <= cache_.back())) {
      throw std::logic_error("term source produced a non-increasing term at index " +
                             std::to_string(cache_.size() + 1));
    }
    cache_.push_back(std::move(*next));
  }
  return true;
}

const BigInt& DenominatorSequence::term(std::size_t n) {
  if (n < 1) throw std::out_of_range("sequence index must be >= 1");
  if (!extend_to(n)) throw std::out_of_range("sequence exhausted before index " + std::to_string(n));
  return cache_[n - 1];
}

std::span<const BigInt> DenominatorSequence::prefix(std::size_t count) {
  if (!extend_to(count)) {
    throw std::out_of_range("sequence has only " + std::to_string(cache_.size()) + " terms, " +
                            std::to_string(count) + " requested");
  }
  return {cache_.data(), count};
}

Provenance DenominatorSequence::provenance() const {
  Provenance p = provenance_;
  for (auto& note : source_->notes()) p.notes.push_back(std::move(note));
  return p;
}

void write_sequence(std::ostream& out, const Provenance& provenance, std::span<const BigInt> terms) {
  nlohmann::json header = provenance.to_json();
  header["count"] = terms.size();
  out << "# " << header.dump() << '\n';
  for (const auto& t : terms) out << t.get_str(10) << '\n';
}

void write_sequence_file(const std::string& path, const Provenance& provenance, std::span<const BigInt> terms) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_sequence(out, provenance, terms);
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

DenominatorSequence read_sequence(std::istream& in) {
  std::string line;
  Provenance provenance{"imported", nlohmann::json::object(), {}};
  std::optional<std::size_t> declared;
  std::vector<BigInt> terms;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (first && line.rfind("#", 0) == 0) {
      auto header = nlohmann::json::parse(line.substr(1));
      provenance = Provenance::from_json(header);
      if (header.contains("count")) declared = header.at("count").get<std::size_t>();
      first = false;
      continue;
    }
    first = false;
    if (line.empty()) continue;
    terms.push_back(parse_bigint(line));
  }
  if (declared && *declared != terms.size()) {
    throw std::invalid_argument("sequence file declares " + std::to_string(*declared) + " terms but holds " +
                                std::to_string(terms.size()));
  }
  return DenominatorSequence::from_terms(std::move(provenance), std::move(terms));
}

DenominatorSequence read_sequence_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open sequence file '" + path + "'");
  return read_sequence(in);
}

}  // namespace rdlab
