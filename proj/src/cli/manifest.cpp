#include <openssl/evp.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "cli/context.hpp"

namespace rdlab::cli {

namespace {

namespace fs = std::filesystem;

std::string read_all(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// The config an artifact carries: a CSV "# {...}" line, the "config" member
// of a JSON report, or a sequence file header.
nlohmann::json embedded_config(const std::string& text) {
  if (text.rfind("# ", 0) == 0) {
    const auto end = text.find('\n');
    const auto header = nlohmann::json::parse(text.substr(2, end - 2), nullptr, false);
    if (header.is_discarded()) return nullptr;
    return header;
  }
  const auto doc = nlohmann::json::parse(text, nullptr, false);
  if (doc.is_object() && doc.contains("config")) return doc["config"];
  return nullptr;
}

}  // namespace

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < length; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

std::string sha256_file(const std::string& path) { return sha256_hex(read_all(path)); }

nlohmann::json build_manifest(const std::string& directory, const std::optional<std::string>& exclude) {
  std::error_code ec;
  if (!fs::is_directory(directory, ec)) throw std::invalid_argument("'" + directory + "' is not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(directory)) {
    if (!entry.is_regular_file()) continue;
    if (exclude && fs::equivalent(entry.path(), *exclude, ec)) continue;
    files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw std::invalid_argument("'" + directory + "' holds no artifacts");

  nlohmann::json artifacts = nlohmann::json::array();
  nlohmann::json configs = nlohmann::json::object();
  std::vector<std::string> seeds;
  for (const auto& path : files) {
    const std::string text = read_all(path.string());
    nlohmann::json row = {{"path", path.filename().string()}, {"bytes", text.size()}, {"sha256", sha256_hex(text)}};
    const auto config = embedded_config(text);
    if (config.is_object()) {
      const std::string hash = sha256_hex(config.dump());
      row["config_sha256"] = hash;
      configs[hash] = config;
      const nlohmann::json* holder = &config;
      if (config.contains("params")) holder = &config["params"];
      if (holder->contains("seed")) {
        const auto& s = (*holder)["seed"];
        const std::string seed = s.is_string() ? s.get<std::string>() : s.dump();
        if (std::find(seeds.begin(), seeds.end(), seed) == seeds.end()) seeds.push_back(seed);
      }
    } else {
      row["config_sha256"] = nullptr;
    }
    artifacts.push_back(row);
  }
  return {{"rdlab_version", RDLAB_VERSION},
          {"libraries", {{"gmp", gmp_version_string()}, {"mpfr", mpfr_version_string()}}},
          {"artifacts", artifacts},
          {"configs", configs},
          {"seeds", seeds}};
}

}  // namespace rdlab::cli
