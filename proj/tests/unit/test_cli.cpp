#include "doctest.h"
#include "helpers.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "rdlab/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = rdlab::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path fresh_dir(const std::string& name) {
  const auto dir = testing::scratch(name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

const std::string kPcPrime = "pc-prime:rho1=3,rho2=19,c=2,n1=5";

}  // namespace

TEST_CASE("gen-seq writes the requested number of terms") {
  const auto path = testing::scratch("geo40.seq").string();
  const auto r = run({"gen-seq", "--kind", "geometric", "--a", "2", "--n", "40", "-o", path});
  CHECK(r.code == 0);
  const std::string text = slurp(path);
  CHECK(std::count(text.begin(), text.end(), '\n') == 41);  // header + 40 terms
  const auto sep = run({"check-separation", "--seq-file", path, "--alpha", "1/2", "--m0", "1", "--upto", "40"});
  CHECK(sep.code == 0);
  const auto j = nlohmann::json::parse(sep.out);
  CHECK(j["separated_up_to"] == 40);
  CHECK(j["config"]["seq-file-sha256"].get<std::string>().size() == 64);
}

TEST_CASE("validation errors exit with 2") {
  const auto bad = testing::scratch("bad.json");
  std::ofstream(bad) << R"({"seq": "range:start=2", "N": 3, "psi": "constant:0", "M": 10, "seed": 1})";
  const auto r = run({"schmidt-experiment", "--config", bad.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("Psi(N) = 0") != std::string::npos);

  CHECK(run({"no-such-command"}).code == 2);
  CHECK(run({"tau"}).code == 2);  // --lambda missing
  CHECK(run({"schmidt-experiment", "--seq", "range:start=2", "--N", "3", "--psi", "constant:1/5", "--M", "4"}).code == 2);

  const auto unknown = testing::scratch("unknown.json");
  std::ofstream(unknown) << R"({"lambda": 1, "colour": "blue"})";
  CHECK(run({"tau", "--config", unknown.string()}).code == 2);
  const auto other = testing::scratch("other.json");
  std::ofstream(other) << R"({"subcommand": "count", "lambda": 1})";
  CHECK(run({"tau", "--config", other.string()}).code == 2);
}

TEST_CASE("flags override the config file") {
  const auto cfg = testing::scratch("tau.json");
  std::ofstream(cfg) << R"({"lambda": 3, "g": 1, "decades": 3})";
  const auto r = run({"tau", "--config", cfg.string(), "--lambda", "1"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["tau"] == "1/1");
  CHECK(j["config"]["lambda"] == "1");
  CHECK(j["config"]["decades"] == "3");
}

TEST_CASE("--check turns failed assertions into exit 3") {
  CHECK(run({"check-separation", "--seq", "range:start=2", "--alpha", "1/2", "--upto", "21", "--check"}).code == 3);
  CHECK(run({"check-separation", "--seq", "geometric:a=2", "--alpha", "1/2", "--upto", "30", "--check"}).code == 0);
  CHECK(run({"series-check", "--kind", "log", "--terms-file", "/nonexistent/terms.txt"}).code == 2);
}

TEST_CASE("sequence file digests are enforced when echoed back") {
  const auto path = testing::scratch("geo10.seq").string();
  REQUIRE(run({"gen-seq", "--kind", "geometric", "--a", "3", "--n", "10", "-o", path}).code == 0);
  const auto cfg = testing::scratch("digest.json");
  std::ofstream(cfg) << R"({"seq-file": ")" << path << R"(", "seq-file-sha256": "00", "alpha": "1/2", "upto": 10})";
  CHECK(run({"check-separation", "--config", cfg.string()}).code == 2);
}

TEST_CASE("stochastic CSVs are byte-identical across worker counts") {
  std::vector<std::string> outputs;
  for (const char* threads : {"1", "4", "16"}) {
    const auto dir = fresh_dir(std::string("threads_") + threads);
    const auto csv = (dir / "samples.csv").string();
    const auto r = run({"schmidt-experiment", "--seq", kPcPrime, "--N", "300", "--psi", "constant:1/5", "--gamma",
                        "37/100", "--M", "40", "--seed", "2024", "--threads", threads, "-o", csv, "--report",
                        (dir / "summary.json").string()});
    REQUIRE(r.code == 0);
    outputs.push_back(slurp(csv));
    const auto mu = (dir / "mu.csv").string();
    REQUIRE(run({"mu-hat", "--measure", "cantor:3:0,2", "--M", "3000", "--seed", "5", "--t", "1,3,10,81", "--threads",
                 threads, "-o", mu})
                .code == 0);
    outputs.push_back(slurp(mu));
  }
  CHECK(outputs[0] == outputs[2]);
  CHECK(outputs[0] == outputs[4]);
  CHECK(outputs[1] == outputs[3]);
  CHECK(outputs[1] == outputs[5]);
  CHECK(outputs[0].find("sample_index,x_hex,R,ratio,normalized_deviation\n") != std::string::npos);
}

TEST_CASE("manifests: same seed same digests, new seed new digests") {
  auto experiment = [](const fs::path& dir, const std::string& seed) {
    return run({"schmidt-experiment", "--seq", kPcPrime, "--N", "200", "--psi", "constant:1/5", "--M", "20",
                "--seed", seed, "-o", (dir / "samples.csv").string(), "--report", (dir / "summary.json").string()});
  };
  const auto a = fresh_dir("run_a"), b = fresh_dir("run_b"), c = fresh_dir("run_c");
  REQUIRE(experiment(a, "1").code == 0);
  REQUIRE(experiment(b, "1").code == 0);
  REQUIRE(experiment(c, "2").code == 0);
  auto manifest = [](const fs::path& dir) {
    const auto r = run({"manifest", "--dir", dir.string()});
    REQUIRE(r.code == 0);
    return nlohmann::json::parse(r.out);
  };
  const auto ma = manifest(a), mb = manifest(b), mc = manifest(c);
  CHECK(ma["artifacts"] == mb["artifacts"]);
  CHECK(ma["artifacts"][0]["sha256"] != mc["artifacts"][0]["sha256"]);
  CHECK(ma["seeds"] == nlohmann::json::array({"1"}));
  CHECK(mc["seeds"] == nlohmann::json::array({"2"}));
  const auto header = [](const fs::path& p) {
    const std::string text = slurp(p);
    const auto first = text.find('\n') + 1;
    return text.substr(first, text.find('\n', first) - first);
  };
  CHECK(header(a / "samples.csv") == header(c / "samples.csv"));
  CHECK(run({"manifest", "--dir", fresh_dir("empty").string()}).code == 2);
}

TEST_CASE("kernel subcommands") {
  const auto r = run({"fourier-w", "--sign", "+", "--q", "5", "--gamma", "1/3", "--eps", "1/2", "--psi", "1/10",
                      "--kmax", "12", "--check"});
  CHECK(r.code == 0);
  CHECK(r.out.find("k,re,im\n") != std::string::npos);
  CHECK(r.out.find("\n0,0.25,0\n") != std::string::npos);  // (2 + 1/2) / 10
  const auto v = run({"verify-bounds", "--q", "11", "--eps", "2/7", "--psi", "3/11", "--truncation", "500", "--check"});
  CHECK(v.code == 0);
}
