// End-to-end tests for the cruxkit binary: exit codes, artifact formats, the
// JSON envelope against the shipped schema, config-file merging, and rerun
// determinism.  The binary path arrives via the CRUXKIT_BIN compile
// definition; the schema path via SCHEMA_PATH.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <json.hpp>

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct CmdResult {
  int exit_code = -1;
  std::string output;
};

// Runs a shell command and captures the requested stream(s).
CmdResult run(const std::string& cmd, const std::string& redirect = " 2>&1") {
  CmdResult result;
  FILE* pipe = popen((cmd + redirect).c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) result.output.append(buf, got);
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string bin() { return std::string(CRUXKIT_BIN); }

// Scratch directory shared by the suite; fixed name keeps reruns idempotent.
fs::path scratch() {
  fs::path dir = fs::temp_directory_path() / "cruxkit_cli_tests";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  REQUIRE(out.good());
  out << text;
}

// Path to a K_6 edge list, generated once through the binary itself.
std::string k6_path() {
  static std::string path = [] {
    fs::path p = scratch() / "k6.el";
    CmdResult r = run(bin() + " gen --kind complete --n 6 --out " + p.string());
    REQUIRE(r.exit_code == 0);
    return p.string();
  }();
  return path;
}

int count_payload_lines(const std::string& text) {
  int count = 0;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#') ++count;
  return count;
}

}  // namespace

TEST_CASE("gen emits the hypercube edge list") {
  CmdResult r = run(bin() + " gen --kind hypercube --m 3");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("# n=8\n") != std::string::npos);
  CHECK(count_payload_lines(r.output) == 12);
}

TEST_CASE("gen validates its parameters") {
  CHECK(run(bin() + " gen --kind hypercube").exit_code == 2);     // missing --m
  CHECK(run(bin() + " gen --kind hypercube --m 0").exit_code == 2);
  CHECK(run(bin() + " gen --kind nosuch --m 3").exit_code == 2);
}

TEST_CASE("crux rejects alpha outside the open unit interval") {
  CmdResult r = run(bin() + " crux --alpha 1.5 --input " + k6_path(),
                    " 2>&1 1>/dev/null");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("alpha must lie in (0,1)") != std::string::npos);
  CHECK(run(bin() + " crux --alpha 0 --input " + k6_path()).exit_code == 2);
}

TEST_CASE("crux envelope matches the shipped schema") {
  CmdResult r = run(bin() + " crux --alpha 1/2 --input " + k6_path(), " 2>/dev/null");
  REQUIRE(r.exit_code == 0);
  json doc = json::parse(r.output);

  // Envelope contract: exactly the five schema keys.
  json schema = json::parse(slurp(SCHEMA_PATH));
  std::vector<std::string> required = schema.at("required");
  CHECK(required.size() == doc.size());
  for (const std::string& key : required) CHECK(doc.contains(key));
  CHECK(schema.at("additionalProperties") == json(false));

  CHECK(doc.at("command") == "crux");
  CHECK(doc.at("version") == "0.1.0");
  CHECK(doc.at("wall_ms").is_number());
  CHECK(doc.at("config").at("alpha") == "1/2");
  CHECK(doc.at("result").at("upper") == 4);
  CHECK(doc.at("result").at("lower") == 4);
}

TEST_CASE("unknown flags and missing subcommands exit 2") {
  CHECK(run(bin() + " crux --alpha 0.5 --input " + k6_path() + " --bogus").exit_code ==
        2);
  CHECK(run(bin()).exit_code == 2);
  CHECK(run(bin() + " nosuchcommand").exit_code == 2);
}

TEST_CASE("percolate validates p") {
  CHECK(run(bin() + " percolate --kind complete --n 6 --p 1.5").exit_code == 2);
  CmdResult ok = run(bin() + " percolate --kind complete --n 6 --p 1 --seed 3");
  CHECK(ok.exit_code == 0);
  CHECK(count_payload_lines(ok.output) == 15);
}

TEST_CASE("selftest passes and is byte stable") {
  CmdResult a = run(bin() + " selftest");
  CmdResult b = run(bin() + " selftest");
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
  CHECK(a.output.rfind("check,status,detail\n", 0) == 0);
  CHECK(a.output.find("FAIL") == std::string::npos);
}

TEST_CASE("config file supplies defaults and flags win") {
  fs::path cfg = scratch() / "crux.ini";
  spit(cfg, "[crux]\nalpha=0.9\ninput=" + k6_path() + "\n");

  CmdResult from_file = run(bin() + " crux --config " + cfg.string(), " 2>/dev/null");
  REQUIRE(from_file.exit_code == 0);
  CHECK(json::parse(from_file.output).at("result").at("upper") == 6);  // alpha 0.9

  CmdResult overridden =
      run(bin() + " crux --config " + cfg.string() + " --alpha 0.5", " 2>/dev/null");
  REQUIRE(overridden.exit_code == 0);
  CHECK(json::parse(overridden.output).at("result").at("upper") == 4);  // flag wins
}

TEST_CASE("out flag writes the same artifact as stdout") {
  fs::path out = scratch() / "q3.el";
  CmdResult direct = run(bin() + " gen --kind hypercube --m 3");
  CmdResult to_file = run(bin() + " gen --kind hypercube --m 3 --out " + out.string());
  CHECK(to_file.exit_code == 0);
  CHECK(to_file.output.empty());
  CHECK(slurp(out) == direct.output);
}

TEST_CASE("threads resolve from the environment when unset") {
  CmdResult r = run("CRUXKIT_THREADS=3 " + bin() +
                    " experiment hypercube --m 4 --trials 2 --eps 0.5");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("# threads=3\n") != std::string::npos);
  // An explicit flag beats the environment.
  CmdResult flag = run("CRUXKIT_THREADS=3 " + bin() +
                       " experiment hypercube --m 4 --trials 2 --eps 0.5 --threads 1");
  CHECK(flag.output.find("# threads=1\n") != std::string::npos);
}

TEST_CASE("cycle subcommand finds a Hamilton cycle of K_6") {
  CmdResult r = run(bin() + " cycle --method posa --input " + k6_path() + " --t 5",
                    " 2>/dev/null");
  REQUIRE(r.exit_code == 0);
  json doc = json::parse(r.output);
  CHECK(doc.at("result").at("length") == 6);
  CHECK(doc.at("result").at("meets_target") == json(true));
}

TEST_CASE("separate subcommand reports the path decomposition") {
  fs::path p15 = scratch() / "p15.el";
  REQUIRE(run(bin() + " gen --kind path --n 15 --out " + p15.string()).exit_code == 0);
  CmdResult r = run(bin() + " separate --s 3 --t 4 --input " + p15.string(),
                    " 2>/dev/null");
  REQUIRE(r.exit_code == 0);
  json doc = json::parse(r.output);
  CHECK(doc.at("result").at("separable") == json(true));
  CHECK(doc.at("result").at("decomposition").at("aggregate_size") == 5);
}

TEST_CASE("experiment csv reruns are identical apart from the timing column") {
  std::string cmd = bin() + " experiment c4free --q 2,3 --c 1.5 --trials 2 --seed 11";
  CmdResult a = run(cmd);
  CmdResult b = run(cmd);
  REQUIRE(a.exit_code == 0);
  auto strip_timing = [](const std::string& text) {
    std::ostringstream out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line[0] != '#') {
        auto cut = line.rfind(',');
        if (cut != std::string::npos) line.erase(cut);
      }
      out << line << "\n";
    }
    return out.str();
  };
  CHECK(strip_timing(a.output) == strip_timing(b.output));
  CHECK(a.output.find("trial_id,q,k,c,p,") != std::string::npos);
}

TEST_CASE("multi m experiment keeps one column header") {
  CmdResult r = run(bin() + " experiment hypercube --m 4..5 --trials 2 --eps 0.5");
  REQUIRE(r.exit_code == 0);
  std::size_t first = r.output.find("trial_id,m,p,");
  REQUIRE(first != std::string::npos);
  CHECK(r.output.find("trial_id,m,p,", first + 1) == std::string::npos);
  CHECK(count_payload_lines(r.output) == 1 + 4);  // header + 2 trials x 2 values of m
}

TEST_CASE("expander verify on the hypercube via files") {
  fs::path q4 = scratch() / "q4.el";
  REQUIRE(run(bin() + " gen --kind hypercube --m 4 --out " + q4.string()).exit_code ==
          0);
  CmdResult r = run(bin() + " expander verify --epsilon 0.02 --t 4 --input " +
                        q4.string(),
                    " 2>/dev/null");
  REQUIRE(r.exit_code == 0);
  json doc = json::parse(r.output);
  CHECK(doc.at("result").at("verification").at("status") == "exhaustive");
}

TEST_CASE("reading a missing input file exits 2") {
  CHECK(run(bin() + " crux --alpha 0.5 --input /nonexistent/file.el").exit_code == 2);
}
