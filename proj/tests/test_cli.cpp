#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

const fs::path& root() {
  static const fs::path r = [] {
    const fs::path p = fs::temp_directory_path() / "hypcells_cli_test";
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
  }();
  return r;
}

Run run(const std::string& args) {
  const std::string cmd = std::string(HYPCELLS_CLI) + " " + args + " --workspace " + (root() / "ws").string() +
                          " 2>" + (root() / "stderr.txt").string();
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string w237() { return std::string(HYPCELLS_CONFIG_DIR) + "/w237.json"; }

}  // namespace

TEST_CASE("usage errors exit 2") {
  CHECK(run("").code == 2);
  CHECK(run("cells").code == 2);
  CHECK(run("ball --group /nonexistent.json").code == 2);
  CHECK(run("cells conjectural --group " + w237() + " --k seven").code == 2);
  CHECK(slurp(root() / "stderr.txt").find("\"error\":\"BadConfig\"") != std::string::npos);
}

TEST_CASE("warm cache is idempotent") {
  const Run a = run("cells conjectural --group " + w237() + " --radius 8");
  REQUIRE(a.code == 0);
  const std::string c0 = slurp(root() / "ws" / "w237" / "fsa" / "C_0.fsa");
  const Run b = run("cells conjectural --group " + w237() + " --radius 8");
  CHECK(b.code == 0);
  CHECK(a.out == b.out);
  const std::string log = slurp(root() / "stderr.txt");
  CHECK(log.find("computed") == std::string::npos);
  CHECK(log.find("cached reports/conjectural.r8.json") != std::string::npos);
  CHECK(slurp(root() / "ws" / "w237" / "fsa" / "C_0.fsa") == c0);
  CHECK(fs::exists(root() / "ws" / "w237" / "meta.json"));
}

TEST_CASE("render is byte-identical across runs") {
  const fs::path one = root() / "one.svg", two = root() / "two.svg";
  REQUIRE(run("render --group " + w237() + " --radius 6 --coloring twosided --out " + one.string()).code == 0);
  fs::remove_all(root() / "ws" / "w237" / "render");
  REQUIRE(run("render --group " + w237() + " --radius 6 --coloring twosided --out " + two.string()).code == 0);
  CHECK(slurp(root() / "stderr.txt").find("computed render/") != std::string::npos);
  CHECK(slurp(one) == slurp(two));
  CHECK(slurp(one).rfind("<?xml", 0) == 0);
}

TEST_CASE("fault injection") {
  REQUIRE(run("verify oracles --group " + w237() + " --radius 6").code == 0);
  const fs::path fsa = root() / "ws" / "w237" / "fsa";

  // Swapping two valid cell automata is a planted disagreement.
  const std::string zero = slurp(fsa / "C_0.fsa"), one = slurp(fsa / "C_1.fsa");
  std::ofstream(fsa / "C_0.fsa") << one;
  std::ofstream(fsa / "C_1.fsa") << zero;
  fs::remove(root() / "ws" / "w237" / "reports" / "verify.oracles.r6.json");
  CHECK(run("verify oracles --group " + w237() + " --radius 6").code == 1);

  std::ofstream(fsa / "C_0.fsa") << "states x\n";
  fs::remove(root() / "ws" / "w237" / "reports" / "verify.oracles.r6.json");
  CHECK(run("verify oracles --group " + w237() + " --radius 6").code == 2);
  const std::string err = slurp(root() / "stderr.txt");
  CHECK(err.find("CorruptCache") != std::string::npos);
  CHECK(err.find("C_0.fsa") != std::string::npos);

  std::ofstream(root() / "ws" / "w237" / "meta.json") << "[";
  CHECK(run("group info --group " + w237()).code == 2);
  fs::remove_all(root() / "ws" / "w237");
  CHECK(run("verify oracles --group " + w237() + " --radius 6").code == 0);
}

TEST_CASE("fsa subcommands") {
  REQUIRE(run("fsa build --group " + w237()).code == 0);
  const fs::path fsa = root() / "ws" / "w237" / "fsa";
  const Run stats = run("fsa stats " + (fsa / "C_0.fsa").string() + " --radius 10");
  CHECK(stats.code == 0);
  CHECK(stats.out.find("\"states\"") != std::string::npos);
  CHECK(run("fsa equiv " + (fsa / "C_0.fsa").string() + " " + (fsa / "C_0.fsa").string()).code == 0);
  CHECK(run("fsa equiv " + (fsa / "C_0.fsa").string() + " " + (fsa / "C_1.fsa").string()).code == 1);
}
