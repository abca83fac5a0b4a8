// Integration tests for the command-line tool; the binary path arrives in
// RADO_CLI (set by ctest).
#include <catch2/catch_amalgamated.hpp>

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "rado/cache.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
  const char* bin = std::getenv("RADO_CLI");
  REQUIRE(bin != nullptr);
  const std::string cmd = std::string(bin) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe)) r.output.append(buf, got);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("rado-cli-test-" + std::to_string(::getpid()) + "-" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  static int& counter() {
    static int c = 0;
    return c;
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

}  // namespace

TEST_CASE("compute prints R and the canonical form", "[cli]") {
  const auto r = run_cli("compute 1 1");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("R = 5") != std::string::npos);
  CHECK(r.output.find("a=1 b=1 v=2") != std::string::npos);

  const auto big = run_cli("compute 2 3");
  CHECK(big.exit_code == 0);
  CHECK(big.output.find("R = 53") != std::string::npos);
}

TEST_CASE("compute rejects invalid coefficient lists", "[cli]") {
  CHECK(run_cli("compute 1").exit_code == 1);
  CHECK(run_cli("compute 1 0").exit_code == 1);
  CHECK(run_cli("compute 1 -2 --").exit_code == 1);
}

TEST_CASE("certify reports and caches all three statuses", "[cli]") {
  TempDir dir;
  const std::string cache = "--cache " + dir.file("cache.jsonl");

  SECTION("search confirms desk-scale specs") {
    const auto r = run_cli("certify 1 1 --search " + cache);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("R=5 CONFIRMED (witness n=4 valid, UNSAT n=5)") != std::string::npos);

    // cached on re-run, still confirmed even without --search
    const auto again = run_cli("certify 1 1 " + cache);
    CHECK(again.exit_code == 0);
    CHECK(again.output.find("CONFIRMED") != std::string::npos);
    CHECK(again.output.find("[cached]") != std::string::npos);
  }

  SECTION("witness-only without --search") {
    const auto r = run_cli("certify 2 3 " + cache);
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("R=53 WITNESS-ONLY (witness n=52 valid)") != std::string::npos);
  }

  SECTION("strangled search is inconclusive, then never downgrades confirmed") {
    // (2,3) needs actual search nodes at n=53; a node cap of 1 strangles it
    const auto inc = run_cli("certify 2 3 --search --nodes 1 " + cache);
    CHECK(inc.exit_code == 3);
    CHECK(inc.output.find("INCONCLUSIVE") != std::string::npos);

    const auto confirmed = run_cli("certify 2 3 --search " + cache);
    CHECK(confirmed.exit_code == 0);
    CHECK(confirmed.output.find("R=53 CONFIRMED") != std::string::npos);

    // a later witness-only run must not downgrade the cache record
    const auto later = run_cli("certify 2 3 " + cache);
    CHECK(later.exit_code == 0);
    CHECK(later.output.find("CONFIRMED") != std::string::npos);

    const std::string stored = slurp(dir.file("cache.jsonl"));
    CHECK(stored.find("confirmed-at-n") != std::string::npos);
  }
}

TEST_CASE("env caps throttle the search", "[cli]") {
  TempDir dir;
  const char* bin = std::getenv("RADO_CLI");
  REQUIRE(bin != nullptr);
  const std::string cmd = "RADO_NODES=1 " + std::string(bin) + " certify 2 3 --search --cache " +
                          dir.file("cache.jsonl") + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  char buf[4096];
  while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe)) output.append(buf, got);
  const int status = pclose(pipe);
  CHECK(WEXITSTATUS(status) == 3);
  CHECK(output.find("INCONCLUSIVE") != std::string::npos);
}

TEST_CASE("table emits a deterministic TSV with agreeing cross-checks", "[cli]") {
  const auto r = run_cli("table --max 2 --m 2");
  CHECK(r.exit_code == 0);
  const std::string want =
      "coefficients\ta\tb\tv\tR\tspecial_case_name\tspecial_case_value\tstatus\n"
      "1,1\t1\t1\t2\t5\tBB\t5\tagree\n"
      "1,2\t1\t2\t3\t11\tJS\t11\tagree\n"
      "2,2\t2\t2\t4\t34\tAbbott\t34\tagree\n";
  CHECK(r.output == want);

  // byte-identical on a second run
  CHECK(run_cli("table --max 2 --m 2").output == want);

  const auto wider = run_cli("table --max 3 --m 2");
  CHECK(wider.output.find("1,3\t1\t3\t4\t19\tJS\t19\tagree\n") != std::string::npos);
  CHECK(wider.output.find("2,3\t2\t3\t5\t53\t-\t-\t-\n") != std::string::npos);
  CHECK(wider.output.find("3,3\t3\t3\t6\t111\tAbbott\t111\tagree\n") != std::string::npos);

  const auto m3 = run_cli("table --max 1 --m 3");
  CHECK(m3.output.find("1,1,1\t1\t2\t3\t11\tBB\t11\tagree\n") != std::string::npos);
}

TEST_CASE("cnf writes DIMACS files atomically", "[cli]") {
  TempDir dir;
  const std::string out = dir.file("out.cnf");
  const auto r = run_cli("cnf 1 1 5 " + out);
  CHECK(r.exit_code == 0);
  const std::string text = slurp(out);
  CHECK(text.find("p cnf 5 13") != std::string::npos);  // 2*6+1 clauses
  CHECK(text.find("c rado coeffs 1 1\n") == 0);
  CHECK_FALSE(fs::exists(out + ".tmp"));

  const auto bad = run_cli("cnf 1 1 5 " + dir.file("no/such/dir/out.cnf"));
  CHECK(bad.exit_code == 1);
  CHECK(bad.output.find("no/such/dir") != std::string::npos);
}

TEST_CASE("the cache file tolerates torn lines and never downgrades", "[cli]") {
  TempDir dir;
  const std::string path = dir.file("cache.jsonl");

  {
    rado::CacheFile cache(path);
    rado::CacheRecord rec;
    rec.coeffs = {2, 1};  // unsorted on purpose; the key sorts
    rec.canonical = rado::canonicalize(rado::EquationSpec{{1, 2}});
    rec.rado = 11;
    rec.status = "confirmed-at-n";
    rec.search_n = 11;
    rec.witness_n = 10;
    rec.updated = rado::now_iso8601_utc();
    cache.upsert(rec);
  }

  // simulate a crash mid-append plus an unrelated corrupt line
  {
    std::ofstream out(path, std::ios::app);
    out << "{\"coeffs\":[9,9],\"trunca";
  }

  rado::CacheFile reloaded(path);
  const auto hit = reloaded.lookup({1, 2});
  REQUIRE(hit.has_value());
  CHECK(hit->status == "confirmed-at-n");
  CHECK(hit->rado == 11);
  CHECK_FALSE(reloaded.lookup({9, 9}).has_value());

  // a weaker record merges up to the stored confirmed status
  rado::CacheRecord weaker;
  weaker.coeffs = {1, 2};
  weaker.canonical = rado::canonicalize(rado::EquationSpec{{1, 2}});
  weaker.rado = 11;
  weaker.status = "witness-only";
  weaker.witness_n = 10;
  weaker.updated = rado::now_iso8601_utc();
  const rado::CacheRecord& merged = reloaded.upsert(weaker);
  CHECK(merged.status == "confirmed-at-n");
  CHECK(merged.search_n == 11);

  // a record whose R disagrees with the closed form is dropped on load
  {
    std::ofstream out(path, std::ios::app);
    out << R"({"coeffs":[1,3],"canonical":{"a":1,"b":3,"v":4},"R":999,"status":"witness-only",)"
        << R"("search_n":0,"witness_n":18,"updated":"","stats":{}})" << "\n";
  }
  rado::CacheFile again(path);
  CHECK_FALSE(again.lookup({1, 3}).has_value());
  CHECK(again.lookup({1, 2}).has_value());
}

TEST_CASE("check-model accepts and rejects with the violating tuple", "[cli]") {
  TempDir dir;
  write(dir.file("good.txt"), "-1 2 3 -4\n");
  const auto ok = run_cli("check-model 1 1 4 " + dir.file("good.txt"));
  CHECK(ok.exit_code == 0);
  CHECK(ok.output.find("ACCEPTED") != std::string::npos);

  write(dir.file("bad.txt"), "-1 -2 -3 -4\n");
  const auto rejected = run_cli("check-model 1 1 4 " + dir.file("bad.txt"));
  CHECK(rejected.exit_code == 1);
  CHECK(rejected.output.find("REJECTED: (1,1)->2") != std::string::npos);

  write(dir.file("short.txt"), "-1 2 3\n");
  const auto malformed = run_cli("check-model 1 1 4 " + dir.file("short.txt"));
  CHECK(malformed.exit_code == 1);
  CHECK(malformed.output.find("missing variable") != std::string::npos);

  const auto absent = run_cli("check-model 1 1 4 " + dir.file("nope.txt"));
  CHECK(absent.exit_code == 1);
}
