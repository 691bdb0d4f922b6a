#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#ifndef QUASIREG_CLI_PATH
#error "QUASIREG_CLI_PATH must point at the command-line binary"
#endif

namespace {

namespace fs = std::filesystem;

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(QUASIREG_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  std::FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch() {
  const fs::path d = fs::temp_directory_path() / "quasireg_cli_test";
  fs::create_directories(d);
  return d;
}

std::string write(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("cli: pinwheel solve") {
  const Run bad = run("pinwheel solve --v 2,3,6");
  CHECK(bad.code == 0);
  CHECK(bad.out == "UNSCHEDULABLE\n");
  const Run ok = run("pinwheel solve --v 2,2");
  CHECK(ok.code == 0);
  CHECK((ok.out == "1 2\n" || ok.out == "2 1\n"));
}

TEST_CASE("cli: pinwheel check") {
  const std::string good = write("good.txt", "1 2 1 3 1 2 1 0\n");
  CHECK(run("pinwheel check --v 2,4,8 --periodic --schedule " + good).out == "OK\n");
  const std::string bad = write("bad.txt", "1 2 1 2 1 3\n");
  const Run r = run("pinwheel check --v 2,3,6 --periodic --schedule " + bad);
  CHECK(r.code == 3);
  CHECK(r.out == "VIOLATION task 2 window 5\n");
}

TEST_CASE("cli: gen-2qr on halves alternates") {
  const std::string d = write("halves.json", R"({"symbols": ["a", "b"], "probs": ["1/2", "1/2"]})");
  const fs::path stats = scratch() / "halves_stats.json";
  const Run r = run("gen-2qr --check --dist " + d + " --n 1000 --stats " + stats.string());
  CHECK(r.code == 0);
  REQUIRE(r.out.size() == 1001);
  for (std::size_t i = 0; i + 2 < r.out.size(); ++i) CHECK(r.out[i] != r.out[i + 1]);
  const auto j = nlohmann::json::parse(slurp(stats));
  CHECK(j["command"] == "gen-2qr");
  CHECK(j["observed_qr"]["a"] == "1");
  CHECK(j["length"] == 1000);
}

TEST_CASE("cli: analyze and determinism") {
  const std::string d = write("third.csv", "a,1/2\nb,1/3\nc,1/6\n");
  const Run first = run("gen-lowdisc --dist " + d + " --n 600");
  const Run second = run("gen-lowdisc --dist " + d + " --n 600");
  CHECK(first.code == 0);
  CHECK(first.out == second.out);
  const std::string seq = write("third_seq.txt", first.out);
  const Run a = run("analyze --dist " + d + " --seq " + seq);
  CHECK(a.code == 0);
  const auto j = nlohmann::json::parse(a.out);
  CHECK(j["length"] == 600);
  CHECK(j.contains("discrepancy_max"));
  CHECK(j.contains("density"));
}

TEST_CASE("cli: exit codes") {
  CHECK(run("no-such-command").code == 1);
  CHECK(run("gen-2qr --n 5").code == 1);
  const std::string few = write("few.json", R"({"symbols": ["a", "b"], "probs": ["1/2", "1/2"]})");
  CHECK(run("gen-epsqr --dist " + few + " --n 10").code == 2);
  CHECK(run("pinwheel gen --v 2,2 --eps 0.5 --n 10").code == 2);
}
