#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "gwloc/gwloc.h"

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(GWLOC_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / ("gwloc_cli_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

std::string reemit(const std::string& text) {
  gwloc_graph* g = nullptr;
  REQUIRE(gwloc_graph_from_json(text.c_str(), &g) == GWLOC_OK);
  char* s = nullptr;
  REQUIRE(gwloc_graph_to_json(g, &s) == GWLOC_OK);
  std::string out = s;
  gwloc_string_free(s);
  gwloc_graph_free(g);
  return out;
}

}  // namespace

TEST_CASE("builders emit canonical files") {
  for (const char* spec : {"P1", "P2", "projective 3", "grassmannian 2 4", "local-line -1 -1", "local-line:1,-3",
                           "product:P1*P1"}) {
    const Run r = run(std::string("builders ") + spec);
    REQUIRE_MESSAGE(r.code == 0, spec);
    CHECK_MESSAGE(reemit(r.out) == r.out, spec);
  }
  const json gr = json::parse(run("builders grassmannian 2 4").out);
  CHECK(gr["vertices"].size() == 6);
  CHECK(gr["compact_edges"].size() == 12);
  CHECK(run("builders torus 3").code == 5);
}

TEST_CASE("validate") {
  const fs::path dir = scratch();
  write(dir / "gr.json", run("builders grassmannian 2 4").out);
  write(dir / "con.json", run("builders local-line -1 -1").out);
  CHECK(run("validate " + (dir / "gr.json").string()).code == 0);
  CHECK(run("validate " + (dir / "con.json").string()).code == 0);
  write(dir / "bad.json", "{\"m\": 2, \"r\": ");
  CHECK(run("validate " + (dir / "bad.json").string()).code == 2);
  // antipodal weights broken
  json p1 = json::parse(run("builders P1").out);
  p1["compact_edges"][0]["weights"]["1"] = {1, 1};
  write(dir / "broken.json", p1.dump());
  const Run broken = run("validate " + (dir / "broken.json").string());
  CHECK(broken.code == 2);
  CHECK(!broken.out.empty());
  fs::remove_all(dir);
}

TEST_CASE("compute") {
  const json p1 = json::parse(run("compute --builder P1 --beta 1").out);
  CHECK(p1["total"] == "1");
  CHECK(p1["nonequivariant_limit"] == "1");
  CHECK(p1["graphs"]["unmarked"] == 1);
  const json con = json::parse(run("compute --builder local-line:-1,-1 --beta 2").out);
  CHECK(con["total"] == "1/8");

  const fs::path dir = scratch();
  write(dir / "ins.json", R"([{"a": 0, "degree": 1, "restrictions": {"0": "u2 - u1"}}])");
  const json pt = json::parse(run("compute --builder P1 --beta 1 --insertions " + (dir / "ins.json").string()).out);
  CHECK(pt["total"] == "1");

  // memo is written and reused
  const std::string memo = (dir / "memo.txt").string();
  const Run first = run("compute --builder P1 --genus 1 --beta 1 --memo " + memo + " --insertions " +
                        (dir / "ins.json").string());
  CHECK(first.code == 0);
  CHECK(fs::exists(memo));
  const Run second = run("compute --builder P1 --genus 1 --beta 1 --memo " + memo + " --insertions " +
                         (dir / "ins.json").string());
  CHECK(second.out == first.out);
  write(memo, "hodgecache v0\n");
  CHECK(run("compute --builder P1 --beta 1 --memo " + memo).code == 3);

  write(dir / "bad.json", "not json");
  CHECK(run("compute --graph " + (dir / "bad.json").string() + " --beta 1").code == 2);
  CHECK(run("compute --builder P1 --beta 1,1").code == 2);
  CHECK(run("compute --builder P1 --beta 0").code == 2);
  CHECK(run("compute --builder nowhere --beta 1").code == 5);

  // inconsistent first Chern class data
  json p2 = json::parse(run("builders P2").out);
  p2["compact_edges"][0]["class"] = {2};
  write(dir / "p2.json", p2.dump());
  CHECK(run("compute --graph " + (dir / "p2.json").string() + " --beta 2").code == 3);
  fs::remove_all(dir);
}

TEST_CASE("graphs listing") {
  const Run d2 = run("graphs --builder P1 --beta 2");
  CHECK(d2.code == 0);
  CHECK(std::count(d2.out.begin(), d2.out.end(), '\n') == 3);
  CHECK(d2.out.find("aut=1 ") != std::string::npos);
  CHECK(run("graphs --builder P1 --genus 1 --beta 1").out.find('\n') != std::string::npos);
  const Run g1 = run("graphs --builder P1 --genus 1 --beta 1");
  CHECK(std::count(g1.out.begin(), g1.out.end(), '\n') == 2);
  const Run p2 = run("graphs --builder P2 --beta 1");
  CHECK(std::count(p2.out.begin(), p2.out.end(), '\n') == 3);
  const Run marked = run("graphs --builder P1 --beta 2 -n 1");
  CHECK(std::count(marked.out.begin(), marked.out.end(), '\n') == 6);
}

TEST_CASE("output is independent of worker count") {
  const std::string args = "compute --builder P2 --beta 2 --genus-cutoff 1";
  CHECK(run(args + " --workers 1").out == run(args + " --workers 3").out);
}
