#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "arrangekit/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = arrangekit::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& body) {
  const fs::path dir = fs::temp_directory_path() / "arrangekit_cli_tests";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream(p) << body;
  return p.string();
}

const char* kThree = R"j({"species":[{"name":"A"}],"composition":{"A":3},
  "catalog":{"(A_2)":[-1.0,-0.1],"(A_3)":[-2.5]}})j";

}  // namespace

TEST_CASE("parse") {
  auto r = run({"parse", "(B,A)(C)"});
  CHECK(r.code == 0);
  CHECK(r.out == "(A,B)(C)\nA:1 B:1 C:1\n");
  r = run({"parse", "(Rb_2)(Rb)_3"});
  CHECK(r.out == "(Rb_2)(Rb)_3\nRb:5\n");
  r = run({"parse", "(A"});
  CHECK(r.code == 2);
  CHECK(r.err.find("offset 2") != std::string::npos);
  CHECK(r.err.find("\n  (A\n    ^") != std::string::npos);
  CHECK(r.out.empty());
  r = run({"parse", "(Rb)_inf"});
  CHECK(r.code == 2);
  r = run({"parse", "--display", "(Rb_2)(Rb)_inf"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("(Rb_2)(Rb)_inf\n", 0) == 0);
  r = run({"parse", "(A)(B)", "--format", "json"});
  CHECK(r.out == "{\n  \"canonical\": \"(A)(B)\",\n  \"composition\": {\n    \"A\": 1,\n    \"B\": 1\n  },\n"
                 "  \"N\": 2,\n  \"clusters\": 2\n}\n");
}

TEST_CASE("parse against declared species") {
  const auto cfg = write_temp("species.json", R"j({"species":[{"name":"A"}]})j");
  CHECK(run({"parse", "(A)_2", "--config", cfg}).code == 0);
  const auto r = run({"parse", "(A)(B)", "--config", cfg});
  CHECK(r.code == 2);
  CHECK(r.err.find("B") != std::string::npos);
}

TEST_CASE("enumerate") {
  const auto cfg = write_temp("three.json", kThree);
  auto r = run({"enumerate", cfg});
  CHECK(r.code == 0);
  CHECK(r.out == "# M = 3\n(A_3)\n(A_2)(A)\n(A)_3\n");
  r = run({"enumerate", "--count-only", cfg});
  CHECK(r.out == "3\n");
  r = run({"--cap", "2", "enumerate", cfg});
  CHECK(r.code == 3);
  CHECK(r.out.empty());
  r = run({"enumerate", "--config", cfg, "--format", "json"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"M\": \"3\"") != std::string::npos);
}

TEST_CASE("count-only agrees with listing") {
  const auto cfg = write_temp("mixed.json", R"j({"species":[{"name":"A"},{"name":"B"},{"name":"X","identical":false}],
    "composition":{"A":3,"B":2,"X":1},"binding":{"mode":"allowlist","allowlist":["(A,B)","(A_2)","(A,X)","(A_2,B,X)"]}})j");
  const auto listing = run({"enumerate", cfg});
  const auto count = run({"enumerate", cfg, "--count-only"});
  const auto lines = std::count(listing.out.begin(), listing.out.end(), '\n') - 1;
  CHECK(count.out == std::to_string(lines) + "\n");
  CHECK(listing.out.rfind("# M = " + std::to_string(lines) + "\n", 0) == 0);
}

TEST_CASE("counts") {
  CHECK(run({"counts", "--bell", "0"}).out == "1\n");
  CHECK(run({"counts", "--partitions", "0"}).out == "1\n");
  CHECK(run({"counts", "--partitions", "100"}).out == "190569292\n");
  CHECK(run({"counts", "--table", "3"}).out == "N  p(N)  B(N)\n1     1     1\n2     2     2\n3     3     5\n");
  CHECK(run({"counts", "--bell", "5000"}).code == 3);
  CHECK(run({"counts"}).code == 2);
  CHECK(run({"counts", "--bell", "3", "--partitions", "3"}).code == 2);
  CHECK(run({"counts", "--bell", "-1"}).code == 2);
}

TEST_CASE("asymptotics") {
  auto r = run({"asymptotics", "10", "--method", "bell"});
  CHECK(r.code == 0);
  CHECK(r.out.find("ratio         1.01825355577") != std::string::npos);
  r = run({"asymptotics", "100", "--method", "hr", "--format", "json"});
  CHECK(r.out.find("\"ratio\": 1.04571356307") != std::string::npos);
  r = run({"asymptotics", "--series", "1..50", "--method", "hr"});
  CHECK(r.code == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 52);
  r = run({"asymptotics", "5000", "--method", "bell"});
  CHECK(r.out.find("not computed") != std::string::npos);
  CHECK(run({"asymptotics", "0"}).code == 2);
  CHECK(run({"asymptotics", "--series", "5..2"}).code == 2);
  CHECK(run({"asymptotics", "10", "--method", "magic"}).code == 2);
}

TEST_CASE("spectrum") {
  const auto cfg = write_temp("three.json", kThree);
  auto r = run({"spectrum", cfg});
  CHECK(r.code == 0);
  CHECK(r.out.find("0   (A_3)") != std::string::npos);
  CHECK(r.out.find("2   (A)_3") != std::string::npos);
  r = run({"spectrum", cfg, "--at-energy", "-0.5"});
  CHECK(r.out == "# open at E = -0.5: 1\n(A_2)(A)\n");
  const auto a = run({"spectrum", cfg, "--format", "json"});
  const auto b = run({"spectrum", cfg, "--format", "json"});
  CHECK(a.out == b.out);
  CHECK(a.out.find("\"lowest_threshold\": -1.0") != std::string::npos);

  const auto missing = write_temp("missing.json", R"j({"species":[{"name":"A"}],"composition":{"A":3},
    "catalog":{"(A_3)":[-2.5]}})j");
  r = run({"spectrum", missing});
  CHECK(r.code == 2);
  CHECK(r.err.find("(A_2)") != std::string::npos);
}

TEST_CASE("separability") {
  const auto cfg = write_temp("sep.json", R"j({"separability":{"masses":[2,2,1],
    "positions":[[0,0,0],[1,0,0],[0,5,0]],"subsystem":[0,1],
    "potentials":[{"kind":"screened_coulomb","charge_product":1,"screening_length":2}]}})j");
  auto r = run({"separability", cfg});
  CHECK(r.code == 0);
  CHECK(r.out.find("mu            1\n") != std::string::npos);
  CHECK(r.out.find("R             1\n") != std::string::npos);
  r = run({"separability", cfg, "--scale-sweep", "9", "--format", "json"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"expected_min_slope\": 2") != std::string::npos);
  const auto x = run({"separability", "--random", "--seed", "3", "--scale-sweep", "9", "--format", "json"});
  const auto y = run({"--seed", "3", "separability", "--random", "--scale-sweep", "9", "--format", "json"});
  CHECK(x.code == 0);
  CHECK(x.out == y.out);

  const auto coincident = write_temp("coincident.json", R"j({"separability":{"masses":[1,1,1],
    "positions":[[-1,0,0],[1,0,0],[0,0,0]],"subsystem":[0,1],
    "potentials":[{"kind":"inverse_power","strength":1,"power":1}]}})j");
  CHECK(run({"separability", coincident, "--scale-sweep", "4"}).code == 2);
}

TEST_CASE("malformed documents exit 2 with a path") {
  const auto bad = write_temp("bad.json", R"j({"composition":{"A":1},"species":[{"name":"A"}],"binding":{"mode":"x"}})j");
  auto r = run({"enumerate", bad});
  CHECK(r.code == 2);
  CHECK(r.err.find("binding.mode") != std::string::npos);
  CHECK(r.out.empty());
  const auto broken = write_temp("broken.json", "{ not json");
  CHECK(run({"enumerate", broken}).code == 2);
  CHECK(run({"enumerate"}).code == 2);
  CHECK(run({"enumerate", "/nonexistent.json"}).code == 2);
}

TEST_CASE("--out writes to a file") {
  const fs::path target = fs::temp_directory_path() / "arrangekit_cli_tests" / "out.txt";
  fs::remove(target);
  auto r = run({"counts", "--bell", "4", "--out", target.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(target);
  std::string body((std::istreambuf_iterator<char>(in)), {});
  CHECK(body == "15\n");
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"counts", "--format", "xml", "--bell", "1"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}
