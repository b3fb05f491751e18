#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace fs = std::filesystem;

namespace {
struct Run {
  int status;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = weylforge::cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& body) {
  const fs::path path = fs::temp_directory_path() / ("weylforge_test_" + name);
  std::ofstream(path) << body;
  return path.string();
}

const std::string kPhi = "ring weyl n=1 char=0\nx1 -> x1\nd1 -> d1 + x1^2\n";
const std::string kShear = "ring poly n=2 char=0\nx1 -> x1\nx2 -> x2 + x1^2\n";
}  // namespace

TEST_CASE("deg and mul") {
  const Run d = run({"deg", "--expr", "x1*d1+1"});
  CHECK(d.status == 0);
  CHECK(d.out == "2\n");
  const Run m = run({"mul", "--expr", "d1", "--expr", "x1"});
  CHECK(m.status == 0);
  CHECK(m.out == "x1*d1 + 1\n");
  const Run m2 = run({"mul", "--expr", "d1^2", "--expr", "x1^2", "--char", "2"});
  CHECK(m2.out == "x1^2*d1^2\n");
}

TEST_CASE("invert prints the inverse and the Gabber audit") {
  const Run r = run({"invert", "--file", write_temp("shear.endo", kShear)});
  CHECK(r.status == 0);
  CHECK(r.out.find("x2 -> -x1^2 + x2") != std::string::npos);
  CHECK(r.out.find("gabber: 2 <= 2 holds") != std::string::npos);
}

TEST_CASE("probe gives one record per prime, all yes") {
  const std::string f = write_temp("phi.endo", kPhi);
  const Run r = run({"probe", "--file", f, "--primes", "5,7", "--cutoff", "2", "--format",
                     "records"});
  CHECK(r.status == 0);
  std::istringstream lines(r.out);
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) {
    ++count;
    CHECK(line.find("\"etale\":\"yes\"") != std::string::npos);
    CHECK(line.find("\"finite\":\"yes\"") != std::string::npos);
    CHECK(line.find("\"invertible\":\"yes\"") != std::string::npos);
  }
  CHECK(count == 2);
}

TEST_CASE("exit statuses") {
  CHECK(run({}).status == 1);
  CHECK(run({"frobnicate"}).status == 1);
  CHECK(run({"deg", "--expr", "x1 +"}).status == 1);
  CHECK(run({"deg", "--expr", "0"}).status == 1);
  CHECK(run({"invert", "--file", "/nonexistent/weylforge.endo"}).status == 1);
  CHECK(run({"mul", "--expr", "x1", "--char", "4"}).status == 1);
  const std::string f = write_temp("phi_budget.endo", kPhi);
  setenv("WEYLFORGE_UNKNOWN_BUDGET", "2", 1);
  const Run b = run({"gen-solve", "--file", f, "--cutoff", "2"});
  unsetenv("WEYLFORGE_UNKNOWN_BUDGET");
  CHECK(b.status == 2);
  CHECK_FALSE(b.err.empty());
  const Run ok = run({"gen-solve", "--file", f, "--cutoff", "2"});
  CHECK(ok.status == 0);
  CHECK(ok.out.find("b[1,1,1] -> -x1^2 + d1") != std::string::npos);
}

TEST_CASE("gen-solve certificates verify through gen-verify") {
  const std::string f = write_temp("as2.endo", "ring weyl n=1 char=2\nx1 -> x1 + x1^2\nd1 -> d1\n");
  const Run s = run({"gen-solve", "--file", f, "--gen", "1", "--gen", "x1", "--cutoff", "1"});
  REQUIRE(s.status == 0);
  const std::string cert = write_temp("as2.cert", s.out);
  const Run v = run({"gen-verify", "--file", f, "--cert", cert});
  CHECK(v.status == 0);
  CHECK(v.out.find("yes") != std::string::npos);
}

TEST_CASE("identical invocations give identical output") {
  const std::string f = write_temp("phi_det.endo", kPhi);
  const std::vector<std::string> args{"probe", "--file", f, "--primes", "3,5,7", "--jobs", "3"};
  const Run a = run(args), b = run(args);
  const Run c = run({"probe", "--file", f, "--primes", "3,5,7"});
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
  const Run g1 = run({"gb", "--expr", "x2 - x1^2", "--expr", "x3 - x1^3", "--n", "3"});
  const Run g2 = run({"gb", "--expr", "x2 - x1^2", "--expr", "x3 - x1^3", "--n", "3"});
  CHECK(g1.status == 0);
  CHECK(g1.out == g2.out);
  CHECK(g1.out.find("dube_bound=") != std::string::npos);
}
