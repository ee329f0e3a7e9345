#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

using std::string;

namespace {

string cli_path() {
  const char* p = std::getenv("FFMEM_CLI");
  REQUIRE(p != nullptr);
  return p;
}

struct RunResult {
  int code;
  string out;
};

RunResult run(const string& args) {
  string cmd = cli_path() + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

string tmp_file(const string& name, const string& content) {
  string path = string("/tmp/ffmem_test_") + name;
  std::ofstream f(path);
  f << content;
  return path;
}

}  // namespace

TEST_CASE("mems and oracle agree on the example, verify passes") {
  string in = tmp_file("ex.txt", "gtaatagtagtacc\n");
  auto mems = run("mems -i " + in + " -t 3");
  CHECK(mems.code == 0);
  CHECK(mems.out == "1\t1\t1\t7\t3\n1\t1\t1\t10\t3\n1\t1\t5\t8\t5\n");
  auto oracle = run("oracle -i " + in + " -t 3");
  CHECK(oracle.out == mems.out);
  auto verify = run("verify -i " + in + " -t 3");
  CHECK(verify.code == 0);
  CHECK(verify.out.substr(0, 4) == "PASS");
}

TEST_CASE("fasta input and output file") {
  string in = tmp_file("ex.fa", ">s1\ngtaatag\ntagtacc\n");
  string out = "/tmp/ffmem_test_out.txt";
  auto r = run("mems -i " + in + " -f fasta -t 3 -o " + out);
  CHECK(r.code == 0);
  std::ifstream f(out);
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(ss.str() == "1\t1\t1\t7\t3\n1\t1\t1\t10\t3\n1\t1\t5\t8\t5\n");
}

TEST_CASE("grammar file round trip through build") {
  string in = tmp_file("two.txt", "tagata\ntagata\n");
  string gf = "/tmp/ffmem_test_g.ffg";
  auto b = run("build -i " + in + " -o " + gf + " -s 11");
  CHECK(b.code == 0);
  auto m = run("mems -g " + gf + " -t 6");
  CHECK(m.code == 0);
  CHECK(m.out == "1\t2\t1\t1\t6\n");

  // Same seed twice gives byte-identical grammar files.
  string gf2 = "/tmp/ffmem_test_g2.ffg";
  run("build -i " + in + " -o " + gf2 + " -s 11");
  std::ifstream a(gf, std::ios::binary), c(gf2, std::ios::binary);
  std::stringstream sa, sc;
  sa << a.rdbuf();
  sc << c.rdbuf();
  CHECK(sa.str() == sc.str());
}

TEST_CASE("stats subcommand") {
  string in = tmp_file("st.txt", "gtaatagtagtacc\n");
  auto r = run("stats -i " + in + " -s 1");
  CHECK(r.code == 0);
  CHECK(r.out.find("n\t14") != string::npos);
  CHECK(r.out.find("h\t") != string::npos);
}

TEST_CASE("usage and io errors") {
  CHECK(run("mems").code == 2);          // missing input
  CHECK(run("bogus").code == 2);         // unknown subcommand
  CHECK(run("mems -i /nonexistent_ffmem").code == 3);
}

TEST_CASE("no-simplify and tau flags") {
  string in = tmp_file("ns.txt", "abcabc\n");
  auto a = run("mems -i " + in + " -t 3");
  auto b = run("mems -i " + in + " -t 3 --no-simplify");
  CHECK(a.out == b.out);
  CHECK(run("mems -i " + in + " -t 100").out.empty());
}
