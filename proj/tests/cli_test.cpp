#include <monapres/encoder.hpp>
#include <monapres/report.hpp>

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <sys/wait.h>

using namespace monapres;

namespace {

struct Result {
  int code;
  std::string out;
};

Result run(const std::string& args, const std::string& env = "") {
  std::string cmd = env + " " + MONAPRES_CLI + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  std::array<char, 4096> buf{};
  while (auto n = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
  int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::string fx(const std::string& name) { return std::string(MONAPRES_FIXTURE_DIR) + "/" + name; }

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST(Cli, Verdicts) {
  Result g = run(fx("gessel_sat.sexp"));
  EXPECT_EQ(g.code, 0);
  EXPECT_EQ(g.out, "sat x=169\n");
  Result c = run("--bound 1000 " + fx("catalan.sexp"));
  EXPECT_EQ(c.code, 2);
  EXPECT_EQ(c.out, "unknown (bound-exhausted, bound=1000)\n");
  Result u = run(fx("divisor.sexp"));
  EXPECT_EQ(u.code, 1);
  EXPECT_EQ(u.out, "unsat\n");
}

TEST(Cli, MalformedInput) {
  Result m = run(fx("malformed.sexp"));
  EXPECT_EQ(m.code, 64);
  std::string cmd = std::string(MONAPRES_CLI) + " " + fx("malformed.sexp") + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  std::array<char, 512> buf{};
  std::string err(buf.data(), fread(buf.data(), 1, buf.size(), p));
  pclose(p);
  EXPECT_NE(err.find(":2:14:"), std::string::npos) << err;
  EXPECT_EQ(run("--bound 0 " + fx("gessel_sat.sexp")).code, 64);
  EXPECT_EQ(run("--format xml " + fx("gessel_sat.sexp")).code, 64);
  EXPECT_EQ(run(fx("no_such_file.sexp")).code, 64);
}

TEST(Cli, ExitCodesMatchVerdicts) {
  for (const auto& e : std::filesystem::directory_iterator(MONAPRES_FIXTURE_DIR)) {
    Result r = run("--multi --bound 20000 --format json-lines " + e.path().string());
    int worst = 0;
    bool error = false;
    for (const auto& l : lines(r.out)) {
      Record rec = read_record(l);
      error = error || exit_code(rec) == 64;
      worst = std::max(worst, exit_code(rec) == 64 ? 0 : exit_code(rec));
    }
    EXPECT_EQ(r.code, error ? 64 : worst) << e.path();
  }
}

TEST(Cli, JsonRoundTripAndDeterminism) {
  std::string files;
  for (const char* f : {"gessel_sat.sexp", "coalescing.sexp", "crt.sexp", "multi.sexp", "forall_squares.sexp", "pell_pair.sexp"}) files += " " + fx(f);
  Result a = run("--multi --format json-lines --bound 20000" + files);
  Result b = run("--multi --format json-lines --bound 20000 -j 1" + files);
  auto la = lines(a.out), lb = lines(b.out);
  ASSERT_EQ(la.size(), 8u);
  ASSERT_EQ(la.size(), lb.size());
  for (std::size_t i = 0; i < la.size(); ++i) {
    Record ra = read_record(la[i]), rb = read_record(lb[i]);
    EXPECT_TRUE(ra.same_result(rb)) << la[i] << "\n" << lb[i];
    Record again = read_record(json_line(ra));
    EXPECT_TRUE(again.same_result(ra));
    EXPECT_EQ(json_line(again), la[i]);
  }
  Record first = read_record(la[0]);
  EXPECT_EQ(first.verdict, "sat");
  EXPECT_EQ(first.witness, std::optional<std::string>("169"));
  EXPECT_FALSE(first.case_trace.empty());
  Record co = read_record(la[1]);
  bool flagged = false;
  for (const auto& l : co.log) flagged = flagged || l.find("redundant-after-coalescing") != std::string::npos;
  EXPECT_TRUE(flagged);
}

TEST(Cli, EnvironmentMirrorsFlags) {
  Result r = run(fx("catalan.sexp"), "MONAPRES_BOUND=500 MONAPRES_FORMAT=json-lines");
  EXPECT_EQ(r.code, 2);
  Record rec = read_record(lines(r.out).at(0));
  EXPECT_EQ(rec.bound, "500");
  Result flag = run("--bound 700 " + fx("catalan.sexp"), "MONAPRES_BOUND=500");
  EXPECT_EQ(flag.out, "unknown (bound-exhausted, bound=700)\n");
}

TEST(Cli, Encode) {
  Result r = run("encode --check 10 '(- (* x1 x2) 6)'");
  EXPECT_EQ(r.code, 0);
  auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 4u);
  EXPECT_EQ(ls[3].rfind("; check grid=10", 0), 0u);
  EXPECT_NE(ls[3].find("pass"), std::string::npos);
  auto h = encoder::parse_poly("(- (* x1 x2) 6)");
  EXPECT_TRUE(encoder::check_equiv(h, encoder::parse_square_formula(ls[2]), 10).pass);
  EXPECT_EQ(run("encode '(* x1 y)'").code, 64);
}
