#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cylalg/cli.hpp"
#include "cylalg/session.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cylalg::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("cylalg-test-" + std::to_string(reinterpret_cast<std::uintptr_t>(this)) + "-" +
            std::to_string(std::rand()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("normalize") {
  CHECK(run({"normalize", "V((1);(2)) V((3);(1))"}).out == "V((3);(2))\n");
  CHECK(run({"normalize", "P((1)) * V((1);(2))'"}).out == "V((2);(1))\n");
  CHECK(run({"normalize", "1/2 P((2)) + 1/2 P((1))"}).out == "1/2 P((1)) + 1/2 P((2))\n");
  const auto bad = run({"normalize", "V((1);(2,3))"});
  CHECK(bad.code == cylalg::cli::kUsage);
  CHECK(bad.err.find("line 1") != std::string::npos);
}

TEST_CASE("geval, compress and fragment") {
  CHECK(run({"geval", "2 P((1)) + 5 P((1,7))", "(1,7)/0"}).out == "7\n");
  CHECK(run({"compress", "P((1))", "(1,9)"}).out == "P((1,9))\n");
  CHECK(run({"compress", "V((1);(2))", "(3)"}).out == "0\n");
  const auto f = run({"fragment", "V((1);(2))", "1"});
  CHECK(f.code == 0);
  CHECK(f.out.find("index (1) (2)") != std::string::npos);
  CHECK(f.out.find("psd no") != std::string::npos);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == cylalg::cli::kUsage);
  CHECK(run({"frobnicate"}).code == cylalg::cli::kUsage);
  CHECK(run({"link", "(1)"}).code == cylalg::cli::kUsage);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"vanishing-tuple", "0"}).code == cylalg::cli::kUsage);
  CHECK(run({"verify", "/nonexistent/file"}).code == cylalg::cli::kUsage);
}

TEST_CASE("session workflow") {
  TempDir dir;
  const std::string s = dir / "s.session";
  auto in = [&](std::vector<std::string> args) {
    args.insert(args.begin(), {"--session", s});
    return run(args);
  };
  const auto link = in({"link", "(1)", "(2,7)"});
  CHECK(link.code == 0);
  CHECK(link.out == "generator stage=0 n=3 label=0 first=(1) second=(2,7) a=(1,0,0) b=(2,7,0)\n");
  const auto reg = in({"register-state", "1 @ (1,2)/0", "2"});
  CHECK(reg.out == "protection stage=1 horizon=2 tuples=(1);(1,2) state=1 @ (1,2) / 0\n");
  CHECK(in({"vanishing-tuple", "1"}).out == "(0)\n");
  CHECK(in({"vanishing-tuple", "0"}).code == cylalg::cli::kUsage);
  const auto k = in({"link", "(0)", "(5)"});
  CHECK(k.out.find("a=(0,1) b=(5,1)") != std::string::npos);

  const std::string trace_file = dir / "t.trace";
  const auto l2 = in({"lemma2", "1", "V((0,1);(5,1)) P((0))", "--out", trace_file, "--as", "t1"});
  CHECK(l2.code == 0);
  CHECK(l2.out.starts_with("cylalg-trace 1\n"));
  CHECK(in({"verify", trace_file}).code == 0);
  CHECK(run({"verify", trace_file}).code == cylalg::cli::kUsage);

  const std::string cert_file = dir / "c.cert";
  const auto pw = in({"prime-witness", "P((1)) + V((1);(2))", "(1)/0", "2 P((5,5))", "(5,5)/3",
                      "--out", cert_file});
  CHECK(pw.code == 0);
  CHECK(pw.out == slurp(cert_file));
  CHECK(in({"verify", cert_file}).code == 0);
  CHECK(run({"verify", cert_file}).code == 0);

  std::string tampered = slurp(cert_file);
  const auto pos = tampered.find("scalar1 2");
  REQUIRE(pos != std::string::npos);
  tampered.replace(pos, 9, "scalar1 3");
  std::ofstream(dir / "bad.cert") << tampered;
  CHECK(run({"verify", dir / "bad.cert"}).code == cylalg::cli::kVerificationFailed);
  std::ofstream(dir / "junk.cert") << "cylalg-certificate 1\nq1 P((\n";
  CHECK(run({"verify", dir / "junk.cert"}).code == cylalg::cli::kVerificationFailed);

  CHECK(in({"bind", "q", "P((1)) P((1))"}).out == "q = P((1))\n");
  CHECK(in({"audit"}).out == "ok 4 records\n");

  const auto session = cylalg::Session::load(s);
  CHECK(session.history.size() == 6);
  CHECK(session.bindings.at("q").kind == "poly");
  CHECK(session.bindings.at("t1").kind == "trace");
  CHECK(cylalg::Session::parse(session.serialize()) == session);

  // Replaying the transcript twice gives byte-identical files.
  const std::string r1 = dir / "r1.session", r2 = dir / "r2.session";
  CHECK(run({"--session", r1, "replay", s}).code == 0);
  CHECK(run({"--session", r2, "replay", s}).code == 0);
  CHECK(slurp(r1) == slurp(r2));
  CHECK(slurp(r1) == slurp(s));
}

TEST_CASE("audit flags a tampered session") {
  TempDir dir;
  const std::string s = dir / "s.session";
  std::ofstream(s) << "cylalg-session 1\n"
                   << "record protection stage=0 tuples=(1);(1,3)\n"
                   << "record generator stage=1 n=2 label=3 first=(4) second=(5) a=(4,3) b=(5,3)\n";
  const auto r = run({"--session", s, "audit"});
  CHECK(r.code == cylalg::cli::kVerificationFailed);
  CHECK(r.out.find("stage=1") != std::string::npos);
  std::ofstream(dir / "broken") << "cylalg-session 9\n";
  CHECK(run({"--session", dir / "broken", "audit"}).code == cylalg::cli::kUsage);
}

TEST_CASE("selftest is deterministic") {
  const auto a = run({"selftest", "--seed", "7", "--cases", "60"});
  const auto b = run({"selftest", "--seed", "7", "--cases", "60"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("FAIL") == std::string::npos);
}
