#include "cylalg/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "cylalg/check.hpp"
#include "cylalg/error.hpp"
#include "cylalg/expression.hpp"
#include "cylalg/fragment.hpp"
#include "cylalg/lemma1.hpp"
#include "cylalg/lemma2.hpp"
#include "cylalg/session.hpp"
#include "cylalg/text.hpp"

namespace cylalg::cli {
namespace {

namespace fs = std::filesystem;

struct Failure {
  int code;
  std::string message;
};

[[noreturn]] void usage(const std::string& message) { throw Failure{kUsage, message}; }

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) usage("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) usage("cannot write " + path.string());
  out << text;
}

std::size_t parse_count(const std::string& text, const char* what) {
  text::Scanner sc(text);
  const auto v = sc.label_value();
  if (!sc.at_end()) sc.fail(std::string("expected ") + what);
  return static_cast<std::size_t>(v);
}

std::string join_command(const std::vector<std::string>& words) {
  std::string line;
  for (const auto& w : words) {
    if (!line.empty()) line += ' ';
    line += text::quote_word(w);
  }
  return line;
}

const ProtectionRecord& protection_arg(const Registry& reg, const std::string& id) {
  const Stage stage = parse_count(id, "a protection stage");
  try {
    return reg.protection(stage);
  } catch (const PreconditionError&) {
    usage("no protection record at stage " + id);
  }
}

std::string selftest_report(std::uint64_t seed, std::size_t cases, bool& all_passed) {
  using namespace check;
  const std::size_t m = std::max<std::size_t>(cases, 1);
  std::vector<SuiteResult> results{
      closure_and_action(seed, m),
      algebra_laws(seed + 1, m),
      constancy_and_compression(seed + 2, m),
      oracle_invariants(seed + 3, m),
      lemma2_end_to_end(seed + 4, std::max<std::size_t>(1, m / 50), 50, 50),
      primeness_pipeline(seed + 5, std::max<std::size_t>(1, m / 10)),
      fragment_psd(seed + 6, std::max<std::size_t>(1, m / 5)),
  };
  std::ostringstream os;
  all_passed = true;
  for (const auto& r : results) {
    all_passed = all_passed && r.passed;
    os << (r.passed ? "PASS " : "FAIL ") << r.name << " cases=" << r.cases;
    if (!r.detail.empty()) os << " : " << r.detail;
    os << "\n";
  }
  return os.str();
}

// One invocation. Commands that change the session append their own argument
// list (minus --session) to the transcript.
class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(const std::vector<std::string>& args);

 private:
  void define(CLI::App& app);
  void load();
  void commit(const std::vector<std::string>& command_words);
  void emit(const std::string& text, const std::string& kind);

  std::ostream& out_;
  std::ostream& err_;
  std::string session_path_;
  Session session_;
  std::string bind_as_;
  std::string out_path_;
  int status_ = kOk;

  // Positional storage.
  std::string expr_, expr2_, point_, point2_, tuple_, tuple2_, state_, horizon_, id_, file_,
      name_, level_;
  std::uint64_t seed_ = 1;
  std::size_t cases_ = 200;
  std::function<void()> action_;
};

void Runner::load() {
  if (!session_path_.empty()) session_ = Session::load(session_path_);
}

void Runner::commit(const std::vector<std::string>& command_words) {
  session_.history.push_back(join_command(command_words));
  if (!session_path_.empty()) session_.save(session_path_);
}

void Runner::emit(const std::string& text, const std::string& kind) {
  out_ << text;
  if (!out_path_.empty()) write_file(out_path_, text);
  if (!bind_as_.empty()) session_.bindings[bind_as_] = Binding{kind, text};
}

void Runner::define(CLI::App& app) {
  app.add_option("--session", session_path_, "Session file (created on first write)");
  app.require_subcommand(1);

  auto with_outputs = [this](CLI::App* sub) {
    sub->add_option("--as", bind_as_, "Store the output as a named session binding");
    sub->add_option("--out", out_path_, "Also write the output to a file");
  };

  auto* normalize = app.add_subcommand("normalize", "Print the canonical polynomial of an expression");
  normalize->add_option("expr", expr_)->required();
  normalize->callback([this] {
    action_ = [this] { out_ << to_string(evaluate(*parse_expression(expr_))) << "\n"; };
  });

  auto* geval = app.add_subcommand("geval", "Diagonal value g_p(x) at a sequence");
  geval->add_option("expr", expr_)->required();
  geval->add_option("point", point_, "prefix/tail, e.g. (1,2)/0")->required();
  geval->callback([this] {
    action_ = [this] {
      const Polynomial p = evaluate(*parse_expression(expr_));
      out_ << to_string(g_eval(p, parse_sequence(point_))) << "\n";
    };
  });

  auto* comp = app.add_subcommand("compress", "Print P_t p P_t");
  comp->add_option("expr", expr_)->required();
  comp->add_option("tuple", tuple_)->required();
  comp->callback([this] {
    action_ = [this] {
      const Polynomial p = evaluate(*parse_expression(expr_));
      out_ << to_string(compress(p, parse_tuple(tuple_))) << "\n";
    };
  });

  auto* frag = app.add_subcommand("fragment", "Print the fragment matrix of p at a level");
  frag->add_option("expr", expr_)->required();
  frag->add_option("level", level_)->required();
  frag->callback([this] {
    action_ = [this] {
      const Polynomial p = evaluate(*parse_expression(expr_));
      const FragmentMatrix fm = fragment_matrix(p, parse_count(level_, "a level"));
      out_ << to_string(fm);
      out_ << "hermitian " << (is_hermitian(fm.matrix) ? "yes" : "no") << "\n";
      out_ << "psd " << (is_positive_semidefinite(fm.matrix) ? "yes" : "no") << "\n";
    };
  });

  auto* link = app.add_subcommand("link", "Issue a generator linking two tuples");
  link->add_option("first", tuple_)->required();
  link->add_option("second", tuple2_)->required();
  link->callback([this] {
    action_ = [this] {
      load();
      const auto g = session_.registry.link(parse_tuple(tuple_), parse_tuple(tuple2_));
      out_ << to_string(g) << "\n";
      commit({"link", tuple_, tuple2_});
    };
  });

  auto* reg_state = app.add_subcommand("register-state", "Protect a diagonal state's support");
  reg_state->add_option("state", state_, "weight @ prefix / tail; ...")->required();
  reg_state->add_option("horizon", horizon_)->required();
  reg_state->callback([this] {
    action_ = [this] {
      load();
      const auto rho = parse_state(state_);
      const auto horizon = parse_count(horizon_, "a horizon");
      const auto p = session_.registry.register_protection(rho, horizon);
      out_ << to_string(p) << "\n";
      commit({"register-state", state_, horizon_});
    };
  });

  auto* vt = app.add_subcommand("vanishing-tuple", "Print the vanishing 1-tuple of a protection");
  vt->add_option("protection", id_)->required();
  vt->callback([this] {
    action_ = [this] {
      load();
      const auto& prot = protection_arg(session_.registry, id_);
      out_ << to_string(session_.registry.vanishing_tuple(prot)) << "\n";
    };
  });

  auto* lemma2 = app.add_subcommand("lemma2", "Trace the vanishing argument for a word");
  lemma2->add_option("protection", id_)->required();
  lemma2->add_option("word", expr_)->required();
  with_outputs(lemma2);
  lemma2->callback([this] {
    action_ = [this] {
      load();
      const Registry& reg = session_.registry;
      const auto& prot = protection_arg(reg, id_);
      const Tuple a = reg.vanishing_tuple(prot);
      const auto word = as_word(*parse_expression(expr_));
      const auto outcome = lemma2_witness(reg, prot, a, word);
      if (const auto* trace = std::get_if<Lemma2Trace>(&outcome)) {
        verify_lemma2_trace(reg, *trace);
        if (prot.source) vanishing_check(*prot.source, reg, prot, a, word);
        emit(to_string(*trace), "trace");
      } else {
        emit(to_string(std::get<ZeroReport>(outcome)), "trace");
      }
      if (!bind_as_.empty()) {
        std::vector<std::string> cmd{"lemma2", id_, expr_, "--as", bind_as_};
        commit(cmd);
      }
    };
  });

  auto* prime = app.add_subcommand("prime-witness", "Certify P_b in the ideals of q1*q1 and q2*q2");
  prime->add_option("q1", expr_)->required();
  prime->add_option("x1", point_)->required();
  prime->add_option("q2", expr2_)->required();
  prime->add_option("x2", point2_)->required();
  with_outputs(prime);
  prime->callback([this] {
    action_ = [this] {
      load();
      const Polynomial q1 = evaluate(*parse_expression(expr_));
      const Polynomial q2 = evaluate(*parse_expression(expr2_));
      const auto w1 = ideal_projection_witness(session_.registry, q1, parse_sequence(point_));
      const auto w2 = ideal_projection_witness(session_.registry, q2, parse_sequence(point2_));
      const auto cert = primeness_witness(session_.registry, w1, w2);
      emit(to_string(cert), "certificate");
      std::vector<std::string> cmd{"prime-witness", expr_, point_, expr2_, point2_};
      if (!bind_as_.empty()) cmd.insert(cmd.end(), {"--as", bind_as_});
      if (!out_path_.empty()) cmd.insert(cmd.end(), {"--out", out_path_});
      commit(cmd);
    };
  });

  auto* verify = app.add_subcommand("verify", "Independently re-check a certificate or trace file");
  verify->add_option("file", file_)->required();
  verify->callback([this] {
    action_ = [this] {
      load();
      const std::string text = read_file(file_);
      try {
        if (text.starts_with("cylalg-certificate")) {
          const auto cert = parse_certificate(text);
          verify_certificate(cert, session_path_.empty() ? nullptr : &session_.registry);
          out_ << "ok certificate P" << "(" << to_string(cert.generator.b) << ")\n";
        } else if (text.starts_with("cylalg-trace")) {
          if (session_path_.empty()) usage("verifying a trace needs --session");
          const auto trace = parse_trace(text);
          verify_lemma2_trace(session_.registry, trace);
          out_ << "ok trace b=" << to_string(trace.final_b) << " n=" << trace.final_n << "\n";
        } else {
          throw VerificationError("not a certificate or trace file");
        }
      } catch (const ParseError& e) {
        throw VerificationError(std::string("malformed file: ") + e.what());
      } catch (const HorizonError&) {
        throw;
      } catch (const PreconditionError& e) {
        throw VerificationError(e.what());
      }
    };
  });

  auto* audit = app.add_subcommand("audit", "Re-check every generator against the avoidance conditions");
  audit->callback([this] {
    action_ = [this] {
      load();
      const auto report = session_.registry.audit();
      if (report.ok()) {
        out_ << "ok " << session_.registry.size() << " records\n";
      } else {
        out_ << report.describe() << "\n";
        status_ = kVerificationFailed;
      }
    };
  });

  auto* bind = app.add_subcommand("bind", "Store the canonical form of an expression under a name");
  bind->add_option("name", name_)->required();
  bind->add_option("expr", expr_)->required();
  bind->callback([this] {
    action_ = [this] {
      load();
      text::Scanner sc(name_);
      if (sc.identifier() != name_) usage("binding names are identifiers");
      const std::string canonical = to_string(evaluate(*parse_expression(expr_)));
      session_.bindings[name_] = Binding{"poly", canonical + "\n"};
      out_ << name_ << " = " << canonical << "\n";
      commit({"bind", name_, expr_});
    };
  });

  auto* replay = app.add_subcommand(
      "replay", "Re-run a transcript (a session file or one command per line) into a fresh session");
  replay->add_option("transcript", file_)->required();
  replay->callback([this] {
    action_ = [this] {
      if (session_path_.empty()) usage("replay needs --session for the target session file");
      const std::string text = read_file(file_);
      std::vector<std::string> lines;
      if (text.starts_with("cylalg-session")) {
        lines = Session::parse(text).history;
      } else {
        std::istringstream in(text);
        for (std::string line; std::getline(in, line);) {
          const auto first = line.find_first_not_of(" \t\r");
          if (first == std::string::npos || line[first] == '#') continue;
          lines.push_back(line);
        }
      }
      Session{}.save(session_path_);
      for (const auto& line : lines) {
        auto words = text::split_command_line(line);
        if (!words.empty() && words.front() == "replay") usage("nested replay");
        words.insert(words.begin(), {"--session", session_path_});
        const int code = cli::run(words, out_, err_);
        if (code != kOk) throw Failure{code, "replay stopped at: " + line};
      }
    };
  });

  auto* selftest = app.add_subcommand("selftest", "Run the randomized property suites");
  selftest->add_option("--seed", seed_, "Random seed")->capture_default_str();
  selftest->add_option("--cases", cases_, "Base case count per suite")->capture_default_str();
  selftest->callback([this] {
    action_ = [this] {
      bool passed = true;
      out_ << selftest_report(seed_, cases_, passed);
      if (!passed) status_ = kVerificationFailed;
    };
  });
}

int Runner::run(const std::vector<std::string>& args) {
  CLI::App app{"Exact computations with prefix-rewriting partial isometries", "cylalg"};
  define(app);
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out_ << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out_ << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err_ << "error: " << e.what() << "\n";
    if (!e.get_exit_code()) return kOk;
    err_ << "run with --help for usage\n";
    return kUsage;
  }
  try {
    if (action_) action_();
    return status_;
  } catch (const Failure& f) {
    err_ << "error: " << f.message << "\n";
    return f.code;
  } catch (const HorizonError& e) {
    err_ << "verification failed: " << e.what() << "\n";
    return kVerificationFailed;
  } catch (const VerificationError& e) {
    err_ << "verification failed: " << e.what() << "\n";
    return kVerificationFailed;
  } catch (const ParseError& e) {
    err_ << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err_ << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Runner runner(out, err);
  return runner.run(args);
}

}  // namespace cylalg::cli
