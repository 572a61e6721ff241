#include "cylalg/session.hpp"

#include <fstream>
#include <sstream>

#include "cylalg/error.hpp"
#include "cylalg/text.hpp"

namespace cylalg {

namespace {
constexpr std::string_view kHeader = "cylalg-session 1";
}

std::string Session::serialize() const {
  std::ostringstream os;
  os << kHeader << "\n";
  for (const auto& r : registry.log()) os << "record " << to_string(r) << "\n";
  for (const auto& [name, b] : bindings) {
    os << "begin binding " << name << " " << b.kind << "\n" << b.text;
    if (!b.text.empty() && b.text.back() != '\n') os << "\n";
    os << "end\n";
  }
  for (const auto& c : history) os << "command " << c << "\n";
  return os.str();
}

Session Session::parse(std::string_view source) {
  Session s;
  std::istringstream lines{std::string(source)};
  std::string line;
  std::size_t line_no = 0;
  auto error = [&](const std::string& why) { throw ParseError("session: " + why, line_no, 1); };
  if (!std::getline(lines, line) || line != kHeader) {
    line_no = 1;
    error("expected header '" + std::string(kHeader) + "'");
  }
  ++line_no;
  while (std::getline(lines, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line.starts_with("record ")) {
      try {
        s.registry.append_unchecked(parse_record(std::string_view(line).substr(7)));
      } catch (const ParseError& e) {
        error(e.what());
      } catch (const PreconditionError& e) {
        error(e.what());
      }
    } else if (line.starts_with("begin binding ")) {
      text::Scanner in(std::string_view(line).substr(14));
      std::string name, kind;
      try {
        name = in.identifier();
        kind = in.identifier();
      } catch (const ParseError& e) {
        error(e.what());
      }
      Binding b{kind, {}};
      bool closed = false;
      while (std::getline(lines, line)) {
        ++line_no;
        if (line == "end") {
          closed = true;
          break;
        }
        b.text += line + "\n";
      }
      if (!closed) error("binding '" + name + "' is not terminated by 'end'");
      s.bindings[name] = std::move(b);
    } else if (line.starts_with("command ")) {
      s.history.push_back(line.substr(8));
    } else {
      error("unrecognized line");
    }
  }
  return s;
}

Session Session::load(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) return {};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read session " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

void Session::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write session " + path.string());
  out << serialize();
  if (!out) throw Error("failed writing session " + path.string());
}

}  // namespace cylalg
