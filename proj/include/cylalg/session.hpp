#pragma once

// On-disk session: the registry log, named bindings and the transcript of
// mutating commands that produced them.
//
//   cylalg-session 1
//   record generator stage=0 n=3 label=0 first=(1) second=(2,7) a=(1,0,0) b=(2,7,0)
//   record protection stage=1 horizon=2 tuples=(1);(1,2) state=1 @ (1,2) / 0
//   begin binding <name> <kind>
//   ...
//   end
//   command link (1) (2,7)

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cylalg/registry.hpp"

namespace cylalg {

struct Binding {
  /// "poly", "certificate" or "trace".
  std::string kind;
  std::string text;

  friend bool operator==(const Binding&, const Binding&) = default;
};

struct Session {
  Registry registry;
  std::map<std::string, Binding> bindings;
  std::vector<std::string> history;

  std::string serialize() const;
  /// Throws ParseError.
  static Session parse(std::string_view text);
  /// A missing file yields an empty session.
  static Session load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;

  friend bool operator==(const Session&, const Session&) = default;
};

}  // namespace cylalg
