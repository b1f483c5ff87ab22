#pragma once

// Shared test fixtures, loaded from the repository's fixture files.

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "gentle/core.hpp"
#include "gentle/dsl.hpp"

#ifndef GENTLE_FIXTURES_DIR
#error "GENTLE_FIXTURES_DIR must point at the fixtures directory"
#endif

namespace fixtures {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline std::string fixture_path(const std::string& name) {
  return std::string(GENTLE_FIXTURES_DIR) + "/" + name + ".quiver";
}

inline std::string fixture_text(const std::string& name) {
  return read_file(fixture_path(name));
}

inline gentle::QuiverDocument document(const std::string& name) {
  auto res = gentle::parse_dsl(fixture_text(name));
  if (auto* doc = std::get_if<gentle::QuiverDocument>(&res)) return *doc;
  std::string msg = "fixture " + name + " failed to parse:";
  for (const auto& e : std::get<std::vector<gentle::ParseError>>(res))
    msg += " " + e.describe();
  throw std::runtime_error(msg);
}

inline gentle::QuiverWithRelations presentation(const std::string& name) {
  return document(name).body;
}

inline gentle::GentleQuiver quiver(const std::string& name) {
  auto res = gentle::validate_gentle(presentation(name));
  if (auto* g = std::get_if<gentle::GentleQuiver>(&res)) return *g;
  throw std::runtime_error("fixture " + name + " is not gentle");
}

inline gentle::GentleQuiver linear3() { return quiver("linear3"); }
inline gentle::GentleQuiver cycle3() { return quiver("cycle3"); }
inline gentle::GentleQuiver reflection_hub() { return quiver("reflection_hub"); }
inline gentle::GentleQuiver two_cycle() { return quiver("two_cycle"); }
inline gentle::GentleQuiver kronecker() { return quiver("kronecker"); }
inline gentle::GentleQuiver linear3_rel() { return quiver("linear3_rel"); }
inline gentle::GentleQuiver tailed_cycle() { return quiver("tailed_cycle"); }
inline gentle::GentleQuiver tailed_cycle_completed() {
  return quiver("tailed_cycle_completed");
}

}  // namespace fixtures
