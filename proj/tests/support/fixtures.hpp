// Hand-built graphs used across suites.
#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "primo/core.hpp"

namespace primo::testing {

/// The flying-emu example: two defaults that defeat each other.
inline PrimoGraph tweety(double emu = 1.0) {
  PrimoGraph g;
  for (const char* n : {"BIRD", "EMU", "FLEMU", "FLIES", "HOPS"}) g.add_literal(Literal{n});
  g.set_input(Literal{"BIRD"}, 1.0);
  g.set_input(Literal{"EMU"}, emu);
  g.set_input(Literal{"FLEMU"}, 0.0);
  g.add_justification({"bird_flies", {Literal{"BIRD"}}, {{Literal{"HOPS"}, 0.2}}, 0.8, Literal{"FLIES"}});
  g.add_justification({"emu_hops", {Literal{"EMU"}}, {{Literal{"FLIES"}, 0.2}}, 0.9, Literal{"HOPS"}});
  g.add_justification({"flemu_emu", {Literal{"FLEMU"}}, {}, 1.0, Literal{"EMU"}});
  g.add_justification({"emu_bird", {Literal{"EMU"}}, {}, 1.0, Literal{"BIRD"}});
  g.add_justification({"flemu_flies", {Literal{"FLEMU"}}, {}, 1.0, Literal{"FLIES"}});
  return g;
}

/// `not[0.5] P -> (1.0) P`
inline PrimoGraph liar() {
  PrimoGraph g;
  g.add_literal(Literal{"P"});
  g.add_justification({"liar", {}, {{Literal{"P"}, 0.5}}, 1.0, Literal{"P"}});
  return g;
}

/// Two independent mutual-defeat loops fed by A and B.
inline PrimoGraph two_loops() {
  PrimoGraph g;
  for (const char* n : {"A", "B", "X", "Y", "U", "V"}) g.add_literal(Literal{n});
  g.set_input(Literal{"A"}, 1.0);
  g.set_input(Literal{"B"}, 0.6);
  g.add_justification({"a1", {Literal{"A"}}, {{Literal{"Y"}, 0.3}}, 0.9, Literal{"X"}});
  g.add_justification({"a2", {Literal{"A"}}, {{Literal{"X"}, 0.3}}, 0.5, Literal{"Y"}});
  g.add_justification({"b1", {Literal{"B"}}, {{Literal{"V"}, 0.2}}, 0.7, Literal{"U"}});
  g.add_justification({"b2", {Literal{"B"}}, {{Literal{"U"}, 0.2}}, 1.0, Literal{"V"}});
  return g;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline std::string sample(const std::string& name) { return std::string(PRIMO_SAMPLES_DIR) + "/" + name; }

}  // namespace primo::testing
