#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "ainfer/latency.hpp"
#include "ainfer/types.hpp"
#include "ainfer/world.hpp"

namespace ainfer {

class ScenarioParseError : public std::runtime_error {
 public:
  ScenarioParseError(int line, int col, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ", col " +
                           std::to_string(col) + ": " + msg),
        line(line),
        col(col) {}
  int line;
  int col;
};

class ScenarioSemanticError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Mode { Sync, Async };

struct LatencyConfig {
  LatencySpec server = LatencySpec::constant(330);
  LatencySpec c2s = LatencySpec::constant(0);
  LatencySpec s2c = LatencySpec::constant(0);
};

struct ScenarioConfig {
  ClientConfig client;      // defaults: n=50 g=0.7 eps=0 dt=33 replace horizon=3000
  LatencyConfig latency;
  WorldParams world;
  Mode mode = Mode::Async;
  std::uint64_t seed = 1;

  void validate() const;  // throws ScenarioSemanticError
};

// Strict flat key-value format: `key = value` lines, '#' comments, every
// key known, no duplicates. Sync mode forces g = 0 and epsilon = 0.
// See scenario_grammar_help() for the full key list.
ScenarioConfig parse_scenario(const std::string& text);
ScenarioConfig load_scenario_file(const std::string& path);

std::string scenario_grammar_help();

}  // namespace ainfer
