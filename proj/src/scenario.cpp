#include "ainfer/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

namespace ainfer {
namespace {

struct KeyValue {
  std::string key;
  std::string value;
  int line;
  int col;  // column of the value, for number diagnostics
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<KeyValue> tokenize(const std::string& text) {
  std::vector<KeyValue> entries;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    std::string line = hash == std::string::npos ? raw : raw.substr(0, hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ScenarioParseError(line_no, 1, "expected `key = value`");
    KeyValue kv;
    kv.key = trim(line.substr(0, eq));
    kv.value = trim(line.substr(eq + 1));
    kv.line = line_no;
    kv.col = static_cast<int>(eq) + 2;
    if (kv.key.empty()) throw ScenarioParseError(line_no, 1, "empty key");
    if (kv.value.empty())
      throw ScenarioParseError(line_no, kv.col, "empty value for `" + kv.key + "`");
    entries.push_back(std::move(kv));
  }
  return entries;
}

double parse_number(const KeyValue& kv) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(kv.value, &used);
  } catch (const std::exception&) {
    throw ScenarioParseError(kv.line, kv.col, "bad number `" + kv.value + "`");
  }
  if (used != kv.value.size() || !std::isfinite(v))
    throw ScenarioParseError(kv.line, kv.col, "bad number `" + kv.value + "`");
  return v;
}

std::int64_t parse_int(const KeyValue& kv) {
  const double v = parse_number(kv);
  if (v != std::floor(v))
    throw ScenarioParseError(kv.line, kv.col, "expected an integer, got `" + kv.value + "`");
  return static_cast<std::int64_t>(v);
}

bool parse_bool(const KeyValue& kv) {
  if (kv.value == "true" || kv.value == "1") return true;
  if (kv.value == "false" || kv.value == "0") return false;
  throw ScenarioParseError(kv.line, kv.col, "expected true/false");
}

Vec2 parse_vec2(const KeyValue& kv) {
  const auto comma = kv.value.find(',');
  if (comma == std::string::npos)
    throw ScenarioParseError(kv.line, kv.col, "expected `x,y`");
  KeyValue x{kv.key, trim(kv.value.substr(0, comma)), kv.line, kv.col};
  KeyValue y{kv.key, trim(kv.value.substr(comma + 1)), kv.line, kv.col};
  return {parse_number(x), parse_number(y)};
}

LatencySpec parse_latency(const KeyValue& kv) {
  try {
    return parse_latency_spec(kv.value);
  } catch (const std::invalid_argument& e) {
    throw ScenarioParseError(kv.line, kv.col, e.what());
  }
}

AggregationPolicy parse_aggregation(const KeyValue& kv) {
  if (kv.value == "replace") return AggregationPolicy::replace();
  if (kv.value.rfind("blend:", 0) == 0) {
    KeyValue alpha{kv.key, kv.value.substr(6), kv.line, kv.col};
    return AggregationPolicy::blend(parse_number(alpha));
  }
  throw ScenarioParseError(kv.line, kv.col, "expected `replace` or `blend:<alpha>`");
}

std::vector<DisturbanceSpec> parse_disturbances(const KeyValue& kv) {
  std::vector<DisturbanceSpec> out;
  std::istringstream in(kv.value);
  std::string item;
  while (std::getline(in, item, ';')) {
    item = trim(item);
    if (item.empty()) continue;
    std::vector<std::string> f;
    std::istringstream fi(item);
    std::string part;
    while (std::getline(fi, part, ':')) f.push_back(trim(part));
    if (f.size() != 3)
      throw ScenarioParseError(kv.line, kv.col, "disturbance wants `tick:x:y`");
    DisturbanceSpec d;
    d.tick = parse_int({kv.key, f[0], kv.line, kv.col});
    d.new_cube.x = parse_number({kv.key, f[1], kv.line, kv.col});
    d.new_cube.y = parse_number({kv.key, f[2], kv.line, kv.col});
    out.push_back(d);
  }
  return out;
}

}  // namespace

void ScenarioConfig::validate() const {
  try {
    client.validate();
    world.validate();
  } catch (const std::invalid_argument& e) {
    throw ScenarioSemanticError(e.what());
  }
  if (mode == Mode::Sync && (client.g != 0.0 || client.epsilon != 0.0))
    throw ScenarioSemanticError("sync mode forces g = 0 and epsilon = 0");
}

ScenarioConfig parse_scenario(const std::string& text) {
  ScenarioConfig cfg;
  std::set<std::string> seen;
  bool g_given = false, eps_given = false;

  for (const KeyValue& kv : tokenize(text)) {
    if (!seen.insert(kv.key).second)
      throw ScenarioParseError(kv.line, 1, "duplicate key `" + kv.key + "`");

    if (kv.key == "mode") {
      if (kv.value == "sync") cfg.mode = Mode::Sync;
      else if (kv.value == "async") cfg.mode = Mode::Async;
      else throw ScenarioParseError(kv.line, kv.col, "mode must be sync or async");
    } else if (kv.key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(parse_int(kv));
    } else if (kv.key == "horizon") {
      cfg.client.horizon = parse_int(kv);
    } else if (kv.key == "client.n") {
      cfg.client.n = static_cast<int>(parse_int(kv));
    } else if (kv.key == "client.g") {
      cfg.client.g = parse_number(kv);
      g_given = true;
    } else if (kv.key == "client.epsilon") {
      cfg.client.epsilon = parse_number(kv);
      eps_given = true;
    } else if (kv.key == "client.dt_ms") {
      cfg.client.delta_t_ms = static_cast<int>(parse_int(kv));
    } else if (kv.key == "client.aggregation") {
      cfg.client.aggregation = parse_aggregation(kv);
    } else if (kv.key == "client.metric") {
      if (kv.value == "l2") cfg.client.metric = SimilarityMetric::L2;
      else if (kv.value == "linf") cfg.client.metric = SimilarityMetric::Linf;
      else throw ScenarioParseError(kv.line, kv.col, "metric must be l2 or linf");
    } else if (kv.key == "latency.server") {
      cfg.latency.server = parse_latency(kv);
    } else if (kv.key == "latency.c2s") {
      cfg.latency.c2s = parse_latency(kv);
    } else if (kv.key == "latency.s2c") {
      cfg.latency.s2c = parse_latency(kv);
    } else if (kv.key == "world.vmax") {
      cfg.world.vmax = parse_number(kv);
    } else if (kv.key == "world.grasp_radius") {
      cfg.world.grasp_radius = parse_number(kv);
    } else if (kv.key == "world.place_radius") {
      cfg.world.place_radius = parse_number(kv);
    } else if (kv.key == "world.agent") {
      cfg.world.agent = parse_vec2(kv);
    } else if (kv.key == "world.cube") {
      cfg.world.cube = parse_vec2(kv);
    } else if (kv.key == "world.box") {
      cfg.world.box = parse_vec2(kv);
    } else if (kv.key == "world.cycle") {
      cfg.world.cycle = parse_bool(kv);
    } else if (kv.key == "world.disturbances") {
      cfg.world.disturbances = parse_disturbances(kv);
    } else {
      throw ScenarioParseError(kv.line, 1, "unknown key `" + kv.key + "`");
    }
  }

  if (cfg.mode == Mode::Sync) {
    if ((g_given && cfg.client.g != 0.0) || (eps_given && cfg.client.epsilon != 0.0))
      throw ScenarioSemanticError("sync mode forces g = 0 and epsilon = 0");
    cfg.client.g = 0.0;
    cfg.client.epsilon = 0.0;
  }
  cfg.validate();
  return cfg;
}

ScenarioConfig load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string scenario_grammar_help() {
  return
      "Scenario files are flat `key = value` lines; `#` starts a comment.\n"
      "Unknown or duplicate keys are errors. Keys and defaults:\n"
      "  mode = async            sync | async (sync forces g=0, epsilon=0)\n"
      "  seed = 1                default RNG seed (CLI --seed overrides)\n"
      "  horizon = 3000          control ticks to run\n"
      "  client.n = 50           actions per chunk\n"
      "  client.g = 0.7          queue threshold fraction in [0,1]\n"
      "  client.epsilon = 0      similarity threshold (0 = filter off)\n"
      "  client.dt_ms = 33       control period, ms\n"
      "  client.aggregation = replace    replace | blend:<alpha>\n"
      "  client.metric = l2      l2 | linf\n"
      "  latency.server = const:330     const:<ms> | uniform:<lo>:<hi> |\n"
      "                                 lognormal:<mu>:<sigma>:<lo>:<hi>\n"
      "  latency.c2s = const:0\n"
      "  latency.s2c = const:0\n"
      "  world.vmax = 0.05\n"
      "  world.grasp_radius = 0.06\n"
      "  world.place_radius = 0.06\n"
      "  world.agent = 0,0\n"
      "  world.cube = 1,0\n"
      "  world.box = 0.5,0.8\n"
      "  world.cycle = false     respawn the cube after each episode\n"
      "  world.disturbances =    `tick:x:y` items separated by `;`\n";
}

}  // namespace ainfer
