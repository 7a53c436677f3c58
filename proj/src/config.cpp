#include "dilemma/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "dilemma/errors.hpp"

namespace dilemma {

using nlohmann::json;

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"analyze", "match",       "tournament", "evolve",
                                              "lattice", "region-scan", "coevolve"};
  return names;
}

namespace {

// Reads the fields of one JSON object and rejects anything it did not read.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ValidationError(path_, "expected an object");
  }

  std::string at(const std::string& key) const { return path_ + "." + key; }
  bool has(const std::string& key) const { return j_.contains(key); }

  const json& raw(const std::string& key) {
    seen_.insert(key);
    if (!j_.contains(key)) throw ValidationError(at(key), "missing required field");
    return j_.at(key);
  }

  template <typename T>
  T get(const std::string& key, T fallback) {
    if (!j_.contains(key)) return fallback;
    return convert<T>(raw(key), at(key));
  }

  template <typename T>
  T require(const std::string& key) {
    return convert<T>(raw(key), at(key));
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key())) throw ValidationError(at(it.key()), "unknown field");
    }
  }

  template <typename T>
  static T convert(const json& v, const std::string& path) {
    if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) throw ValidationError(path, "expected a boolean");
    } else if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer()) throw ValidationError(path, "expected an integer");
      if constexpr (std::is_unsigned_v<T>) {
        if (v.is_number_unsigned()) return v.get<T>();
        if (v.get<std::int64_t>() < 0) throw ValidationError(path, "expected a nonnegative integer");
      }
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!v.is_number()) throw ValidationError(path, "expected a number");
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string()) throw ValidationError(path, "expected a string");
    }
    try {
      return v.get<T>();
    } catch (const json::exception& e) {
      throw ValidationError(path, e.what());
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

void check(bool ok, const std::string& path, const std::string& what) {
  if (!ok) throw ValidationError(path, what);
}

template <typename T>
std::vector<T> read_list(const json& v, const std::string& path) {
  check(v.is_array(), path, "expected an array");
  std::vector<T> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(ObjectReader::convert<T>(v[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

Eigen::Matrix2d read_matrix(const json& v, const std::string& path) {
  check(v.is_array() && v.size() == 2, path, "expected a 2x2 array");
  Eigen::Matrix2d m;
  for (int i = 0; i < 2; ++i) {
    const auto row = read_list<double>(v[i], path + "[" + std::to_string(i) + "]");
    check(row.size() == 2, path, "expected a 2x2 array");
    m(i, 0) = row[0];
    m(i, 1) = row[1];
  }
  return m;
}

Game2x2 parse_game(const json& j, const std::string& path) {
  if (j.is_string()) {
    const auto name = j.get<std::string>();
    if (name == "pd") return prisoners_dilemma();
    if (name == "chicken") return chicken();
    if (name == "due_care") return due_care_game();
    throw ValidationError(path, "unknown game preset '" + name + "'");
  }
  ObjectReader r(j, path);
  const auto name = r.get<std::string>("name", "game");
  GameClass tag = GameClass::Custom;
  if (r.has("class")) {
    try {
      tag = game_class_from_string(r.require<std::string>("class"));
    } catch (const std::invalid_argument& e) {
      throw ValidationError(r.at("class"), e.what());
    }
  }
  std::array<std::array<std::string, 2>, 2> actions{{{"C", "D"}, {"C", "D"}}};
  if (r.has("actions")) {
    const json& a = r.raw("actions");
    check(a.is_array() && a.size() == 2, r.at("actions"), "expected two label pairs");
    for (int p = 0; p < 2; ++p) {
      const auto labels = read_list<std::string>(a[p], r.at("actions") + "[" + std::to_string(p) + "]");
      check(labels.size() == 2, r.at("actions"), "expected two labels per player");
      actions[p] = {labels[0], labels[1]};
    }
  }
  try {
    if (r.has("row") || r.has("col")) {
      const Eigen::Matrix2d row = read_matrix(r.raw("row"), r.at("row"));
      const Eigen::Matrix2d col = read_matrix(r.raw("col"), r.at("col"));
      r.finish();
      return make_game(name, row, col, tag, actions);
    }
    const double T = r.require<double>("T"), R = r.require<double>("R");
    const double P = r.require<double>("P"), S = r.require<double>("S");
    r.finish();
    Game2x2 g = make_game(name, T, R, P, S, tag);
    g.actions = actions;
    return g;
  } catch (const OrderingViolation& e) {
    throw ValidationError(path, e.what());
  }
}

PhiSpec parse_phi(const json& v, const std::string& path) {
  if (v.is_number()) {
    const double phi = v.get<double>();
    check(phi > 0, path, "phi must be positive");
    return PhiSpec::absolute(phi);
  }
  if (v.is_object()) {
    ObjectReader r(v, path);
    const double f = r.require<double>("fraction_of_max");
    r.finish();
    check(f > 0 && f <= 1, path, "fraction_of_max must lie in (0, 1]");
    return PhiSpec::fraction_of_max(f);
  }
  check(v.is_string(), path, "phi must be a number, \"max\" or \"max/<k>\"");
  const auto s = v.get<std::string>();
  if (s == "max") return PhiSpec::fraction_of_max(1.0);
  if (s.rfind("max/", 0) == 0) {
    double k = 0;
    try {
      std::size_t used = 0;
      k = std::stod(s.substr(4), &used);
      check(used == s.size() - 4, path, "bad phi divisor");
    } catch (const std::logic_error&) {
      throw ValidationError(path, "bad phi divisor in '" + s + "'");
    }
    check(k >= 1, path, "phi divisor must be >= 1");
    return PhiSpec::fraction_of_max(1.0 / k);
  }
  throw ValidationError(path, "phi must be a number, \"max\" or \"max/<k>\"");
}

StrategyEntry parse_entry(const json& v, const std::string& path) {
  StrategyEntry e;
  if (v.is_string()) {
    e.source = StrategyEntry::Source::Catalog;
    e.catalog = e.name = v.get<std::string>();
    const auto& names = classic_names();
    check(std::find(names.begin(), names.end(), e.catalog) != names.end(), path,
          "unknown strategy '" + e.catalog + "'");
    return e;
  }
  ObjectReader r(v, path);
  e.name = r.require<std::string>("name");
  check(!e.name.empty(), r.at("name"), "name must not be empty");
  const int forms = int(r.has("zd")) + int(r.has("p")) + int(r.has("catalog"));
  check(forms == 1, path, "entry needs exactly one of 'catalog', 'zd' or 'p'");
  if (r.has("catalog")) {
    e.source = StrategyEntry::Source::Catalog;
    e.catalog = r.require<std::string>("catalog");
    const auto& names = classic_names();
    check(std::find(names.begin(), names.end(), e.catalog) != names.end(), r.at("catalog"),
          "unknown strategy '" + e.catalog + "'");
  } else if (r.has("zd")) {
    e.source = StrategyEntry::Source::Zd;
    ObjectReader z(r.raw("zd"), r.at("zd"));
    try {
      e.zd.kind = zd_kind_from_string(z.require<std::string>("kind"));
    } catch (const std::invalid_argument& ex) {
      throw ValidationError(z.at("kind"), ex.what());
    }
    if (e.zd.kind == ZdKind::Equalizer) {
      e.zd.target = z.require<double>("target");
      e.zd.chi = 1.0;
    } else {
      e.zd.chi = z.require<double>("chi");
      check(e.zd.chi >= 1, z.at("chi"), "chi must be >= 1");
    }
    e.zd.phi = z.has("phi") ? parse_phi(z.raw("phi"), z.at("phi")) : PhiSpec::fraction_of_max(0.5);
    z.finish();
  } else {
    e.source = StrategyEntry::Source::Explicit;
    const auto p = read_list<double>(r.raw("p"), r.at("p"));
    check(p.size() == 4, r.at("p"), "expected four probabilities (CC, CD, DC, DD)");
    for (int i = 0; i < 4; ++i) {
      check(p[i] >= 0 && p[i] <= 1, r.at("p"), "probabilities must lie in [0, 1]");
      e.coop(i) = p[i];
    }
    e.initial = r.get<double>("initial", 1.0);
    check(e.initial >= 0 && e.initial <= 1, r.at("initial"), "initial must lie in [0, 1]");
  }
  r.finish();
  return e;
}

std::vector<StrategyEntry> parse_roster(const json& v, const std::string& path) {
  if (v.is_string()) {
    try {
      return roster_preset(v.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ValidationError(path, e.what());
    }
  }
  check(v.is_array(), path, "expected a preset name or a list of strategies");
  std::vector<StrategyEntry> out;
  std::set<std::string> names;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    out.push_back(parse_entry(v[i], p));
    check(names.insert(out.back().name).second, p, "duplicate strategy name '" + out.back().name + "'");
  }
  return out;
}

void check_probability(double v, const std::string& path) {
  check(v >= 0 && v <= 1, path, "must lie in [0, 1]");
}

EvolveSection parse_evolve(ObjectReader& r) {
  EvolveSection s;
  s.population = r.get<std::int64_t>("population", s.population);
  check(s.population >= 2, r.at("population"), "population must be >= 2");
  if (r.has("initial")) {
    const json& init = r.raw("initial");
    check(init.is_object(), r.at("initial"), "expected an object of strategy counts");
    for (auto it = init.begin(); it != init.end(); ++it) {
      s.initial[it.key()] =
          ObjectReader::convert<std::int64_t>(it.value(), r.at("initial") + "." + it.key());
      check(s.initial[it.key()] >= 0, r.at("initial") + "." + it.key(), "count must be >= 0");
    }
  }
  s.beta = r.get<double>("beta", s.beta);
  check(s.beta >= 0, r.at("beta"), "beta must be >= 0");
  s.mutation = r.get<double>("mutation", s.mutation);
  check_probability(s.mutation, r.at("mutation"));
  s.steps = r.get<std::int64_t>("steps", s.steps);
  check(s.steps >= 0, r.at("steps"), "steps must be >= 0");
  s.record_every = r.get<std::int64_t>("record_every", s.record_every);
  check(s.record_every >= 1, r.at("record_every"), "record_every must be >= 1");
  try {
    s.process = process_from_string(r.get<std::string>("process", "fermi"));
  } catch (const std::invalid_argument& e) {
    throw ValidationError(r.at("process"), e.what());
  }
  s.noise = r.get<double>("noise", s.noise);
  check(s.noise >= 0 && s.noise <= 0.5, r.at("noise"), "noise must lie in [0, 0.5]");
  s.replicates = r.get<int>("replicates", s.replicates);
  check(s.replicates >= 1, r.at("replicates"), "replicates must be >= 1");
  return s;
}

void check_initial(const EvolveSection& s, const std::vector<StrategyEntry>& roster,
                   const std::string& path) {
  if (s.initial.empty()) return;
  std::int64_t total = 0;
  for (const auto& [name, count] : s.initial) {
    const bool known = std::any_of(roster.begin(), roster.end(),
                                   [&](const StrategyEntry& e) { return e.name == name; });
    check(known, path + ".initial." + name, "not in the roster");
    total += count;
  }
  check(total == s.population, path + ".initial", "counts must sum to the population size");
}

}  // namespace

std::vector<StrategyEntry> roster_preset(const std::string& name) {
  if (name != "figure3") throw std::invalid_argument("unknown roster preset '" + name + "'");
  std::vector<StrategyEntry> out;
  StrategyEntry g;
  g.source = StrategyEntry::Source::Zd;
  g.name = "ZDGTFT-2";
  g.zd = {ZdKind::Generous, 2.0, PhiSpec::fraction_of_max(0.5)};
  out.push_back(g);
  StrategyEntry e = g;
  e.name = "Extort-2";
  e.zd.kind = ZdKind::Extortionate;
  out.push_back(e);
  for (const char* c : {"TFT", "GTFT", "WSLS", "AllC", "AllD", "Grim", "Random"}) {
    StrategyEntry s;
    s.source = StrategyEntry::Source::Catalog;
    s.name = s.catalog = c;
    out.push_back(s);
  }
  return out;
}

MemoryOneStrategy resolve(const StrategyEntry& e, const Game2x2& game) {
  switch (e.source) {
    case StrategyEntry::Source::Catalog: {
      MemoryOneStrategy s = classic(e.catalog, game);
      s.name = e.name;
      return s;
    }
    case StrategyEntry::Source::Zd: return compile_zd(game, e.zd, e.name);
    case StrategyEntry::Source::Explicit: return make_memory_one(e.name, e.coop, e.initial);
  }
  throw std::logic_error("unreachable");
}

std::vector<MemoryOneStrategy> resolve(const std::vector<StrategyEntry>& roster, const Game2x2& game) {
  std::vector<MemoryOneStrategy> out;
  for (const auto& e : roster) out.push_back(resolve(e, game));
  return out;
}

ExperimentConfig parse_config(const json& j) {
  ObjectReader r(j, "$");
  ExperimentConfig c;
  c.schema_version = r.get<int>("schema_version", kSchemaVersion);
  check(c.schema_version == kSchemaVersion, r.at("schema_version"),
        "unsupported schema version " + std::to_string(c.schema_version));
  c.command = r.get<std::string>("command", "");
  if (!c.command.empty()) {
    const auto& names = command_names();
    check(std::find(names.begin(), names.end(), c.command) != names.end(), r.at("command"),
          "unknown command '" + c.command + "'");
  }
  c.seed = r.get<std::uint64_t>("seed", kDefaultSeed);
  c.output_dir = r.get<std::string>("output_dir", "out");

  const bool lattice_defaults = c.command == "lattice";
  if (r.has("game")) {
    c.game = parse_game(r.raw("game"), r.at("game"));
  } else if (lattice_defaults) {
    c.game = snowdrift(1.0, 0.2);
  }
  if (r.has("roster")) {
    c.roster = parse_roster(r.raw("roster"), r.at("roster"));
  } else if (lattice_defaults) {
    StrategyEntry szd;
    szd.source = StrategyEntry::Source::Zd;
    szd.name = "sZD";
    szd.zd = {ZdKind::Generous, 2.0, PhiSpec::fraction_of_max(0.5)};
    StrategyEntry alld;
    alld.name = alld.catalog = "AllD";
    c.roster = {szd, alld};
  } else if (c.command == "tournament") {
    c.roster = roster_preset("figure3");
  } else if (c.command == "evolve" || c.command == "coevolve") {
    c.roster = roster_preset("figure3");
    c.roster = {c.roster[6], c.roster[1], c.roster[0]};  // AllD, Extort-2, ZDGTFT-2
  }

  // Resolving the roster surfaces infeasible ZD specs with their path.
  for (std::size_t i = 0; i < c.roster.size(); ++i) {
    try {
      resolve(c.roster[i], c.game);
    } catch (const std::exception& e) {
      throw ValidationError(r.at("roster") + "[" + std::to_string(i) + "]", e.what());
    }
  }

  auto section = [&](const char* key, const std::string& cmd) {
    return r.has(key) || c.command == cmd;
  };
  static const json empty = json::object();
  auto section_json = [&](const char* key) -> const json& { return r.has(key) ? r.raw(key) : empty; };

  if (section("analyze", "analyze")) {
    ObjectReader s(section_json("analyze"), r.at("analyze"));
    AnalyzeSection a;
    if (s.has("travelers")) {
      ObjectReader t(s.raw("travelers"), s.at("travelers"));
      a.travelers.low = t.get<int>("low", 2);
      a.travelers.high = t.get<int>("high", 100);
      a.travelers.bonus = t.get<double>("bonus", 2.0);
      t.finish();
    }
    try {
      validate(a.travelers);
    } catch (const std::invalid_argument& e) {
      throw ValidationError(s.at("travelers"), e.what());
    }
    if (s.has("threshold")) {
      ObjectReader t(s.raw("threshold"), s.at("threshold"));
      a.threshold.n_players = t.get<int>("players", 8);
      a.threshold.threshold = t.get<int>("threshold", 4);
      a.threshold.benefit = t.get<double>("benefit", 10.0);
      a.threshold.cost = t.get<double>("cost", 4.0);
      t.finish();
    }
    try {
      validate(a.threshold);
    } catch (const std::invalid_argument& e) {
      throw ValidationError(s.at("threshold"), e.what());
    }
    s.finish();
    c.analyze = a;
  }

  if (section("match", "match")) {
    ObjectReader s(section_json("match"), r.at("match"));
    MatchSection m;
    auto lookup = [&](const char* key) {
      const json& v = s.raw(key);
      if (v.is_string()) {
        for (const auto& e : c.roster)
          if (e.name == v.get<std::string>()) return e;
      }
      return parse_entry(v, s.at(key));
    };
    m.x = lookup("x");
    m.y = lookup("y");
    for (const auto* e : {&m.x, &m.y}) {
      try {
        resolve(*e, c.game);
      } catch (const std::exception& ex) {
        throw ValidationError(s.at(e == &m.x ? "x" : "y"), ex.what());
      }
    }
    m.params.rounds = s.get<std::int64_t>("rounds", 100000);
    check(m.params.rounds >= 1, s.at("rounds"), "rounds must be >= 1");
    m.params.noise_eps = s.get<double>("noise", 0.0);
    check(m.params.noise_eps >= 0 && m.params.noise_eps <= 0.5, s.at("noise"),
          "noise must lie in [0, 0.5]");
    m.params.seed = c.seed;
    const auto scoring = s.get<std::string>("scoring", "both");
    if (scoring == "exact") m.scoring = MatchScoring::Exact;
    else if (scoring == "simulated") m.scoring = MatchScoring::Simulated;
    else if (scoring == "both") m.scoring = MatchScoring::Both;
    else throw ValidationError(s.at("scoring"), "expected exact, simulated or both");
    s.finish();
    c.match = m;
  }

  if (section("tournament", "tournament")) {
    ObjectReader s(section_json("tournament"), r.at("tournament"));
    TournamentSection t;
    t.rounds = s.get<std::int64_t>("rounds", t.rounds);
    check(t.rounds >= 1, s.at("rounds"), "rounds must be >= 1");
    t.noise = s.get<double>("noise", t.noise);
    check(t.noise >= 0 && t.noise <= 0.5, s.at("noise"), "noise must lie in [0, 0.5]");
    t.replicates = s.get<int>("replicates", t.replicates);
    check(t.replicates >= 1, s.at("replicates"), "replicates must be >= 1");
    t.self_play = s.get<bool>("self_play", t.self_play);
    try {
      t.scoring = scoring_from_string(s.get<std::string>("scoring", "exact"));
    } catch (const std::invalid_argument& e) {
      throw ValidationError(s.at("scoring"), e.what());
    }
    s.finish();
    check(c.roster.size() >= 2, r.at("roster"), "tournament needs at least 2 strategies");
    c.tournament = t;
  }

  if (section("evolve", "evolve")) {
    ObjectReader s(section_json("evolve"), r.at("evolve"));
    c.evolve = parse_evolve(s);
    s.finish();
    check(!c.roster.empty(), r.at("roster"), "evolve needs a roster");
    check_initial(*c.evolve, c.roster, r.at("evolve"));
  }

  if (section("coevolve", "coevolve")) {
    ObjectReader s(section_json("coevolve"), r.at("coevolve"));
    CoevolveSection co;
    co.evolution = parse_evolve(s);
    co.kernel.rate = s.get<double>("payoff_rate", co.kernel.rate);
    check_probability(co.kernel.rate, s.at("payoff_rate"));
    co.kernel.delta = s.get<double>("delta", co.kernel.delta);
    check(co.kernel.delta >= 0, s.at("delta"), "delta must be >= 0");
    co.kernel.drift = s.get<double>("drift", co.kernel.drift);
    s.finish();
    check(!c.roster.empty(), r.at("roster"), "coevolve needs a roster");
    check(c.game.symmetric(), r.at("game"), "coevolve needs a symmetric game");
    try {
      make_game(c.game.name, c.game.T(), c.game.R(), c.game.P(), c.game.S(),
                GameClass::PrisonersDilemma);
    } catch (const OrderingViolation& e) {
      throw ValidationError(r.at("game"), e.what());
    }
    check_initial(co.evolution, c.roster, r.at("coevolve"));
    c.coevolve = co;
  }

  if (section("lattice", "lattice")) {
    ObjectReader s(section_json("lattice"), r.at("lattice"));
    LatticeSection l;
    l.side = s.get<int>("side", l.side);
    check(l.side >= 8, s.at("side"), "side must be >= 8");
    l.epochs = s.get<std::int64_t>("epochs", l.epochs);
    check(l.epochs >= 0, s.at("epochs"), "epochs must be >= 0");
    l.beta = s.get<double>("beta", l.beta);
    check(l.beta >= 0, s.at("beta"), "beta must be >= 0");
    l.mutation = s.get<double>("mutation", l.mutation);
    check_probability(l.mutation, s.at("mutation"));
    try {
      l.neighborhood = neighborhood_from_string(s.get<std::string>("neighborhood", "von_neumann"));
    } catch (const std::invalid_argument& e) {
      throw ValidationError(s.at("neighborhood"), e.what());
    }
    try {
      l.update = update_rule_from_string(s.get<std::string>("update", "async"));
    } catch (const std::invalid_argument& e) {
      throw ValidationError(s.at("update"), e.what());
    }
    l.initial_fraction = s.get<double>("initial_fraction", l.initial_fraction);
    check_probability(l.initial_fraction, s.at("initial_fraction"));
    if (s.has("snapshots")) l.snapshots = read_list<std::int64_t>(s.raw("snapshots"), s.at("snapshots"));
    l.svg = s.get<bool>("svg", l.svg);
    l.noise = s.get<double>("noise", l.noise);
    check(l.noise >= 0 && l.noise <= 0.5, s.at("noise"), "noise must lie in [0, 0.5]");
    l.replicates = s.get<int>("replicates", l.replicates);
    check(l.replicates >= 1, s.at("replicates"), "replicates must be >= 1");
    if (s.has("cooperators")) {
      l.cooperators = read_list<std::string>(s.raw("cooperators"), s.at("cooperators"));
    } else {
      for (const auto& e : c.roster) {
        if (resolve(e, c.game).coop(0) > 0.5) l.cooperators.push_back(e.name);
      }
    }
    for (const auto& name : l.cooperators) {
      check(std::any_of(c.roster.begin(), c.roster.end(),
                        [&](const StrategyEntry& e) { return e.name == name; }),
            s.at("cooperators"), "'" + name + "' is not in the roster");
    }
    s.finish();
    check(c.roster.size() >= 2, r.at("roster"), "lattice needs at least 2 strategies");
    check(c.roster.size() < 65536, r.at("roster"), "lattice roster too large");
    c.lattice = l;
  }

  if (section("region_scan", "region-scan")) {
    ObjectReader s(section_json("region_scan"), r.at("region_scan"));
    RegionScanSection rs;
    rs.game.n_players = s.get<int>("players", rs.game.n_players);
    rs.game.threshold = s.get<int>("threshold", rs.game.threshold);
    rs.game.benefit = s.get<double>("benefit", rs.game.benefit);
    rs.game.cost = s.get<double>("cost", rs.game.cost);
    try {
      validate(rs.game);
    } catch (const std::invalid_argument& e) {
      throw ValidationError(r.at("region_scan"), e.what());
    }
    if (s.has("thresholds")) {
      rs.thresholds = read_list<int>(s.raw("thresholds"), s.at("thresholds"));
      for (int m : rs.thresholds) {
        check(m >= 1 && m <= rs.game.n_players, s.at("thresholds"), "threshold out of range");
        check(rs.game.benefit > rs.game.cost / m, s.at("thresholds"),
              "benefit must exceed cost / threshold");
      }
    } else {
      for (int m = 1; m <= rs.game.n_players; ++m)
        if (rs.game.benefit > rs.game.cost / m) rs.thresholds.push_back(m);
    }
    if (s.has("chi")) {
      rs.chis = read_list<double>(s.raw("chi"), s.at("chi"));
      for (double x : rs.chis) check(x >= 1, s.at("chi"), "chi values must be >= 1");
    } else {
      for (int k = 0; k <= 20; ++k) rs.chis.push_back(1.0 + 0.01 * k);
    }
    if (s.has("baselines")) {
      rs.baselines = read_list<double>(s.raw("baselines"), s.at("baselines"));
    } else {
      const double lo = threshold_payoffs(rs.game, 0).defector;
      const double hi = *threshold_payoffs(rs.game, rs.game.n_players).cooperator;
      for (int k = 0; k <= 10; ++k) rs.baselines.push_back(lo + (hi - lo) * k / 10.0);
    }
    s.finish();
    c.region_scan = rs;
  }

  r.finish();
  return c;
}

ExperimentConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  return parse_config(j);
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

json to_json(const Game2x2& g) {
  auto mat = [](const Eigen::Matrix2d& m) {
    return json::array({json::array({m(0, 0), m(0, 1)}), json::array({m(1, 0), m(1, 1)})});
  };
  return {{"name", g.name},
          {"class", std::string(to_string(g.tag))},
          {"row", mat(g.row)},
          {"col", mat(g.col)},
          {"actions", json::array({json::array({g.actions[0][0], g.actions[0][1]}),
                                   json::array({g.actions[1][0], g.actions[1][1]})})}};
}

namespace {

json phi_to_json(const PhiSpec& phi) {
  if (phi.mode == PhiSpec::Mode::Absolute) return phi.value;
  if (phi.value == 1.0) return "max";
  const double k = 1.0 / phi.value;
  if (k == std::round(k) && 1.0 / k == phi.value) {
    return "max/" + std::to_string(static_cast<long long>(k));
  }
  return {{"fraction_of_max", phi.value}};
}

json evolve_to_json(const EvolveSection& s) {
  json init = json::object();
  for (const auto& [k, v] : s.initial) init[k] = v;
  return {{"population", s.population},
          {"initial", init},
          {"beta", s.beta},
          {"mutation", s.mutation},
          {"steps", s.steps},
          {"record_every", s.record_every},
          {"process", std::string(to_string(s.process))},
          {"noise", s.noise},
          {"replicates", s.replicates}};
}

}  // namespace

json to_json(const StrategyEntry& e) {
  switch (e.source) {
    case StrategyEntry::Source::Catalog:
      if (e.name == e.catalog) return e.catalog;
      return {{"name", e.name}, {"catalog", e.catalog}};
    case StrategyEntry::Source::Zd: {
      json zd = {{"kind", std::string(to_string(e.zd.kind))}, {"phi", phi_to_json(e.zd.phi)}};
      if (e.zd.kind == ZdKind::Equalizer) zd["target"] = e.zd.target;
      else zd["chi"] = e.zd.chi;
      return {{"name", e.name}, {"zd", zd}};
    }
    case StrategyEntry::Source::Explicit:
      return {{"name", e.name},
              {"p", json::array({e.coop(0), e.coop(1), e.coop(2), e.coop(3)})},
              {"initial", e.initial}};
  }
  return nullptr;
}

json to_json(const ExperimentConfig& c) {
  json j = {{"schema_version", c.schema_version},
            {"seed", c.seed},
            {"output_dir", c.output_dir},
            {"game", to_json(c.game)}};
  if (!c.command.empty()) j["command"] = c.command;
  json roster = json::array();
  for (const auto& e : c.roster) roster.push_back(to_json(e));
  j["roster"] = roster;

  if (c.analyze) {
    const auto& a = *c.analyze;
    j["analyze"] = {{"travelers", {{"low", a.travelers.low}, {"high", a.travelers.high},
                                   {"bonus", a.travelers.bonus}}},
                    {"threshold", {{"players", a.threshold.n_players},
                                   {"threshold", a.threshold.threshold},
                                   {"benefit", a.threshold.benefit},
                                   {"cost", a.threshold.cost}}}};
  }
  if (c.match) {
    const auto& m = *c.match;
    const char* scoring = m.scoring == MatchScoring::Exact ? "exact"
                          : m.scoring == MatchScoring::Simulated ? "simulated"
                                                                 : "both";
    j["match"] = {{"x", to_json(m.x)}, {"y", to_json(m.y)}, {"rounds", m.params.rounds},
                  {"noise", m.params.noise_eps}, {"scoring", scoring}};
  }
  if (c.tournament) {
    const auto& t = *c.tournament;
    j["tournament"] = {{"rounds", t.rounds},         {"noise", t.noise},
                       {"replicates", t.replicates}, {"self_play", t.self_play},
                       {"scoring", std::string(to_string(t.scoring))}};
  }
  if (c.evolve) j["evolve"] = evolve_to_json(*c.evolve);
  if (c.coevolve) {
    json co = evolve_to_json(c.coevolve->evolution);
    co["payoff_rate"] = c.coevolve->kernel.rate;
    co["delta"] = c.coevolve->kernel.delta;
    co["drift"] = c.coevolve->kernel.drift;
    j["coevolve"] = co;
  }
  if (c.lattice) {
    const auto& l = *c.lattice;
    j["lattice"] = {{"side", l.side},
                    {"epochs", l.epochs},
                    {"beta", l.beta},
                    {"mutation", l.mutation},
                    {"neighborhood", std::string(to_string(l.neighborhood))},
                    {"update", std::string(to_string(l.update))},
                    {"initial_fraction", l.initial_fraction},
                    {"snapshots", l.snapshots},
                    {"svg", l.svg},
                    {"noise", l.noise},
                    {"replicates", l.replicates},
                    {"cooperators", l.cooperators}};
  }
  if (c.region_scan) {
    const auto& r = *c.region_scan;
    j["region_scan"] = {{"players", r.game.n_players}, {"threshold", r.game.threshold},
                        {"benefit", r.game.benefit},   {"cost", r.game.cost},
                        {"thresholds", r.thresholds},  {"chi", r.chis},
                        {"baselines", r.baselines}};
  }
  return j;
}

}  // namespace dilemma
