#ifndef DILEMMA_CONFIG_HPP
#define DILEMMA_CONFIG_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "dilemma/game.hpp"
#include "dilemma/lattice.hpp"
#include "dilemma/match.hpp"
#include "dilemma/population.hpp"
#include "dilemma/strategy.hpp"
#include "dilemma/tournament.hpp"

namespace dilemma {

constexpr int kSchemaVersion = 1;

const std::vector<std::string>& command_names();

/// A roster entry as written in the config: a catalog name, a ZD
/// specification, or explicit probabilities.
struct StrategyEntry {
  enum class Source { Catalog, Zd, Explicit };
  Source source = Source::Catalog;
  std::string name;
  std::string catalog;  // Catalog
  ZdSpec zd{};          // Zd
  Eigen::Vector4d coop = Eigen::Vector4d::Zero();  // Explicit
  double initial = 1.0;                            // Explicit

  bool operator==(const StrategyEntry&) const = default;
};

MemoryOneStrategy resolve(const StrategyEntry& entry, const Game2x2& game);
std::vector<MemoryOneStrategy> resolve(const std::vector<StrategyEntry>& roster, const Game2x2& game);

/// Roster presets addressable by name ("figure3").
std::vector<StrategyEntry> roster_preset(const std::string& name);

struct AnalyzeSection {
  TravelersDilemma travelers{};
  ThresholdGame threshold{};
  bool operator==(const AnalyzeSection&) const = default;
};

enum class MatchScoring { Exact, Simulated, Both };

struct MatchSection {
  StrategyEntry x, y;
  MatchParams params{};
  MatchScoring scoring = MatchScoring::Both;
  bool operator==(const MatchSection&) const = default;
};

struct TournamentSection {
  std::int64_t rounds = 200;
  double noise = 0.0;
  int replicates = 50;
  bool self_play = true;
  Scoring scoring = Scoring::ExactStationary;
  bool operator==(const TournamentSection&) const = default;
};

struct EvolveSection {
  std::int64_t population = 100;
  std::map<std::string, std::int64_t> initial;  // empty: everyone plays roster[0]
  double beta = 1.0;
  double mutation = 0.01;
  std::int64_t steps = 100000;
  std::int64_t record_every = 100;
  Process process = Process::PairwiseFermi;
  double noise = 0.0;
  int replicates = 1;
  bool operator==(const EvolveSection&) const = default;
};

struct LatticeSection {
  int side = 100;
  std::int64_t epochs = 1000;
  double beta = 10.0;
  double mutation = 0.0;
  Neighborhood neighborhood = Neighborhood::VonNeumann4;
  UpdateRule update = UpdateRule::Asynchronous;
  double initial_fraction = 0.5;  // share of roster[0] at start
  std::vector<std::int64_t> snapshots{0, 10, 1000};
  bool svg = true;
  double noise = 0.0;
  int replicates = 1;
  std::vector<std::string> cooperators;  // empty: roster entries with p_cc > 1/2
  bool operator==(const LatticeSection&) const = default;
};

struct RegionScanSection {
  ThresholdGame game{};
  std::vector<int> thresholds;  // empty: 1..N
  std::vector<double> chis;     // empty: 1.00, 1.01, ..., 1.20
  std::vector<double> baselines;  // empty: 11 points from b_0 to a_{N-1}
  bool operator==(const RegionScanSection&) const = default;
};

struct CoevolveSection {
  EvolveSection evolution{};
  PayoffMutation kernel{};
  bool operator==(const CoevolveSection&) const = default;
};

/// Fully resolved experiment: every default is materialized so the config
/// serializes back to an equivalent file.
struct ExperimentConfig {
  int schema_version = kSchemaVersion;
  std::string command;
  std::uint64_t seed = kDefaultSeed;
  std::string output_dir = "out";
  Game2x2 game = prisoners_dilemma();
  std::vector<StrategyEntry> roster;

  std::optional<AnalyzeSection> analyze;
  std::optional<MatchSection> match;
  std::optional<TournamentSection> tournament;
  std::optional<EvolveSection> evolve;
  std::optional<LatticeSection> lattice;
  std::optional<RegionScanSection> region_scan;
  std::optional<CoevolveSection> coevolve;

  bool operator==(const ExperimentConfig&) const = default;
};

/// Strict: unknown fields, bad ranges, unknown strategies and ordering
/// violations raise ValidationError naming the JSON path.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);

nlohmann::json to_json(const ExperimentConfig& config);
nlohmann::json to_json(const Game2x2& game);
nlohmann::json to_json(const StrategyEntry& entry);

}  // namespace dilemma

#endif  // DILEMMA_CONFIG_HPP
