#include "dilemma/report.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "dilemma/errors.hpp"
#include "dilemma/multiplayer.hpp"
#include "dilemma/parallel.hpp"

namespace dilemma {

using nlohmann::json;
namespace fs = std::filesystem;

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0) return "0";  // folds -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != header_.size()) throw std::logic_error("csv row width mismatch");
  rows_.push_back(std::move(cells));
}

namespace {

std::string quote(const std::string& cell) {
  if (cell.find_first_of(",\"\r\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char ch : cell) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

void append_line(std::string& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += quote(cells[i]);
  }
  out += '\n';
}

}  // namespace

std::string CsvTable::str() const {
  std::string out;
  append_line(out, header_);
  for (const auto& r : rows_) append_line(out, r);
  return out;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

namespace {

std::string num(double v) { return format_number(v); }
std::string num(std::int64_t v) { return std::to_string(v); }
std::string yes_no(bool b) { return b ? "true" : "false"; }

std::string profile_label(const Game2x2& g, const ActionProfile& p) {
  return "(" + g.action_label(Player::Row, p.row) + "," + g.action_label(Player::Col, p.col) + ")";
}

// ---------------------------------------------------------------- analyze

RunOutput run_analyze(const ExperimentConfig& c) {
  const auto& a = *c.analyze;
  const Game2x2& g = c.game;
  CsvTable t({"game", "item", "value"});
  auto dominant = [&](Player p) {
    const auto d = strict_dominant_strategy(g, p);
    return d ? g.action_label(p, *d) : std::string("none");
  };
  t.add_row({g.name, "dominant_row", dominant(Player::Row)});
  t.add_row({g.name, "dominant_col", dominant(Player::Col)});
  const auto nash = pure_nash_equilibria(g);
  std::string labels;
  for (const auto& p : nash) labels += (labels.empty() ? "" : ";") + profile_label(g, p);
  t.add_row({g.name, "pure_nash", labels.empty() ? "none" : labels});
  t.add_row({g.name, "pure_nash_count", std::to_string(nash.size())});
  t.add_row({g.name, "unique_nash", yes_no(nash.size() == 1)});
  if (g.symmetric()) {
    const auto range = enforceable_opponent_range(g);
    t.add_row({g.name, "enforceable_lo", num(range.lo)});
    t.add_row({g.name, "enforceable_hi", num(range.hi)});
  }
  if (g.tag == GameClass::PrisonersDilemma) {
    t.add_row({g.name, "gtft_generosity", num(gtft_generosity(g))});
  }
  const auto [na, nb] = travelers_nash(a.travelers);
  t.add_row({"travelers", "pure_nash", "(" + std::to_string(na) + "," + std::to_string(nb) + ")"});
  t.add_row({"travelers", "unique_nash", "true"});

  CsvTable th({"cooperators", "cooperator_payoff", "defector_payoff", "group_total"});
  const int n = a.threshold.n_players;
  for (int k = 0; k <= n; ++k) {
    const auto p = threshold_payoffs(a.threshold, k);
    const double total = (p.cooperator ? k * *p.cooperator : 0.0) + (n - k) * p.defector;
    th.add_row({std::to_string(k), p.cooperator ? num(*p.cooperator) : "", k < n ? num(p.defector) : "",
                num(total)});
  }
  RunOutput out;
  out.files = {{"analysis.csv", t.str()}, {"threshold_payoffs.csv", th.str()}};
  out.summary = {{"pure_nash", labels}, {"travelers_nash", {na, nb}}};
  return out;
}

// ---------------------------------------------------------------- match

struct Relation {
  bool present = false;
  double baseline = 0, chi = 1;
  bool equalizer = false;
};

Relation relation_of(const StrategyEntry& e, const Game2x2& g) {
  if (e.source != StrategyEntry::Source::Zd) return {};
  return {true, zd_baseline(g, e.zd), e.zd.chi, e.zd.kind == ZdKind::Equalizer};
}

RunOutput run_match(const ExperimentConfig& c) {
  const auto& m = *c.match;
  const auto x = resolve(m.x, c.game);
  const auto y = resolve(m.y, c.game);
  const Relation rel = relation_of(m.x, c.game);
  CsvTable t({"x", "y", "method", "rounds", "noise", "s_x", "s_y", "stderr_x", "stderr_y",
              "relation_baseline", "relation_chi", "relation_residual"});
  json summary = json::array();
  auto add = [&](const PayoffPair& p, std::int64_t rounds) {
    std::string base, chi, resid;
    if (rel.present) {
      base = num(rel.baseline);
      if (rel.equalizer) {
        resid = num(p.s_y - rel.baseline);
      } else {
        chi = num(rel.chi);
        resid = num((p.s_x - rel.baseline) - rel.chi * (p.s_y - rel.baseline));
      }
    }
    t.add_row({x.name, y.name, std::string(to_string(p.method)), rounds ? num(rounds) : "",
               num(m.params.noise_eps), num(p.s_x), num(p.s_y), num(p.stderr_x), num(p.stderr_y), base,
               chi, resid});
    summary.push_back({{"method", to_string(p.method)}, {"s_x", p.s_x}, {"s_y", p.s_y}});
  };
  if (m.scoring != MatchScoring::Simulated) {
    add(long_run_payoffs(with_noise(x, m.params.noise_eps), with_noise(y, m.params.noise_eps), c.game),
        0);
  }
  if (m.scoring != MatchScoring::Exact) {
    MatchParams params = m.params;
    params.seed = derive_seed(c.seed, 0);
    add(simulate_match(x, y, c.game, params).payoffs, params.rounds);
  }
  RunOutput out;
  out.files = {{"match.csv", t.str()}};
  out.summary = {{"results", summary}};
  return out;
}

// ---------------------------------------------------------------- tournament

const char* outcome_label(Outcome o) {
  switch (o) {
    case Outcome::Win: return "win";
    case Outcome::Loss: return "loss";
    case Outcome::Draw: return "draw";
  }
  return "";
}

RunOutput run_tournament(const ExperimentConfig& c, int threads) {
  const auto& s = *c.tournament;
  TournamentConfig tc;
  tc.roster = resolve(c.roster, c.game);
  tc.game = c.game;
  tc.match.rounds = s.rounds;
  tc.match.noise_eps = s.noise;
  tc.match.seed = c.seed;
  tc.replicates = s.scoring == Scoring::Simulated ? s.replicates : 1;
  tc.include_self_play = s.self_play;
  tc.scoring = s.scoring;
  tc.threads = threads;
  const TournamentResult r = round_robin(tc);

  CsvTable rank({"rank", "name", "total", "total_sd", "wins", "losses", "draws"});
  for (std::size_t k = 0; k < r.rank.size(); ++k) {
    const int i = r.rank[k];
    rank.add_row({std::to_string(k + 1), r.names[i], num(r.total(i)), num(r.total_sd(i)),
                  std::to_string(r.wins[i]), std::to_string(r.losses[i]), std::to_string(r.draws[i])});
  }
  CsvTable pair({"row", "col", "payoff_row", "payoff_col", "outcome_row"});
  const int n = static_cast<int>(r.names.size());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j && !s.self_play) continue;
      pair.add_row({r.names[i], r.names[j], num(r.payoff(i, j)), num(r.payoff(j, i)),
                    outcome_label(r.outcome[i][j])});
    }
  }
  RunOutput out;
  out.files = {{"rankings.csv", rank.str()}, {"pairwise.csv", pair.str()}};
  json order = json::array();
  for (int i : r.rank) order.push_back(r.names[i]);
  out.summary = {{"ranking", order}};
  return out;
}

// ---------------------------------------------------------------- evolve

PopulationState initial_population(const EvolveSection& s, const std::vector<std::string>& names) {
  if (s.initial.empty()) return homogeneous(names, 0, s.population);
  PopulationState p{names, std::vector<std::int64_t>(names.size(), 0)};
  for (const auto& [name, count] : s.initial) p.counts[p.index_of(name)] = count;
  return p;
}

EvolutionParams evolution_params(const EvolveSection& s) {
  EvolutionParams p;
  p.selection_strength = s.beta;
  p.mutation_rate = s.mutation;
  p.generations = s.steps;
  p.process = s.process;
  p.record_every = s.record_every;
  return p;
}

std::vector<std::string> names_of(const std::vector<MemoryOneStrategy>& roster) {
  std::vector<std::string> out;
  for (const auto& s : roster) out.push_back(s.name);
  return out;
}

void add_trajectory(CsvTable& t, int replicate, const Trajectory& tr) {
  for (std::size_t k = 0; k < tr.steps.size(); ++k) {
    std::int64_t n = 0;
    for (auto v : tr.counts[k]) n += v;
    for (std::size_t i = 0; i < tr.names.size(); ++i) {
      t.add_row({std::to_string(replicate), num(tr.steps[k]), tr.names[i], num(tr.counts[k][i]),
                 num(static_cast<double>(tr.counts[k][i]) / static_cast<double>(n))});
    }
  }
}

std::string payoff_csv(const std::vector<std::string>& names, const Eigen::MatrixXd& a) {
  CsvTable t({"row", "col", "payoff"});
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) t.add_row({names[i], names[j], num(a(i, j))});
  return t.str();
}

RunOutput run_evolve(const ExperimentConfig& c, int threads) {
  const auto& s = *c.evolve;
  const auto roster = resolve(c.roster, c.game);
  const auto names = names_of(roster);
  const Eigen::MatrixXd a = payoff_matrix(roster, c.game, s.noise, threads);
  const PopulationState init = initial_population(s, names);
  std::vector<Trajectory> runs(static_cast<std::size_t>(s.replicates));
  parallel_for(runs.size(), threads, [&](std::size_t r) {
    EvolutionParams p = evolution_params(s);
    p.seed = derive_seed(c.seed, 0xE7, r);
    runs[r] = evolve_trajectory(init, p, a);
  });
  CsvTable t({"replicate", "step", "strategy", "count", "abundance"});
  for (std::size_t r = 0; r < runs.size(); ++r) add_trajectory(t, static_cast<int>(r), runs[r]);
  RunOutput out;
  out.files = {{"trajectory.csv", t.str()}, {"payoffs.csv", payoff_csv(names, a)}};
  out.summary = {{"replicates", s.replicates}};
  return out;
}

// ---------------------------------------------------------------- coevolve

RunOutput run_coevolve(const ExperimentConfig& c, int threads) {
  const auto& s = *c.coevolve;
  const auto roster = resolve(c.roster, c.game);
  const auto names = names_of(roster);
  const PairOutcomes outcomes = pair_outcomes(roster, s.evolution.noise, threads);
  const PopulationState init = initial_population(s.evolution, names);
  std::vector<CoevolutionTrajectory> runs(static_cast<std::size_t>(s.evolution.replicates));
  parallel_for(runs.size(), threads, [&](std::size_t r) {
    EvolutionParams p = evolution_params(s.evolution);
    p.seed = derive_seed(c.seed, 0xC0, r);
    runs[r] = coevolve(init, p, s.kernel, outcomes, c.game);
  });
  CsvTable co({"replicate", "step", "reward", "temptation", "cooperation"});
  CsvTable tr({"replicate", "step", "strategy", "count", "abundance"});
  for (std::size_t r = 0; r < runs.size(); ++r) {
    const auto& run = runs[r];
    for (std::size_t k = 0; k < run.population.steps.size(); ++k) {
      co.add_row({std::to_string(r), num(run.population.steps[k]), num(run.reward[k]),
                  num(run.temptation[k]), num(run.cooperation[k])});
    }
    add_trajectory(tr, static_cast<int>(r), run.population);
  }
  RunOutput out;
  out.files = {{"coevolution.csv", co.str()}, {"trajectory.csv", tr.str()}};
  out.summary = {{"replicates", s.evolution.replicates}};
  return out;
}

// ---------------------------------------------------------------- lattice

const char* kPalette[] = {"#2b83ba", "#d7191c", "#fdae61", "#abdda4", "#7b3294",
                          "#1a9641", "#e66101", "#5e3c99", "#969696", "#000000"};

std::string lattice_svg(const LatticeState& l, const std::vector<std::string>& names) {
  const int cell = 4;
  const int side = l.side;
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" "
                "shape-rendering=\"crispEdges\">\n",
                side * cell, side * cell + 16);
  out += buf;
  for (int r = 0; r < side; ++r) {
    int c = 0;
    while (c < side) {
      const auto s = l.at(r, c);
      int e = c + 1;
      while (e < side && l.at(r, e) == s) ++e;
      std::snprintf(buf, sizeof buf, "<rect x=\"%d\" y=\"%d\" width=\"%d\" height=\"%d\" fill=\"%s\"/>\n",
                    c * cell, r * cell, (e - c) * cell, cell, kPalette[s % 10]);
      out += buf;
      c = e;
    }
  }
  int x = 2;
  for (std::size_t i = 0; i < names.size(); ++i) {
    std::snprintf(buf, sizeof buf,
                  "<rect x=\"%d\" y=\"%d\" width=\"10\" height=\"10\" fill=\"%s\"/>"
                  "<text x=\"%d\" y=\"%d\" font-size=\"11\">",
                  x, side * cell + 3, kPalette[i % 10], x + 13, side * cell + 12);
    out += buf;
    for (char ch : names[i]) {
      if (ch == '<') out += "&lt;";
      else if (ch == '&') out += "&amp;";
      else if (ch == '>') out += "&gt;";
      else out += ch;
    }
    out += "</text>\n";
    x += 20 + 7 * static_cast<int>(names[i].size());
  }
  out += "</svg>\n";
  return out;
}

// Plain PGM: one gray level per roster index.
std::string lattice_pgm(const LatticeState& l, std::size_t strategies) {
  std::string out = "P2\n" + std::to_string(l.side) + " " + std::to_string(l.side) + "\n" +
                    std::to_string(std::max<std::size_t>(1, strategies - 1)) + "\n";
  for (int r = 0; r < l.side; ++r) {
    for (int c = 0; c < l.side; ++c) {
      if (c) out += ' ';
      out += std::to_string(l.at(r, c));
    }
    out += '\n';
  }
  return out;
}

RunOutput run_lattice(const ExperimentConfig& c, int threads) {
  const auto& s = *c.lattice;
  const auto roster = resolve(c.roster, c.game);
  const auto names = names_of(roster);
  const Eigen::MatrixXd a = payoff_matrix(roster, c.game, s.noise, threads);
  std::vector<char> coop(roster.size(), 0);
  for (const auto& n : s.cooperators) {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == n) coop[i] = 1;
  }
  std::vector<LatticeRun> runs(static_cast<std::size_t>(s.replicates));
  parallel_for(runs.size(), threads, [&](std::size_t r) {
    const std::uint64_t seed = derive_seed(c.seed, 0x1A, r);
    LatticeState init = random_lattice(s.side, s.initial_fraction, seed, s.neighborhood, s.update);
    LatticeParams p;
    p.selection_strength = s.beta;
    p.mutation_rate = s.mutation;
    p.epochs = s.epochs;
    p.seed = seed;
    p.snapshot_epochs = s.snapshots;
    runs[r] = lattice_simulate(init, a, coop, p);
  });
  CsvTable t({"replicate", "epoch", "cooperator_fraction", "largest_cluster"});
  RunOutput out;
  json finals = json::array();
  for (std::size_t r = 0; r < runs.size(); ++r) {
    for (const auto& m : runs[r].metrics) {
      t.add_row({std::to_string(r), num(m.epoch), num(m.cooperator_fraction), num(m.largest_cluster)});
    }
    for (const auto& [epoch, state] : runs[r].snapshots) {
      out.files.push_back({"lattice_r" + std::to_string(r) + "_e" + std::to_string(epoch) + ".pgm",
                           lattice_pgm(state, names.size())});
      if (s.svg) {
        out.files.push_back({"lattice_r" + std::to_string(r) + "_e" + std::to_string(epoch) + ".svg",
                             lattice_svg(state, names)});
      }
    }
    finals.push_back(runs[r].metrics.back().cooperator_fraction);
  }
  out.files.insert(out.files.begin(), {"lattice_metrics.csv", t.str()});
  out.summary = {{"final_cooperator_fraction", finals}};
  return out;
}

// ---------------------------------------------------------------- region scan

RunOutput run_region_scan(const ExperimentConfig& c) {
  const auto& s = *c.region_scan;
  const RegionMap map = zd_region_scan(s.game, s.baselines, s.chis, s.thresholds);
  CsvTable grid({"players", "threshold", "baseline", "chi", "max_phi", "feasible"});
  for (std::size_t i = 0; i < map.baselines.size(); ++i) {
    for (std::size_t k = 0; k < map.chis.size(); ++k) {
      grid.add_row({std::to_string(s.game.n_players), std::to_string(s.game.threshold),
                    num(map.baselines[i]), num(map.chis[k]),
                    num(group_max_phi(s.game, map.baselines[i], map.chis[k])),
                    yes_no(map.feasible[i][k])});
    }
  }
  CsvTable kinds({"kind", "threshold", "baseline", "chi", "max_phi", "feasible"});
  for (std::size_t m = 0; m < map.thresholds.size(); ++m) {
    ThresholdGame tg = s.game;
    tg.threshold = map.thresholds[m];
    const double lg = group_generous_baseline(tg), le = group_extortionate_baseline(tg);
    for (std::size_t k = 0; k < map.chis.size(); ++k) {
      kinds.add_row({"generous", std::to_string(tg.threshold), num(lg), num(map.chis[k]),
                     num(group_max_phi(tg, lg, map.chis[k])), yes_no(map.generous[m][k])});
    }
    for (std::size_t k = 0; k < map.chis.size(); ++k) {
      kinds.add_row({"extortionate", std::to_string(tg.threshold), num(le), num(map.chis[k]),
                     num(group_max_phi(tg, le, map.chis[k])), yes_no(map.extortionate[m][k])});
    }
  }
  RunOutput out;
  out.files = {{"region_grid.csv", grid.str()}, {"region_kinds.csv", kinds.str()}};
  return out;
}

}  // namespace

RunOutput execute(const ExperimentConfig& c, int threads) {
  if (threads < 1) throw std::invalid_argument("threads must be >= 1");
  const std::string& cmd = c.command;
  if (cmd == "analyze") return run_analyze(c);
  if (cmd == "match") return run_match(c);
  if (cmd == "tournament") return run_tournament(c, threads);
  if (cmd == "evolve") return run_evolve(c, threads);
  if (cmd == "coevolve") return run_coevolve(c, threads);
  if (cmd == "lattice") return run_lattice(c, threads);
  if (cmd == "region-scan") return run_region_scan(c);
  throw ValidationError("$.command", cmd.empty() ? "no command given" : "unknown command '" + cmd + "'");
}

json write_outputs(const ExperimentConfig& config, const RunOutput& output, const std::string& dir) {
  std::vector<fs::path> written;
  const bool created_dir = !fs::exists(dir);
  try {
    fs::create_directories(dir);
    json files = json::array();
    for (const auto& f : output.files) {
      const fs::path path = fs::path(dir) / f.name;
      std::ofstream os(path, std::ios::binary | std::ios::trunc);
      if (!os) throw std::runtime_error("cannot write " + path.string());
      written.push_back(path);
      os.write(f.content.data(), static_cast<std::streamsize>(f.content.size()));
      os.close();
      if (!os) throw std::runtime_error("failed writing " + path.string());
      files.push_back({{"path", f.name}, {"bytes", f.content.size()}, {"sha256", sha256_hex(f.content)}});
    }
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    json manifest = {{"version", kVersion},
                     {"timestamp", stamp},
                     {"seed", config.seed},
                     {"config", to_json(config)},
                     {"summary", output.summary},
                     {"files", files}};
    const fs::path mpath = fs::path(dir) / "manifest.json";
    std::ofstream ms(mpath, std::ios::binary | std::ios::trunc);
    if (!ms) throw std::runtime_error("cannot write " + mpath.string());
    written.push_back(mpath);
    ms << manifest.dump(2) << '\n';
    ms.close();
    if (!ms) throw std::runtime_error("failed writing " + mpath.string());
    return manifest;
  } catch (...) {
    std::error_code ec;
    for (const auto& p : written) fs::remove(p, ec);
    if (created_dir) fs::remove(dir, ec);
    throw;
  }
}

}  // namespace dilemma
