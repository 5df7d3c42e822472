#pragma once

#include <cstdint>
#include <memory>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "uncross/functions.hpp"
#include "uncross/ground.hpp"
#include "uncross/rng.hpp"

// The uncrossing game. Each iteration: Red replaces a crossing pair (X, Y) of
// family members by one of its corner pairs subject to
// f(X) + f(Y) <= f(X') + f(Y'), then Blue returns one of X, Y (or none, when
// the engine is configured to allow it). Trivial members are removed at game
// start and after every step; Red wins when the family is laminar.

namespace uncross {

enum class PairChoice { meet_join, diff_pair };

enum class BlueReturn { x, y, none };

inline const char* to_cstring(PairChoice c) { return c == PairChoice::meet_join ? "meet_join" : "diff_pair"; }

inline const char* to_cstring(BlueReturn b) {
  switch (b) {
    case BlueReturn::x: return "x";
    case BlueReturn::y: return "y";
    default: return "none";
  }
}

struct RedMove {
  Bipartition x;
  Bipartition y;
  PairChoice choice;

  friend bool operator==(const RedMove&, const RedMove&) = default;
};

struct TraceEntry {
  RedMove move;
  BlueReturn blue;

  friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

struct GameState {
  Family family;
  int iteration = 0;
  std::vector<TraceEntry> trace;
};

struct GameOutcome {
  bool won = false;
  int iterations = 0;
  Family final_family;
  long long oracle_calls = 0;
  std::vector<TraceEntry> trace;
};

struct GameConfig {
  long long cap = 0;
  bool allow_none = false;
  bool validate = true;
};

inline long long default_cap(const Family& f0) {
  const long long n = f0.ground().size();
  const long long m = static_cast<long long>(f0.size());
  return 8 * n * n * n * (m > 0 ? m : 1);
}

inline std::string trace_string(const std::vector<TraceEntry>& trace) {
  std::ostringstream os;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const auto& e = trace[i];
    os << "  #" << i + 1 << " X=" << to_string(e.move.x) << " Y=" << to_string(e.move.y) << " "
       << to_cstring(e.move.choice) << " blue=" << to_cstring(e.blue) << "\n";
  }
  return os.str();
}

inline std::pair<Bipartition, Bipartition> chosen_pair(const CornerPairs& cp, PairChoice choice) {
  return choice == PairChoice::meet_join ? cp.meet_join : cp.diff_pair;
}

// Atoms only fuse as the game progresses: every old class stays inside one
// new class.
inline bool coarsens(const AtomPartition& before, const AtomPartition& after) {
  for (std::uint64_t c : before.classes) {
    const int lead = std::countr_zero(c) + 1;
    const std::uint64_t host = after.classes[static_cast<std::size_t>(after.index_of(lead))];
    if ((c & ~host) != 0) return false;
  }
  return true;
}

inline GameState make_initial_state(const Family& f0) {
  return GameState{remove_trivial(f0), 0, {}};
}

inline GameState step(const GameState& state, const FunctionOracle& f, const RedMove& move, BlueReturn blue,
                      bool validate = true) {
  if (!(move.x.ground() == state.family.ground()) || !(move.y.ground() == state.family.ground()))
    throw InvalidMove("move is on a different ground set");
  if (!state.family.contains(move.x) || !state.family.contains(move.y))
    throw InvalidMove("move names bipartitions outside the family");
  if (move.x == move.y && state.family.count(move.x) < 2)
    throw InvalidMove("move repeats a single family member");
  if (!is_crossing(move.x, move.y)) throw InvalidMove("move pair is not crossing");
  const CornerPairs cp = corner_pairs(move.x, move.y);
  const auto [xp, yp] = chosen_pair(cp, move.choice);
  if (validate) {
    const Rat lhs = f(move.x) + f(move.y);
    const Rat rhs = f(xp) + f(yp);
    if (lhs > rhs)
      throw InvalidMove("step inequality fails: f(X)+f(Y) = " + rat_string(lhs) + " > " + rat_string(rhs) +
                        " for the chosen pair");
  }

  Family next = state.family;
  next.remove_one(move.x);
  next.remove_one(move.y);
  next.add(xp);
  next.add(yp);
  if (blue == BlueReturn::x) next.add(move.x);
  if (blue == BlueReturn::y) next.add(move.y);
  Family pruned = remove_trivial(next);

  if (validate && !coarsens(atoms(state.family), atoms(pruned)))
    throw InternalError("atom relation failed to coarsen across a step");

  GameState out{std::move(pruned), state.iteration + 1, state.trace};
  out.trace.push_back(TraceEntry{move, blue});
  return out;
}

class RedStrategy {
 public:
  virtual ~RedStrategy() = default;
  virtual RedMove next_move(const GameState& state, const FunctionOracle& f) = 0;
  virtual void observe(const RedMove& move, BlueReturn blue) = 0;
  virtual std::unique_ptr<RedStrategy> clone() const = 0;
  virtual std::string state_key() const { return {}; }
  virtual std::string name() const = 0;
};

class BlueStrategy {
 public:
  virtual ~BlueStrategy() = default;
  virtual BlueReturn choose(const GameState& state, const RedMove& move, bool allow_none) = 0;
  virtual std::unique_ptr<BlueStrategy> clone() const = 0;
  virtual std::string name() const = 0;
};

class BlueRandom : public BlueStrategy {
 public:
  explicit BlueRandom(std::uint64_t seed) : seed_(seed), rng_(seed) {}

  BlueReturn choose(const GameState&, const RedMove&, bool allow_none) override {
    const std::uint64_t pick = rng_.below(allow_none ? 3 : 2);
    if (pick == 0) return BlueReturn::x;
    if (pick == 1) return BlueReturn::y;
    return BlueReturn::none;
  }

  std::unique_ptr<BlueStrategy> clone() const override { return std::make_unique<BlueRandom>(*this); }
  std::string name() const override { return "random:" + std::to_string(seed_); }

 private:
  std::uint64_t seed_;
  SplitMix64 rng_;
};

// Returns whichever of X, Y has the larger weighted-potential term
// |Z| * |V \ Z|; ties go to X.
class BlueMaxPotential : public BlueStrategy {
 public:
  BlueReturn choose(const GameState&, const RedMove& move, bool) override {
    const int n = move.x.ground().size();
    const long long px = static_cast<long long>(move.x.rep_size()) * (n - move.x.rep_size());
    const long long py = static_cast<long long>(move.y.rep_size()) * (n - move.y.rep_size());
    return py > px ? BlueReturn::y : BlueReturn::x;
  }

  std::unique_ptr<BlueStrategy> clone() const override { return std::make_unique<BlueMaxPotential>(*this); }
  std::string name() const override { return "maxpot"; }
};

class BlueAlwaysX : public BlueStrategy {
 public:
  BlueReturn choose(const GameState&, const RedMove&, bool) override { return BlueReturn::x; }
  std::unique_ptr<BlueStrategy> clone() const override { return std::make_unique<BlueAlwaysX>(*this); }
  std::string name() const override { return "alwaysx"; }
};

inline GameOutcome play(const Family& f0, const FunctionOracle& oracle, RedStrategy& red, BlueStrategy& blue,
                        GameConfig cfg) {
  if (cfg.cap <= 0) throw InvalidValue("iteration cap must be positive");
  GameState state = make_initial_state(f0);
  const long long calls_before = oracle.eval_count();
  while (true) {
    if (is_laminar(state.family)) {
      return GameOutcome{true, state.iteration, state.family, oracle.eval_count() - calls_before, state.trace};
    }
    if (state.iteration >= cfg.cap) {
      return GameOutcome{false, state.iteration, state.family, oracle.eval_count() - calls_before, state.trace};
    }
    RedMove move = [&] {
      try {
        return red.next_move(state, oracle);
      } catch (const Error& e) {
        throw InternalError(std::string("red strategy failed: ") + e.what() + "\ntrace so far:\n" +
                            trace_string(state.trace));
      }
    }();
    BlueReturn choice = blue.choose(state, move, cfg.allow_none);
    if (choice == BlueReturn::none && !cfg.allow_none)
      throw InvalidMove("blue returned none, but none is not allowed by the configuration");
    GameState next = [&] {
      try {
        return step(state, oracle, move, choice, cfg.validate);
      } catch (const Error& e) {
        throw InternalError(std::string("invalid move from strategy '") + red.name() + "': " + e.what() +
                            "\ntrace so far:\n" + trace_string(state.trace));
      }
    }();
    red.observe(move, choice);
    state = std::move(next);
  }
}

struct WorstCaseResult {
  bool red_wins_all = false;
  int max_iterations = 0;
  std::vector<TraceEntry> witness;     // a maximizing Blue line when Red wins everywhere
  std::vector<TraceEntry> loss_trace;  // a losing line otherwise
  long long nodes_explored = 0;
};

namespace detail {

struct WorstCaseMemo {
  int remaining;
  BlueReturn best;
};

inline std::string family_key(const Family& f) {
  std::string key;
  char buf[20];
  for (const auto& m : f.members()) {
    std::snprintf(buf, sizeof buf, "%llx,", static_cast<unsigned long long>(m.rep()));
    key += buf;
  }
  return key;
}

}  // namespace detail

// Explores the full tree of Blue choices against a fixed Red strategy,
// memoizing on (family, strategy-state). Returns the deepest line.
inline WorstCaseResult worst_case_blue(const Family& f0, const FunctionOracle& oracle, const RedStrategy& red_proto,
                                       GameConfig cfg) {
  if (f0.ground().size() > 6 || f0.size() > 5)
    throw TooLarge("exhaustive adversary search is limited to |V| <= 6 and |F0| <= 5");
  if (cfg.cap <= 0) cfg.cap = default_cap(f0);

  WorstCaseResult result;
  std::unordered_map<std::string, detail::WorstCaseMemo> memo;
  bool lost = false;
  std::vector<TraceEntry> loss_line;

  std::vector<BlueReturn> options{BlueReturn::x, BlueReturn::y};
  if (cfg.allow_none) options.push_back(BlueReturn::none);

  // Returns max remaining iterations from this node, or -1 on a Red loss.
  std::function<int(const GameState&, const RedStrategy&)> explore =
      [&](const GameState& state, const RedStrategy& red) -> int {
    ++result.nodes_explored;
    if (is_laminar(state.family)) return 0;
    if (lost) return -1;
    if (state.iteration >= cfg.cap) {
      lost = true;
      loss_line = state.trace;
      return -1;
    }
    const std::string key = detail::family_key(state.family) + "|" + red.state_key();
    if (auto it = memo.find(key); it != memo.end()) return it->second.remaining;

    std::unique_ptr<RedStrategy> mover = red.clone();
    const RedMove move = mover->next_move(state, oracle);
    int best = -1;
    BlueReturn best_choice = options.front();
    for (BlueReturn choice : options) {
      std::unique_ptr<RedStrategy> child = mover->clone();
      child->observe(move, choice);
      GameState next = step(state, oracle, move, choice, cfg.validate);
      const int sub = explore(next, *child);
      if (sub < 0) return -1;
      if (sub + 1 > best) {
        best = sub + 1;
        best_choice = choice;
      }
    }
    memo.emplace(key, detail::WorstCaseMemo{best, best_choice});
    return best;
  };

  GameState root = make_initial_state(f0);
  const int depth = explore(root, red_proto);
  if (depth < 0) {
    result.red_wins_all = false;
    result.loss_trace = std::move(loss_line);
    return result;
  }
  result.red_wins_all = true;
  result.max_iterations = depth;

  // Replay along the memoized worst choices to recover a witness line.
  GameState state = std::move(root);
  std::unique_ptr<RedStrategy> red = red_proto.clone();
  while (!is_laminar(state.family)) {
    const std::string key = detail::family_key(state.family) + "|" + red->state_key();
    const RedMove move = red->next_move(state, oracle);
    const BlueReturn choice = memo.at(key).best;
    state = step(state, oracle, move, choice, cfg.validate);
    red->observe(move, choice);
  }
  result.witness = std::move(state.trace);
  return result;
}

}  // namespace uncross
