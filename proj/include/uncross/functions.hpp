#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "uncross/ground.hpp"
#include "uncross/rational.hpp"

// Oracles for nonnegative skew-supermodular functions on bipartitions, plus
// exhaustive verification of the defining inequality
//   f(X) + f(Y) <= max{f(X∩Y) + f(X∪Y), f(X∖Y) + f(Y∖X)}.
// Values are exact rationals throughout; strategy branches compare sums for
// equality and rounding would corrupt branch selection.

namespace uncross {

struct Violation {
  Bipartition x;
  Bipartition y;
  Rat lhs;
  Rat rhs;
};

struct NotSkewSupermodular : Error {
  Violation violation;

  explicit NotSkewSupermodular(Violation v)
      : Error("not skew-supermodular: f(" + uncross::to_string(v.x) + ") + f(" + uncross::to_string(v.y) +
              ") = " + rat_string(v.lhs) + " > " + rat_string(v.rhs)),
        violation(std::move(v)) {}
};

class RequirementMatrix {
 public:
  explicit RequirementMatrix(int n) : n_(n), r_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {}

  void set(int i, int j, Rat value) {
    check(i, j);
    if (value < 0) throw InvalidValue("requirement values must be nonnegative");
    r_[idx(i, j)] = value;
    r_[idx(j, i)] = std::move(value);
  }

  const Rat& at(int i, int j) const {
    check(i, j);
    return r_[idx(i, j)];
  }

  int size() const { return n_; }

  friend bool operator==(const RequirementMatrix&, const RequirementMatrix&) = default;

 private:
  void check(int i, int j) const {
    if (i < 1 || i > n_ || j < 1 || j > n_ || i == j) throw InvalidValue("requirement index out of range");
  }
  std::size_t idx(int i, int j) const {
    return static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j - 1);
  }

  int n_;
  std::vector<Rat> r_;
};

class FunctionOracle {
 public:
  enum class Kind { table, requirement, deficiency, indicator };

  Rat operator()(const Bipartition& x) const {
    if (!(x.ground() == ground_)) throw GroundMismatch("oracle queried on a different ground set");
    ++*count_;
    auto it = cache_->find(x.rep());
    if (it != cache_->end()) return it->second;
    Rat v = raw_(x);
    cache_->emplace(x.rep(), v);
    return v;
  }

  long long eval_count() const { return *count_; }

  // Shares the value cache but audits calls separately (one counter per game).
  FunctionOracle with_fresh_counter() const {
    FunctionOracle copy = *this;
    copy.count_ = std::make_shared<long long>(0);
    return copy;
  }

  Kind kind() const { return kind_; }
  GroundSet ground() const { return ground_; }

 private:
  FunctionOracle(Kind kind, GroundSet ground, std::function<Rat(const Bipartition&)> raw)
      : kind_(kind),
        ground_(ground),
        raw_(std::move(raw)),
        cache_(std::make_shared<std::unordered_map<std::uint64_t, Rat>>()),
        count_(std::make_shared<long long>(0)) {}

  Kind kind_;
  GroundSet ground_;
  std::function<Rat(const Bipartition&)> raw_;
  std::shared_ptr<std::unordered_map<std::uint64_t, Rat>> cache_;
  std::shared_ptr<long long> count_;

  friend FunctionOracle make_table(const std::map<std::uint64_t, Rat>&, GroundSet, bool);
  friend FunctionOracle make_requirement(RequirementMatrix, GroundSet);
  friend FunctionOracle make_deficiency(std::vector<std::pair<int, int>>, int, GroundSet);
  friend FunctionOracle make_indicator(const Family&, GroundSet);
};

inline std::optional<Violation> verify_skew_supermodular(const FunctionOracle& f, GroundSet g);

// Table oracle; unspecified entries default to 0. Keys may name either side.
inline FunctionOracle make_table(const std::map<std::uint64_t, Rat>& values, GroundSet ground, bool verify = false) {
  auto table = std::make_shared<std::map<std::uint64_t, Rat>>();
  for (const auto& [mask, value] : values) {
    if (value < 0) throw InvalidValue("table values must be nonnegative");
    (*table)[Bipartition(mask, ground).rep()] = value;
  }
  FunctionOracle oracle(FunctionOracle::Kind::table, ground, [table](const Bipartition& x) -> Rat {
    auto it = table->find(x.rep());
    return it == table->end() ? Rat(0) : it->second;
  });
  if (verify) {
    if (auto violation = verify_skew_supermodular(oracle, ground)) throw NotSkewSupermodular(*violation);
  }
  return oracle;
}

// f(X) = max over i in X, j not in X of r(i,j); the classic requirement
// function of survivable network design. Skew-supermodular by construction.
inline FunctionOracle make_requirement(RequirementMatrix r, GroundSet ground) {
  if (r.size() != ground.size()) throw InvalidValue("requirement matrix size does not match the ground set");
  auto matrix = std::make_shared<RequirementMatrix>(std::move(r));
  const int n = ground.size();
  return FunctionOracle(FunctionOracle::Kind::requirement, ground, [matrix, n](const Bipartition& x) -> Rat {
    Rat best(0);
    for (int i = 1; i <= n; ++i) {
      if (!(x.rep() >> (i - 1) & 1ull)) continue;
      for (int j = 1; j <= n; ++j) {
        if (x.rep() >> (j - 1) & 1ull) continue;
        if (matrix->at(i, j) > best) best = matrix->at(i, j);
      }
    }
    return best;
  });
}

// Connectivity-augmentation deficiency: f(X) = max(0, R - |δ(X)|).
inline FunctionOracle make_deficiency(std::vector<std::pair<int, int>> edges, int target, GroundSet ground) {
  if (target < 0) throw InvalidValue("deficiency target must be nonnegative");
  for (auto [a, b] : edges) {
    if (a < 1 || a > ground.size() || b < 1 || b > ground.size() || a == b)
      throw InvalidValue("edge endpoint out of range");
  }
  auto es = std::make_shared<std::vector<std::pair<int, int>>>(std::move(edges));
  return FunctionOracle(FunctionOracle::Kind::deficiency, ground, [es, target](const Bipartition& x) -> Rat {
    int cut = 0;
    for (auto [a, b] : *es) {
      const bool ina = (x.rep() >> (a - 1)) & 1ull;
      const bool inb = (x.rep() >> (b - 1)) & 1ull;
      if (ina != inb) ++cut;
    }
    return target > cut ? Rat(target - cut) : Rat(0);
  });
}

// Indicator of a family; skew-supermodular exactly when the family is
// cross-closed, which verify_skew_supermodular certifies either way.
inline FunctionOracle make_indicator(const Family& s, GroundSet ground) {
  if (!(s.ground() == ground)) throw GroundMismatch("indicator family on a different ground set");
  auto reps = std::make_shared<std::unordered_set<std::uint64_t>>();
  for (const auto& m : s.members()) reps->insert(m.rep());
  return FunctionOracle(FunctionOracle::Kind::indicator, ground, [reps](const Bipartition& x) -> Rat {
    return reps->count(x.rep()) ? Rat(1) : Rat(0);
  });
}

// Checks every crossing pair, enumerating unordered pairs in lexicographic
// order of canonical representatives; returns the first violation.
inline std::optional<Violation> verify_skew_supermodular(const FunctionOracle& f, GroundSet g) {
  if (g.size() > 16) throw TooLarge("exhaustive verification is limited to ground sets of size <= 16");
  const std::vector<Bipartition> all = all_bipartitions(g);
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      const Bipartition& x = all[i];
      const Bipartition& y = all[j];
      if (!is_crossing(x, y)) continue;
      const Rat lhs = f(x) + f(y);
      const CornerPairs cp = corner_pairs(x, y);
      const Rat meet_sum = f(cp.meet_join.first) + f(cp.meet_join.second);
      const Rat diff_sum = f(cp.diff_pair.first) + f(cp.diff_pair.second);
      const Rat rhs = meet_sum > diff_sum ? meet_sum : diff_sum;
      if (lhs > rhs) return Violation{x, y, lhs, rhs};
    }
  }
  return std::nullopt;
}

}  // namespace uncross
