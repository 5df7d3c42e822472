#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "uncross/errors.hpp"

// Bipartition algebra over a ground set of at most 64 elements. A bipartition
// {X, V \ X} is stored as the side containing element 1, so equality and
// hashing are constant time and every quadrant test is a word operation.
// Element ids are 1-based externally and bits 0..n-1 internally.

namespace uncross {

class GroundSet {
 public:
  explicit GroundSet(int size) : n_(size) {
    if (size < 1 || size > 64) throw Error("ground set size must be in 1..64");
  }

  int size() const { return n_; }

  std::uint64_t universe() const {
    return n_ == 64 ? ~0ull : (1ull << n_) - 1;
  }

  friend bool operator==(const GroundSet&, const GroundSet&) = default;

 private:
  int n_;
};

// Order on subsets by their sorted id sequences ([1,2] < [1,2,3] < [1,3]).
inline bool lex_subset_less(std::uint64_t a, std::uint64_t b) {
  if (a == b) return false;
  const std::uint64_t diff = a ^ b;
  const std::uint64_t low = diff & (~diff + 1);
  const std::uint64_t above = ~(low | (low - 1));
  if (a & low) return (b & above) != 0;  // b would be a proper prefix otherwise
  return (a & above) == 0;
}

inline std::uint64_t mask_from_ids(const std::vector<int>& ids, GroundSet g) {
  std::uint64_t m = 0;
  for (int id : ids) {
    if (id < 1 || id > g.size()) throw InvalidBipartition("element id out of range: " + std::to_string(id));
    m |= 1ull << (id - 1);
  }
  return m;
}

inline std::vector<int> ids_from_mask(std::uint64_t m) {
  std::vector<int> ids;
  while (m) {
    const int bit = std::countr_zero(m);
    ids.push_back(bit + 1);
    m &= m - 1;
  }
  return ids;
}

class Bipartition {
 public:
  Bipartition(std::uint64_t subset, GroundSet g) : n_(g.size()) {
    const std::uint64_t u = g.universe();
    if ((subset & ~u) != 0) throw InvalidBipartition("subset has elements outside the ground set");
    if (subset == 0) throw InvalidBipartition("empty side");
    if (subset == u) throw InvalidBipartition("full side");
    rep_ = (subset & 1ull) ? subset : (u ^ subset);
  }

  static Bipartition from_ids(const std::vector<int>& ids, GroundSet g) {
    return Bipartition(mask_from_ids(ids, g), g);
  }

  // The stored side, the one containing element 1.
  std::uint64_t rep() const { return rep_; }
  std::uint64_t other() const { return ground().universe() ^ rep_; }
  GroundSet ground() const { return GroundSet(n_); }
  int rep_size() const { return std::popcount(rep_); }
  std::vector<int> rep_ids() const { return ids_from_mask(rep_); }

  friend bool operator==(const Bipartition&, const Bipartition&) = default;

 private:
  std::uint64_t rep_;
  int n_;
};

struct BipartitionLess {
  bool operator()(const Bipartition& a, const Bipartition& b) const {
    if (a.ground().size() != b.ground().size()) return a.ground().size() < b.ground().size();
    return lex_subset_less(a.rep(), b.rep());
  }
};

inline Bipartition canonicalize(std::uint64_t subset, GroundSet g) { return Bipartition(subset, g); }

inline void require_same_ground(const Bipartition& x, const Bipartition& y) {
  if (!(x.ground() == y.ground())) throw GroundMismatch("bipartitions live on different ground sets");
}

// Crossing is representative-independent: all four quadrants nonempty.
inline bool is_crossing(const Bipartition& x, const Bipartition& y) {
  require_same_ground(x, y);
  const std::uint64_t u = x.ground().universe();
  const std::uint64_t a = x.rep() & y.rep();
  const std::uint64_t b = x.rep() & ~y.rep();
  const std::uint64_t c = ~x.rep() & y.rep();
  const std::uint64_t rest = u & ~(x.rep() | y.rep());
  return a && b && c && rest;
}

struct CornerPairs {
  std::pair<Bipartition, Bipartition> meet_join;
  std::pair<Bipartition, Bipartition> diff_pair;
};

// Candidate replacement pairs (X∩Y, X∪Y) and (X∖Y, Y∖X), computed on the
// canonical representatives. Complementing one side of the input swaps which
// concrete pair plays which role, but the two-pair set is invariant.
inline CornerPairs corner_pairs(const Bipartition& x, const Bipartition& y) {
  if (!is_crossing(x, y)) throw NotCrossing("corner_pairs requires a crossing pair");
  const GroundSet g = x.ground();
  return CornerPairs{
      {Bipartition(x.rep() & y.rep(), g), Bipartition(x.rep() | y.rep(), g)},
      {Bipartition(x.rep() & ~y.rep(), g), Bipartition(y.rep() & ~x.rep(), g)}};
}

class Family {
 public:
  explicit Family(GroundSet g) : ground_(g) {}

  Family(GroundSet g, std::vector<Bipartition> members) : ground_(g), members_(std::move(members)) {
    for (const auto& m : members_)
      if (!(m.ground() == ground_)) throw GroundMismatch("family member on a different ground set");
    std::sort(members_.begin(), members_.end(), BipartitionLess{});
  }

  void add(const Bipartition& m) {
    if (!(m.ground() == ground_)) throw GroundMismatch("family member on a different ground set");
    members_.insert(std::upper_bound(members_.begin(), members_.end(), m, BipartitionLess{}), m);
  }

  bool remove_one(const Bipartition& m) {
    auto it = std::lower_bound(members_.begin(), members_.end(), m, BipartitionLess{});
    if (it == members_.end() || !(*it == m)) return false;
    members_.erase(it);
    return true;
  }

  bool contains(const Bipartition& m) const { return count(m) > 0; }

  int count(const Bipartition& m) const {
    auto [lo, hi] = std::equal_range(members_.begin(), members_.end(), m, BipartitionLess{});
    return static_cast<int>(hi - lo);
  }

  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  const std::vector<Bipartition>& members() const { return members_; }
  GroundSet ground() const { return ground_; }

  friend bool operator==(const Family& a, const Family& b) {
    return a.ground_ == b.ground_ && a.members_ == b.members_;
  }

 private:
  GroundSet ground_;
  std::vector<Bipartition> members_;  // sorted; duplicates permitted (multiset)
};

inline bool is_laminar(const Family& f) {
  const auto& ms = f.members();
  for (std::size_t i = 0; i < ms.size(); ++i)
    for (std::size_t j = i + 1; j < ms.size(); ++j)
      if (is_crossing(ms[i], ms[j])) return false;
  return true;
}

struct AtomPartition {
  std::vector<std::uint64_t> classes;  // ordered by smallest contained element
  std::vector<int> class_of;           // 1-based element id -> class index

  int index_of(int id) const { return class_of[static_cast<std::size_t>(id)]; }
};

// i ~ j iff no member has exactly one of i, j. Start from one block and split
// by every member.
inline AtomPartition atoms(const Family& f) {
  std::vector<std::uint64_t> classes{f.ground().universe()};
  for (const auto& m : f.members()) {
    std::vector<std::uint64_t> next;
    next.reserve(classes.size() + 1);
    for (std::uint64_t c : classes) {
      const std::uint64_t in = c & m.rep();
      const std::uint64_t out = c & ~m.rep();
      if (in) next.push_back(in);
      if (out) next.push_back(out);
    }
    classes = std::move(next);
  }
  std::sort(classes.begin(), classes.end(),
            [](std::uint64_t a, std::uint64_t b) { return std::countr_zero(a) < std::countr_zero(b); });
  AtomPartition part;
  part.classes = std::move(classes);
  part.class_of.assign(static_cast<std::size_t>(f.ground().size()) + 1, -1);
  for (std::size_t k = 0; k < part.classes.size(); ++k)
    for (int id : ids_from_mask(part.classes[k]))
      part.class_of[static_cast<std::size_t>(id)] = static_cast<int>(k);
  return part;
}

// Drops members crossing no other member. One pass suffices: removing a
// non-crossing member cannot make another member non-crossing.
inline Family remove_trivial(const Family& f) {
  const auto& ms = f.members();
  std::vector<bool> keep(ms.size(), false);
  for (std::size_t i = 0; i < ms.size(); ++i) {
    if (keep[i]) continue;
    for (std::size_t j = i + 1; j < ms.size(); ++j) {
      if (is_crossing(ms[i], ms[j])) {
        keep[i] = true;
        keep[j] = true;
      }
    }
  }
  Family out(f.ground());
  for (std::size_t i = 0; i < ms.size(); ++i)
    if (keep[i]) out.add(ms[i]);
  return out;
}

struct ContractAtomsResult {
  GroundSet atom_ground;
  Family family;
  std::vector<std::uint64_t> classes;  // new id k+1 <-> original-element mask classes[k]
};

// Identifies the ground set with the atoms of F. Atoms are renumbered by
// smallest contained original id; crossing structure is preserved.
inline ContractAtomsResult contract_atoms(const Family& f) {
  AtomPartition part = atoms(f);
  const int q = static_cast<int>(part.classes.size());
  GroundSet atom_ground(q);
  Family image(atom_ground);
  for (const auto& m : f.members()) {
    std::uint64_t img = 0;
    for (int k = 0; k < q; ++k) {
      const std::uint64_t overlap = part.classes[static_cast<std::size_t>(k)] & m.rep();
      if (overlap == 0) continue;
      if (overlap != part.classes[static_cast<std::size_t>(k)])
        throw InternalError("family member is not a union of its atom classes");
      img |= 1ull << k;
    }
    image.add(Bipartition(img, atom_ground));
  }
  return ContractAtomsResult{atom_ground, std::move(image), std::move(part.classes)};
}

// All bipartitions of the ground set, in lexicographic order of canonical
// representatives. Exponential; guarded.
inline std::vector<Bipartition> all_bipartitions(GroundSet g) {
  if (g.size() > 20) throw TooLarge("bipartition enumeration is limited to ground sets of size <= 20");
  std::vector<Bipartition> out;
  if (g.size() == 1) return out;
  const std::uint64_t u = g.universe();
  for (std::uint64_t rep = 1; rep < u; rep += 2) out.emplace_back(rep, g);
  std::sort(out.begin(), out.end(), BipartitionLess{});
  return out;
}

inline std::string subset_string(std::uint64_t mask) {
  std::string s = "{";
  bool first = true;
  for (int id : ids_from_mask(mask)) {
    if (!first) s += ",";
    s += std::to_string(id);
    first = false;
  }
  return s + "}";
}

inline std::string to_string(const Bipartition& b) { return subset_string(b.rep()); }

inline std::string to_string(const Family& f) {
  std::string s = "[";
  bool first = true;
  for (const auto& m : f.members()) {
    if (!first) s += " ";
    s += to_string(m);
    first = false;
  }
  return s + "]";
}

}  // namespace uncross
