#include "rilab/jt_norm.hpp"

#include <algorithm>
#include <functional>

namespace rilab {

namespace {

std::set<DyadicNode> root_paths(const std::set<DyadicNode>& nodes) {
  std::set<DyadicNode> out;
  for (DyadicNode n : nodes) {
    while (out.insert(n).second && n.level > 0) n = n.parent();
  }
  return out;
}

Segment chain(DyadicNode top, DyadicNode bottom) {
  Segment s;
  for (DyadicNode n = bottom;; n = n.parent()) {
    s.push_back(n);
    if (n == top) break;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

std::map<DyadicNode, Rational> tree_entries(const SparseVector& v) {
  if (v.universe().kind() != IndexUniverse::Kind::DyadicTree) {
    throw UniverseError("JT norm needs a dyadic tree universe, got " + to_string(v.universe()));
  }
  std::map<DyadicNode, Rational> out;
  for (const auto& [i, x] : v.entries()) out.emplace(std::get<DyadicNode>(i), x);
  return out;
}

// (s + a)^2 + b
struct Quad {
  Rational a;
  Rational b;
};

// Slot usage of the first and last group met inside a subtree. lo_g < 0 marks
// a subtree without any group.
struct Part {
  std::int64_t lo_g = -1;
  std::int64_t hi_g = -1;
  std::uint8_t lo_m = 0;
  std::uint8_t hi_m = 0;

  bool empty() const { return lo_g < 0; }
  auto operator<=>(const Part&) const = default;
};

std::optional<Part> merge(const Part& a, const Part& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  if (a.hi_g != b.lo_g) return Part{a.lo_g, b.hi_g, a.lo_m, b.hi_m};
  if ((a.hi_m & b.lo_m) != 0) return std::nullopt;
  std::uint8_t m = a.hi_m | b.lo_m;
  return Part{a.lo_g, b.hi_g, a.lo_g == a.hi_g ? m : a.lo_m, b.lo_g == b.hi_g ? m : b.hi_m};
}

struct Profile {
  Rational h;
  std::vector<Quad> g;
};

using StateMap = std::map<Part, Profile>;

// Keeps the upper envelope of the lines s -> 2a s + (a^2 + b) over all real s;
// the common s^2 term does not affect which quadratic is largest.
void prune(std::vector<Quad>& g) {
  std::sort(g.begin(), g.end(), [](const Quad& x, const Quad& y) { return x.a < y.a || (x.a == y.a && x.b > y.b); });
  g.erase(std::unique(g.begin(), g.end(), [](const Quad& x, const Quad& y) { return x.a == y.a; }), g.end());
  if (g.size() <= 2) return;
  auto slope = [](const Quad& q) { return Rational(2 * q.a); };
  auto icept = [](const Quad& q) { return Rational(q.a * q.a + q.b); };
  std::vector<Quad> hull;
  for (auto& q : g) {
    while (hull.size() >= 2) {
      const Quad& l1 = hull[hull.size() - 2];
      const Quad& l2 = hull.back();
      Rational lhs = (icept(q) - icept(l1)) * (slope(l2) - slope(l1));
      Rational rhs = (icept(l2) - icept(l1)) * (slope(q) - slope(l1));
      if (lhs >= rhs) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(std::move(q));
  }
  g = std::move(hull);
}

const StateMap& absent_child() {
  static const StateMap m{{Part{}, Profile{Rational(0), {Quad{0, 0}}}}};
  return m;
}

struct Option {
  Rational x;
  Part part;
};

}  // namespace

bool is_valid_segment(const Segment& s) {
  if (s.empty()) return false;
  for (std::size_t j = 1; j < s.size(); ++j) {
    if (!s[j].is_successor_of(s[j - 1])) return false;
  }
  return true;
}

Rational segment_sum(const SparseVector& v, const Segment& s) {
  Rational total = 0;
  for (const auto& n : s) total += v.get(n);
  return total;
}

std::vector<Segment> enumerate_segments(const std::set<DyadicNode>& support, std::uint32_t max_level) {
  for (const auto& n : support) {
    if (!n.valid() || n.level > max_level) {
      throw UniverseError("node " + to_string(n) + " is outside the tree of depth " + std::to_string(max_level));
    }
  }
  std::vector<Segment> out;
  for (const DyadicNode& bottom : root_paths(support)) {
    bool meets = false;
    for (DyadicNode top = bottom;; top = top.parent()) {
      meets = meets || support.count(top) != 0;
      if (meets) out.push_back(chain(top, bottom));
      if (top.level == 0) break;
    }
  }
  std::sort(out.begin(), out.end(), [](const Segment& x, const Segment& y) {
    return std::pair(x.front(), x.back()) < std::pair(y.front(), y.back());
  });
  return out;
}

JtOptimum jt_norm_bruteforce_witness(const SparseVector& v) {
  auto entries = tree_entries(v);
  if (entries.size() > kBruteForceSupportCap) {
    throw SizingError("brute-force JT norm limited to " + std::to_string(kBruteForceSupportCap) +
                      " support nodes, got " + std::to_string(entries.size()));
  }
  std::vector<DyadicNode> nodes;
  std::vector<Rational> values;
  std::map<DyadicNode, std::size_t> position;
  for (const auto& [n, x] : entries) {
    position[n] = nodes.size();
    nodes.push_back(n);
    values.push_back(x);
  }
  const std::size_t count = nodes.size();

  // A segment of an optimal family can be trimmed to end at support nodes, so
  // every segment starts at the first support node it covers.
  std::vector<bool> decided(count, false);
  std::set<DyadicNode> used;
  SegmentFamily family;
  Rational best = 0;
  SegmentFamily best_family;

  std::function<void(std::size_t, const Rational&)> search = [&](std::size_t i, const Rational& acc) {
    while (i < count && decided[i]) ++i;
    if (i == count) {
      if (acc > best) {
        best = acc;
        best_family = family;
      }
      return;
    }
    decided[i] = true;
    search(i + 1, acc);
    for (std::size_t j = i; j < count; ++j) {
      if (decided[j] && j != i) continue;
      if (!nodes[i].is_ancestor_or_self_of(nodes[j])) continue;
      Segment s = chain(nodes[i], nodes[j]);
      bool free = std::none_of(s.begin(), s.end(), [&](const DyadicNode& n) {
        if (used.count(n) != 0) return true;
        auto it = position.find(n);
        return it != position.end() && it->second != i && decided[it->second];
      });
      if (!free) continue;
      Rational sum = 0;
      std::vector<std::size_t> marked;
      for (const auto& n : s) {
        used.insert(n);
        if (auto it = position.find(n); it != position.end()) {
          sum += values[it->second];
          if (it->second != i) {
            decided[it->second] = true;
            marked.push_back(it->second);
          }
        }
      }
      family.push_back(s);
      search(i + 1, acc + sum * sum);
      family.pop_back();
      for (const auto& n : s) used.erase(n);
      for (auto k : marked) decided[k] = false;
    }
    decided[i] = false;
  };
  search(0, Rational(0));
  return {NormValue::square(best), best_family};
}

NormValue jt_norm_bruteforce(const SparseVector& v) { return jt_norm_bruteforce_witness(v).norm; }

NormValue jt_norm_dp(const SparseVector& v, JtDpOptions options) {
  auto entries = tree_entries(v);
  for (const auto& [n, x] : entries) {
    if (n.level > kDpLevelCap) {
      throw SizingError("JT norm DP limited to tree level " + std::to_string(kDpLevelCap) + ", got node " +
                        to_string(n));
    }
  }
  return NormValue::square(*jt_select_max_square(entries, {}, options));
}

std::optional<Rational> jt_select_max_square(const std::map<DyadicNode, Rational>& base,
                                             const std::vector<JtSelectChoice>& choices, JtDpOptions options,
                                             JtSelectStats* stats) {
  std::map<DyadicNode, std::vector<const JtSelectChoice*>> choices_at;
  for (const auto& c : choices) {
    if (!c.node.valid()) throw UniverseError("invalid tree node " + to_string(c.node));
    auto& list = choices_at[c.node];
    if (!list.empty() && list.front()->group != c.group) return std::nullopt;
    list.push_back(&c);
  }
  {
    std::vector<std::pair<Rational, std::uint32_t>> order;
    for (const auto& [n, list] : choices_at) order.emplace_back(n.point(), list.front()->group);
    std::sort(order.begin(), order.end());
    for (std::size_t i = 1; i < order.size(); ++i) {
      if (order[i].second < order[i - 1].second) return std::nullopt;
    }
  }

  std::set<DyadicNode> seeds;
  for (const auto& [n, x] : base) {
    if (!n.valid()) throw UniverseError("invalid tree node " + to_string(n));
    if (x != 0) seeds.insert(n);
  }
  for (const auto& [n, list] : choices_at) seeds.insert(n);
  if (seeds.empty()) return Rational(0);

  std::set<DyadicNode> tree = root_paths(seeds);
  std::vector<DyadicNode> order(tree.begin(), tree.end());
  std::sort(order.begin(), order.end(), [](const DyadicNode& x, const DyadicNode& y) { return y < x; });
  if (stats != nullptr) stats->tree_nodes = order.size();

  std::map<DyadicNode, StateMap> done;
  for (const DyadicNode& node : order) {
    Rational x0 = 0;
    if (auto it = base.find(node); it != base.end()) x0 = it->second;
    std::vector<Option> opts;
    if (auto it = choices_at.find(node); it != choices_at.end()) {
      auto g = static_cast<std::int64_t>(it->second.front()->group);
      opts.push_back({x0, Part{g, g, 0, 0}});
      for (const auto* c : it->second) opts.push_back({x0 + c->value, Part{g, g, c->slots, c->slots}});
    } else {
      opts.push_back({x0, Part{}});
    }

    auto take = [&](const DyadicNode& child) {
      auto it = done.find(child);
      if (it == done.end()) return absent_child();
      return std::move(it->second);
    };
    const StateMap left = take(node.left());
    const StateMap right = take(node.right());
    done.erase(node.left());
    done.erase(node.right());

    StateMap out;
    for (const auto& [kl, pl] : left) {
      for (const auto& opt : opts) {
        auto mid = merge(kl, opt.part);
        if (!mid) continue;
        for (const auto& [kr, pr] : right) {
          auto key = merge(*mid, kr);
          if (!key) continue;
          const Rational& x = opt.x;
          Rational rest = pl.h + pr.h;
          std::vector<Quad> through;
          through.reserve(1 + pl.g.size() + pr.g.size());
          through.push_back({x, rest});
          for (const auto& q : pl.g) through.push_back({q.a + x, q.b + pr.h});
          for (const auto& q : pr.g) through.push_back({q.a + x, q.b + pl.h});
          Rational h = rest;
          for (const auto& q : through) h = std::max(h, Rational(q.a * q.a + q.b));
          auto [slot, fresh] = out.try_emplace(*key, Profile{h, {}});
          if (!fresh && h > slot->second.h) slot->second.h = h;
          auto& g = slot->second.g;
          g.insert(g.end(), std::make_move_iterator(through.begin()), std::make_move_iterator(through.end()));
          if (options.prune && g.size() > 64) prune(g);
        }
      }
    }
    for (auto& [k, p] : out) {
      p.g.push_back({0, p.h});
      if (options.prune) prune(p.g);
    }
    if (stats != nullptr) stats->max_states = std::max(stats->max_states, out.size());
    done[node] = std::move(out);
  }

  const StateMap& top = done.at(DyadicNode::root());
  Rational best = 0;
  for (const auto& [k, p] : top) best = std::max(best, p.h);
  return best;
}

}  // namespace rilab
