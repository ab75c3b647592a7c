#include "billiard_knots/invariants.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace bk {

// ---------------------------------------------------------------------------
// LaurentPolynomial

LaurentPolynomial LaurentPolynomial::monomial(int exponent, std::int64_t coefficient) {
  LaurentPolynomial p;
  p.add_term(exponent, coefficient);
  return p;
}

std::int64_t LaurentPolynomial::coefficient(int exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? 0 : it->second;
}

void LaurentPolynomial::add_term(int exponent, std::int64_t coefficient) {
  if (coefficient == 0) return;
  auto [it, inserted] = terms_.try_emplace(exponent, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0) terms_.erase(it);
  }
}

LaurentPolynomial LaurentPolynomial::inverted() const {
  LaurentPolynomial out;
  for (auto [e, c] : terms_) out.add_term(-e, c);
  return out;
}

LaurentPolynomial& LaurentPolynomial::operator+=(const LaurentPolynomial& other) {
  for (auto [e, c] : other.terms_) add_term(e, c);
  return *this;
}

LaurentPolynomial& LaurentPolynomial::operator-=(const LaurentPolynomial& other) {
  for (auto [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
  LaurentPolynomial out;
  for (auto [ea, ca] : a.terms_)
    for (auto [eb, cb] : b.terms_) out.add_term(ea + eb, ca * cb);
  return out;
}

std::string LaurentPolynomial::to_string(std::string_view variable, int exponent_denominator) const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    auto [e, c] = *it;
    std::int64_t magnitude = c < 0 ? -c : c;
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (e == 0) {
      out << magnitude;
      continue;
    }
    if (magnitude != 1) out << magnitude << "*";
    out << variable;
    int g = std::gcd(e, exponent_denominator);
    int num = e / g;
    int den = exponent_denominator / g;
    if (den == 1) {
      if (num != 1) out << "^" << (num < 0 ? "(" + std::to_string(num) + ")" : std::to_string(num));
    } else {
      out << "^(" << num << "/" << den << ")";
    }
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// PDCode

PDCode::PDCode(std::vector<std::array<int, 4>> crossings, std::vector<int> signs, int free_loops)
    : crossings_(std::move(crossings)), signs_(std::move(signs)), free_loops_(free_loops) {
  if (crossings_.size() != signs_.size()) throw std::invalid_argument("one sign per crossing required");
  if (free_loops_ < 0) throw std::invalid_argument("negative free loop count");
  std::map<int, int> occurrences;
  for (const auto& x : crossings_)
    for (int label : x) ++occurrences[label];
  for (auto [label, count] : occurrences)
    if (count != 2) throw std::invalid_argument("arc " + std::to_string(label) + " must appear exactly twice");
  for (int s : signs_)
    if (s != 1 && s != -1) throw std::invalid_argument("crossing signs must be +1 or -1");
}

int PDCode::writhe() const { return std::accumulate(signs_.begin(), signs_.end(), 0); }

namespace {

// Slot positions of the incoming and outgoing over-strand.
int over_in_slot(int sign) { return sign > 0 ? 3 : 1; }
int over_out_slot(int sign) { return sign > 0 ? 1 : 3; }

// successor[label] = the arc that follows `label` through the crossing at
// its head.
std::map<int, int> arc_successors(const PDCode& pd) {
  std::map<int, int> next;
  for (int i = 0; i < pd.size(); ++i) {
    const auto& x = pd.crossings()[i];
    int s = pd.signs()[i];
    next[x[0]] = x[2];
    next[x[over_in_slot(s)]] = x[over_out_slot(s)];
  }
  return next;
}

}  // namespace

int PDCode::component_count() const {
  auto next = arc_successors(*this);
  std::map<int, bool> seen;
  int count = free_loops_;
  for (auto [label, unused] : next) {
    if (seen[label]) continue;
    ++count;
    for (int a = label; !seen[a]; a = next.at(a)) seen[a] = true;
  }
  return count;
}

PDCode relabel(const PDCode& pd, const std::map<int, int>& mapping) {
  std::vector<std::array<int, 4>> xs = pd.crossings();
  for (auto& x : xs)
    for (int& label : x) label = mapping.at(label);
  return PDCode(std::move(xs), pd.signs(), pd.free_loops());
}

PDCode canonical_labels(const PDCode& pd) {
  auto next = arc_successors(pd);
  std::map<int, int> mapping;
  int fresh = 1;
  for (auto [label, unused] : next) {
    if (mapping.count(label)) continue;
    for (int a = label; !mapping.count(a); a = next.at(a)) mapping[a] = fresh++;
  }
  return relabel(pd, mapping);
}

PDCode mirror(const PDCode& pd) {
  std::vector<std::array<int, 4>> xs;
  std::vector<int> signs;
  for (int i = 0; i < pd.size(); ++i) {
    const auto& [a, b, c, d] = pd.crossings()[i];
    if (pd.signs()[i] > 0) {
      xs.push_back({d, a, b, c});
    } else {
      xs.push_back({b, c, d, a});
    }
    signs.push_back(-pd.signs()[i]);
  }
  return PDCode(std::move(xs), std::move(signs), pd.free_loops());
}

PDCode extract_pd(const PlanarDiagram& diagram, const std::vector<bool>& first_over) {
  const int n = diagram.crossing_count;
  if (static_cast<int>(first_over.size()) != n) throw std::invalid_argument("one over flag per crossing required");

  struct Ends {
    int in_arc = 0;
    int out_arc = 0;
    Vec2<double> direction;
  };
  std::vector<std::vector<Ends>> ends(n);
  int free_loops = 0;
  int offset = 0;
  for (const auto& component : diagram.components) {
    const int m = static_cast<int>(component.size());
    if (m == 0) {
      ++free_loops;
      continue;
    }
    for (int j = 0; j < m; ++j) {
      const PlanarPassage& pass = component[j];
      if (pass.crossing < 0 || pass.crossing >= n) throw std::invalid_argument("passage crossing id out of range");
      Ends e;
      e.in_arc = offset + (j + m - 1) % m + 1;
      e.out_arc = offset + j + 1;
      e.direction = pass.direction;
      ends[pass.crossing].push_back(e);
    }
    offset += m;
  }

  std::vector<std::array<int, 4>> xs;
  std::vector<int> signs;
  for (int c = 0; c < n; ++c) {
    if (ends[c].size() != 2) throw std::invalid_argument("crossing " + std::to_string(c) + " needs two passages");
    const Ends& over = first_over[c] ? ends[c][0] : ends[c][1];
    const Ends& under = first_over[c] ? ends[c][1] : ends[c][0];
    double orientation = cross(over.direction, under.direction);
    if (orientation == 0.0) throw std::invalid_argument("tangential crossing " + std::to_string(c));
    if (orientation > 0) {
      xs.push_back({under.in_arc, over.out_arc, under.out_arc, over.in_arc});
      signs.push_back(1);
    } else {
      xs.push_back({under.in_arc, over.in_arc, under.out_arc, over.out_arc});
      signs.push_back(-1);
    }
  }
  return PDCode(std::move(xs), std::move(signs), free_loops);
}

PDCode braid_closure_pd(int strands, const std::vector<BraidLetter>& word) {
  if (strands < 1) throw std::invalid_argument("braid needs at least one strand");
  std::vector<int> bottom(strands);
  std::iota(bottom.begin(), bottom.end(), 1);
  std::vector<int> current = bottom;
  std::vector<char> touched(strands, 0);
  int next_label = strands + 1;

  std::vector<std::array<int, 4>> xs;
  std::vector<int> signs;
  for (const BraidLetter& letter : word) {
    const int i = letter.generator - 1;
    if (i < 0 || i + 1 >= strands) throw std::invalid_argument("generator out of range");
    const int left_in = current[i];
    const int right_in = current[i + 1];
    const int new_left = next_label++;   // arc leaving at position i
    const int new_right = next_label++;  // arc leaving at position i + 1
    // The left strand moves right, the right strand moves left.
    if (letter.sign > 0) {
      xs.push_back({right_in, new_right, new_left, left_in});
      signs.push_back(1);
    } else {
      xs.push_back({left_in, right_in, new_right, new_left});
      signs.push_back(-1);
    }
    current[i] = new_left;
    current[i + 1] = new_right;
    touched[i] = touched[i + 1] = 1;
  }

  // Close up: the arc leaving the top at position j is the one entering the
  // bottom at position j.
  std::map<int, int> closing;
  int free_loops = 0;
  for (int j = 0; j < strands; ++j) {
    if (!touched[j]) {
      ++free_loops;
      continue;
    }
    closing[current[j]] = bottom[j];
  }
  for (auto& x : xs)
    for (int& label : x) {
      auto it = closing.find(label);
      if (it != closing.end()) label = it->second;
    }
  return canonical_labels(PDCode(std::move(xs), std::move(signs), free_loops));
}

PDCode braid_closure_pd(const QuasitoricPattern& pattern) {
  return braid_closure_pd(pattern.strands(), pattern.word());
}

// ---------------------------------------------------------------------------
// Kauffman bracket

namespace {

void check_budget(const PDCode& pd) {
  if (pd.size() > kMaxBracketCrossings) {
    throw BracketBudgetError("bracket state sum limited to " + std::to_string(kMaxBracketCrossings) +
                             " crossings, got " + std::to_string(pd.size()));
  }
}

// Maps labels to 0..m-1.
std::vector<std::array<int, 4>> dense_labels(const PDCode& pd, int& label_count) {
  std::map<int, int> index;
  for (const auto& x : pd.crossings())
    for (int label : x) index.try_emplace(label, static_cast<int>(index.size()));
  label_count = static_cast<int>(index.size());
  std::vector<std::array<int, 4>> out;
  for (const auto& x : pd.crossings()) out.push_back({index[x[0]], index[x[1]], index[x[2]], index[x[3]]});
  return out;
}

LaurentPolynomial loop_value_power(int power) {
  // (-A^2 - A^-2)^power
  LaurentPolynomial d = LaurentPolynomial::monomial(2, -1) + LaurentPolynomial::monomial(-2, -1);
  LaurentPolynomial out = LaurentPolynomial::monomial(0, 1);
  for (int i = 0; i < power; ++i) out = out * d;
  return out;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

}  // namespace

LaurentPolynomial kauffman_bracket(const PDCode& pd) {
  check_budget(pd);
  const int n = pd.size();
  if (n == 0) return loop_value_power(std::max(pd.free_loops(), 1) - 1);

  int m = 0;
  auto xs = dense_labels(pd, m);
  // tally[a][loops]: states with `a` A-smoothings and `loops` circles
  std::vector<std::vector<std::int64_t>> tally(n + 1, std::vector<std::int64_t>(m + pd.free_loops() + 1, 0));
  const std::uint64_t states = std::uint64_t{1} << n;
  for (std::uint64_t state = 0; state < states; ++state) {
    UnionFind uf(m);
    int loops = m;
    int a_count = 0;
    for (int i = 0; i < n; ++i) {
      const auto& x = xs[i];
      if ((state >> i) & 1U) {
        loops -= uf.unite(x[0], x[3]);
        loops -= uf.unite(x[1], x[2]);
      } else {
        ++a_count;
        loops -= uf.unite(x[0], x[1]);
        loops -= uf.unite(x[2], x[3]);
      }
    }
    ++tally[a_count][loops + pd.free_loops()];
  }

  LaurentPolynomial out;
  for (int a = 0; a <= n; ++a)
    for (std::size_t loops = 1; loops < tally[a].size(); ++loops) {
      if (tally[a][loops] == 0) continue;
      out += LaurentPolynomial::monomial(a - (n - a), tally[a][loops]) * loop_value_power(static_cast<int>(loops) - 1);
    }
  return out;
}

namespace {

// Slots 4i..4i+3 are the corners of crossing i. partner[s] is the slot at the
// far end of the arc leaving s. Smoothing a crossing joins two pairs of its
// corners; joining a slot to its own partner closes a loop.
class SkeinSmoother {
 public:
  SkeinSmoother(const std::vector<std::array<int, 4>>& xs, int free_loops)
      : n_(static_cast<int>(xs.size())), free_loops_(free_loops), partner_(4 * xs.size(), -1),
        tally_(n_ + 1, std::vector<std::int64_t>(2 * n_ + free_loops + 2, 0)) {
    std::map<int, int> first_slot;
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < 4; ++j) {
        int slot = 4 * i + j;
        auto [it, inserted] = first_slot.try_emplace(xs[i][j], slot);
        if (!inserted) {
          partner_[slot] = it->second;
          partner_[it->second] = slot;
        }
      }
  }

  LaurentPolynomial run() {
    recurse(0, 0, 0);
    LaurentPolynomial out;
    for (int a = 0; a <= n_; ++a)
      for (std::size_t loops = 1; loops < tally_[a].size(); ++loops) {
        if (tally_[a][loops] == 0) continue;
        LaurentPolynomial term = LaurentPolynomial::monomial(2 * a - n_, tally_[a][loops]);
        LaurentPolynomial d = LaurentPolynomial::monomial(2, -1) + LaurentPolynomial::monomial(-2, -1);
        for (std::size_t k = 1; k < loops; ++k) term = term * d;
        out += term;
      }
    return out;
  }

 private:
  struct Change {
    int slot;
    int old_partner;
  };

  // Returns 1 if the join closed a loop.
  int join(int s, int t) {
    if (partner_[s] == t) return 1;
    int a = partner_[s];
    int b = partner_[t];
    history_.push_back({a, partner_[a]});
    history_.push_back({b, partner_[b]});
    partner_[a] = b;
    partner_[b] = a;
    return 0;
  }

  void undo_to(std::size_t mark) {
    while (history_.size() > mark) {
      partner_[history_.back().slot] = history_.back().old_partner;
      history_.pop_back();
    }
  }

  void recurse(int crossing, int a_count, int loops) {
    if (crossing == n_) {
      ++tally_[a_count][loops + free_loops_];
      return;
    }
    const int base = 4 * crossing;
    std::size_t mark = history_.size();

    int closed = join(base + 0, base + 1);
    closed += join(base + 2, base + 3);
    recurse(crossing + 1, a_count + 1, loops + closed);
    undo_to(mark);

    closed = join(base + 0, base + 3);
    closed += join(base + 1, base + 2);
    recurse(crossing + 1, a_count, loops + closed);
    undo_to(mark);
  }

  int n_;
  int free_loops_;
  std::vector<int> partner_;
  std::vector<Change> history_;
  std::vector<std::vector<std::int64_t>> tally_;
};

}  // namespace

LaurentPolynomial kauffman_bracket_skein(const PDCode& pd) {
  check_budget(pd);
  if (pd.size() == 0) {
    LaurentPolynomial d = LaurentPolynomial::monomial(2, -1) + LaurentPolynomial::monomial(-2, -1);
    LaurentPolynomial out = LaurentPolynomial::monomial(0, 1);
    for (int k = 1; k < pd.free_loops(); ++k) out = out * d;
    return out;
  }
  return SkeinSmoother(pd.crossings(), pd.free_loops()).run();
}

LaurentPolynomial jones_from_bracket(const LaurentPolynomial& bracket, int writhe) {
  const std::int64_t sign = (writhe % 2 == 0) ? 1 : -1;
  LaurentPolynomial out;
  for (auto [e, c] : bracket.terms()) {
    int a_exponent = e - 3 * writhe;
    if (a_exponent % 2 != 0) throw std::invalid_argument("bracket exponent parity inconsistent with writhe");
    // A^k = t^(-k/4) = (t^(1/2))^(-k/2)
    out += LaurentPolynomial::monomial(-a_exponent / 2, sign * c);
  }
  return out;
}

LaurentPolynomial jones(const PDCode& pd, int writhe) { return jones_from_bracket(kauffman_bracket(pd), writhe); }

LaurentPolynomial jones_skein(const PDCode& pd, int writhe) {
  return jones_from_bracket(kauffman_bracket_skein(pd), writhe);
}

}  // namespace bk
