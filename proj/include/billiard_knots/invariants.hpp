#ifndef BILLIARD_KNOTS_INVARIANTS_HPP
#define BILLIARD_KNOTS_INVARIANTS_HPP

#include "billiard_knots/braid.hpp"
#include "billiard_knots/planar_diagram.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bk {

/// Integer Laurent polynomial in one variable. Zero coefficients are never
/// stored, so structural equality is polynomial equality.
class LaurentPolynomial {
 public:
  LaurentPolynomial() = default;
  static LaurentPolynomial monomial(int exponent, std::int64_t coefficient = 1);

  const std::map<int, std::int64_t>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::int64_t coefficient(int exponent) const;

  /// x -> x^-1
  LaurentPolynomial inverted() const;

  LaurentPolynomial& operator+=(const LaurentPolynomial& other);
  LaurentPolynomial& operator-=(const LaurentPolynomial& other);
  friend LaurentPolynomial operator+(LaurentPolynomial a, const LaurentPolynomial& b) { return a += b; }
  friend LaurentPolynomial operator-(LaurentPolynomial a, const LaurentPolynomial& b) { return a -= b; }
  friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b);
  friend bool operator==(const LaurentPolynomial&, const LaurentPolynomial&) = default;

  /// Highest power first, e.g. "-t^4 + t^3 + t". With exponent_denominator 2
  /// the stored exponents are halves: key 3 prints as t^(3/2).
  std::string to_string(std::string_view variable, int exponent_denominator = 1) const;

 private:
  void add_term(int exponent, std::int64_t coefficient);
  std::map<int, std::int64_t> terms_;
};

/// Planar diagram code. Each crossing lists its four arc labels
/// counterclockwise starting from the incoming under-strand. Over-strand
/// direction is recorded by the crossing sign: for a positive crossing the
/// over-strand enters at slot 3 and leaves at slot 1, for a negative one it
/// enters at slot 1 and leaves at slot 3. Components without crossings are
/// counted in free_loops.
class PDCode {
 public:
  PDCode() = default;
  PDCode(std::vector<std::array<int, 4>> crossings, std::vector<int> signs, int free_loops = 0);

  const std::vector<std::array<int, 4>>& crossings() const { return crossings_; }
  const std::vector<int>& signs() const { return signs_; }
  int free_loops() const { return free_loops_; }
  int size() const { return static_cast<int>(crossings_.size()); }
  int writhe() const;
  /// Number of closed components, counting free loops.
  int component_count() const;

  friend bool operator==(const PDCode&, const PDCode&) = default;

 private:
  std::vector<std::array<int, 4>> crossings_;
  std::vector<int> signs_;
  int free_loops_ = 0;
};

inline constexpr int kMaxBracketCrossings = 24;

class BracketBudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// first_over[c] tells whether the first passage through crossing c (in
/// component-major order) is the over-strand. Crossing signs come from the
/// passage directions.
PDCode extract_pd(const PlanarDiagram& diagram, const std::vector<bool>& first_over);

/// Standard closure of a braid word on `strands` strands, drawn with time
/// running upward and positions increasing to the right.
PDCode braid_closure_pd(int strands, const std::vector<BraidLetter>& word);
PDCode braid_closure_pd(const QuasitoricPattern& pattern);

/// Relabels arcs 1, 2, ... in traversal order, components in order of their
/// smallest original label.
PDCode canonical_labels(const PDCode& pd);
PDCode relabel(const PDCode& pd, const std::map<int, int>& mapping);
/// Crossing change at every crossing.
PDCode mirror(const PDCode& pd);

/// Kauffman bracket in A, normalised to <O> = 1, by enumerating all 2^n
/// smoothing states and counting loops with a union-find over arc labels.
LaurentPolynomial kauffman_bracket(const PDCode& pd);
/// Same invariant by recursive smoothing, <D> = A<D_A> + A^-1<D_B>, tracking
/// loop closure on a slot-pairing graph.
LaurentPolynomial kauffman_bracket_skein(const PDCode& pd);

/// (-A^3)^-writhe <D> with A = t^(-1/4). Exponents are stored in units of
/// t^(1/2); print with to_string("t", 2).
LaurentPolynomial jones_from_bracket(const LaurentPolynomial& bracket, int writhe);
LaurentPolynomial jones(const PDCode& pd, int writhe);
LaurentPolynomial jones_skein(const PDCode& pd, int writhe);

}  // namespace bk

#endif  // BILLIARD_KNOTS_INVARIANTS_HPP
