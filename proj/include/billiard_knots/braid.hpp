#ifndef BILLIARD_KNOTS_BRAID_HPP
#define BILLIARD_KNOTS_BRAID_HPP

#include <Eigen/Core>

#include <vector>

namespace bk {

/// sigma_i^sign, 1 <= i <= strands - 1. A positive letter carries the left
/// strand over the right one when the braid is read upward, which makes it a
/// positive crossing in the closure.
struct BraidLetter {
  int generator = 1;
  int sign = 1;

  friend bool operator==(const BraidLetter&, const BraidLetter&) = default;
};

using SignMatrix = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// The toric braid (sigma_1 ... sigma_{k-1})^n with a sign attached to every
/// letter. Row r of the sign matrix is the r-th repetition.
class QuasitoricPattern {
 public:
  QuasitoricPattern(int strands, int repetitions, SignMatrix signs);

  int strands() const { return strands_; }
  int repetitions() const { return repetitions_; }
  const SignMatrix& signs() const { return signs_; }
  int sign(int row, int col) const { return signs_(row, col); }

  /// Row-major flattening; generator indices cycle 1..k-1 in every row.
  std::vector<BraidLetter> word() const;

  friend bool operator==(const QuasitoricPattern& a, const QuasitoricPattern& b) {
    return a.strands_ == b.strands_ && a.repetitions_ == b.repetitions_ && a.signs_ == b.signs_;
  }

 private:
  int strands_;
  int repetitions_;
  SignMatrix signs_;
};

class StrandPermutation {
 public:
  explicit StrandPermutation(std::vector<int> images);

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[i]; }
  const std::vector<int>& images() const { return images_; }
  std::vector<std::vector<int>> cycles() const;

 private:
  std::vector<int> images_;
};

QuasitoricPattern toric_pattern(int strands, int repetitions);

/// images[i] is the final position of the strand that starts at position i.
StrandPermutation closure_permutation(const QuasitoricPattern& pattern);

int component_count(const QuasitoricPattern& pattern);

/// Appends blocks Delta^2 Delta^-2 (k positive rows, then k negative rows)
/// until repetitions >= 2k + 1. The braid itself is unchanged.
QuasitoricPattern pad_to_min_repetitions(const QuasitoricPattern& pattern);

}  // namespace bk

#endif  // BILLIARD_KNOTS_BRAID_HPP
