#include "billiard_knots/braid.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace bk {

QuasitoricPattern::QuasitoricPattern(int strands, int repetitions, SignMatrix signs)
    : strands_(strands), repetitions_(repetitions), signs_(std::move(signs)) {
  if (strands_ < 2) throw std::domain_error("strands must be ≥ 2");
  if (repetitions_ < 1) throw std::domain_error("repetitions must be ≥ 1");
  if (signs_.rows() != repetitions_ || signs_.cols() != strands_ - 1) {
    throw std::domain_error("sign matrix must be " + std::to_string(repetitions_) + "x" +
                            std::to_string(strands_ - 1));
  }
  for (Eigen::Index i = 0; i < signs_.size(); ++i) {
    int s = signs_.data()[i];
    if (s != 1 && s != -1) throw std::domain_error("signs must be +1 or -1");
  }
}

std::vector<BraidLetter> QuasitoricPattern::word() const {
  std::vector<BraidLetter> out;
  out.reserve(static_cast<std::size_t>(repetitions_) * (strands_ - 1));
  for (int r = 0; r < repetitions_; ++r)
    for (int c = 0; c < strands_ - 1; ++c) out.push_back({c + 1, signs_(r, c)});
  return out;
}

StrandPermutation::StrandPermutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<char> seen(images_.size(), 0);
  for (int v : images_) {
    if (v < 0 || v >= size() || seen[v]) throw std::invalid_argument("not a permutation");
    seen[v] = 1;
  }
}

std::vector<std::vector<int>> StrandPermutation::cycles() const {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(images_.size(), 0);
  for (int start = 0; start < size(); ++start) {
    if (seen[start]) continue;
    std::vector<int> cycle;
    for (int v = start; !seen[v]; v = images_[v]) {
      seen[v] = 1;
      cycle.push_back(v);
    }
    out.push_back(std::move(cycle));
  }
  return out;
}

QuasitoricPattern toric_pattern(int strands, int repetitions) {
  if (strands < 2) throw std::domain_error("strands must be ≥ 2");
  if (repetitions < 1) throw std::domain_error("repetitions must be ≥ 1");
  return QuasitoricPattern(strands, repetitions, SignMatrix::Ones(repetitions, strands - 1));
}

StrandPermutation closure_permutation(const QuasitoricPattern& pattern) {
  const int k = pattern.strands();
  // strand_at[pos] = which starting strand currently occupies pos
  std::vector<int> strand_at(k);
  std::iota(strand_at.begin(), strand_at.end(), 0);
  for (const BraidLetter& letter : pattern.word())
    std::swap(strand_at[letter.generator - 1], strand_at[letter.generator]);
  std::vector<int> images(k);
  for (int pos = 0; pos < k; ++pos) images[strand_at[pos]] = pos;
  return StrandPermutation(std::move(images));
}

int component_count(const QuasitoricPattern& pattern) {
  return static_cast<int>(closure_permutation(pattern).cycles().size());
}

QuasitoricPattern pad_to_min_repetitions(const QuasitoricPattern& pattern) {
  const int k = pattern.strands();
  const int target = 2 * k + 1;
  int n = pattern.repetitions();
  if (n >= target) return pattern;
  const int blocks = (target - n + 2 * k - 1) / (2 * k);
  SignMatrix signs(n + blocks * 2 * k, k - 1);
  signs.topRows(n) = pattern.signs();
  for (int b = 0; b < blocks; ++b) {
    signs.middleRows(n + b * 2 * k, k).setConstant(1);
    signs.middleRows(n + b * 2 * k + k, k).setConstant(-1);
  }
  const int rows = static_cast<int>(signs.rows());
  return QuasitoricPattern(k, rows, std::move(signs));
}

}  // namespace bk
