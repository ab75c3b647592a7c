#ifndef BILLIARD_KNOTS_INTEGER_RELATION_HPP
#define BILLIARD_KNOTS_INTEGER_RELATION_HPP

#include "billiard_knots/numeric.hpp"

#include <stdexcept>
#include <vector>

namespace bk {

class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class RelationStatus {
  Independent,   // every relation has a coefficient above the bound
  Relation,      // a relation within the bound and tolerance was found
  Inconclusive,  // iteration cap reached or only a large relation found
};

struct RelationResult {
  RelationStatus status = RelationStatus::Inconclusive;
  std::vector<Integer> relation;  // empty unless a candidate was found
  Real residual;                  // |sum relation_i x_i|
  Real norm_bound;                // no relation has Euclidean norm below this
  int iterations = 0;
};

/// PSLQ with gamma = sqrt(4/3). Stops once the norm bound exceeds
/// max_coeff * sqrt(n), or some |y_j| drops below threshold.
RelationResult pslq(const std::vector<Real>& x, const Integer& max_coeff, const Real& threshold,
                    int max_iterations = 100000);

/// Decimal digits needed to decide relations among `count` numbers with
/// coefficients up to max_coeff at tolerance tol.
unsigned required_digits(std::size_t count, const Integer& max_coeff, const Real& tol);

/// Looks for lambda_0 + sum lambda_i t_i = 0 with |lambda|_inf <= max_coeff.
/// The witness, when present, is (lambda_0, lambda_1, ...). Throws
/// PrecisionError when the inputs carry fewer digits than required_digits.
struct IndependenceResult {
  RelationStatus status = RelationStatus::Inconclusive;
  std::vector<Integer> witness;
  Real residual;
  Real norm_bound;
  unsigned digits = 0;

  bool passed() const { return status == RelationStatus::Independent; }
};

IndependenceResult independence_check(const std::vector<Real>& arcs, const Integer& max_coeff, const Real& tol);

}  // namespace bk

#endif  // BILLIARD_KNOTS_INTEGER_RELATION_HPP
