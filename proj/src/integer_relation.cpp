#include "billiard_knots/integer_relation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bk {

namespace {

using RealMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
using IntegerMatrix = Eigen::Matrix<Integer, Eigen::Dynamic, Eigen::Dynamic>;

Integer nearest_integer(const Real& x) { return floor_integer(x + Real(0.5)); }

unsigned tol_digits(const Real& tol) {
  return static_cast<unsigned>(std::ceil(-std::log10(to_double(tol)) - 1e-9));
}

}  // namespace

RelationResult pslq(const std::vector<Real>& x, const Integer& max_coeff, const Real& threshold, int max_iterations) {
  const int n = static_cast<int>(x.size());
  if (n < 2) throw std::invalid_argument("pslq needs at least two numbers");
  RelationResult result;

  const Real gamma = mp::sqrt(Real(4) / 3);
  const Real stop_bound = to_real(Rational(max_coeff)) * mp::sqrt(Real(n));

  std::vector<Real> s(n);
  {
    Real acc = 0;
    for (int k = n - 1; k >= 0; --k) {
      acc += x[k] * x[k];
      s[k] = mp::sqrt(acc);
    }
  }
  if (s[0] == 0) throw std::invalid_argument("pslq input is the zero vector");
  std::vector<Real> y(n);
  for (int k = 0; k < n; ++k) {
    y[k] = x[k] / s[0];
  }
  for (int k = n - 1; k >= 0; --k) s[k] /= s[0];

  RealMatrix h = RealMatrix::Zero(n, n - 1);
  for (int j = 0; j < n - 1; ++j) {
    h(j, j) = s[j + 1] / s[j];
    for (int i = j + 1; i < n; ++i) h(i, j) = -y[i] * y[j] / (s[j] * s[j + 1]);
  }
  IntegerMatrix b = IntegerMatrix::Identity(n, n);

  auto reduce = [&](int i, int j) {
    if (h(j, j) == 0) return;
    Integer t = nearest_integer(h(i, j) / h(j, j));
    if (t == 0) return;
    Real tr = to_real(Rational(t));
    y[j] += tr * y[i];
    for (int k = 0; k <= j; ++k) h(i, k) -= tr * h(j, k);
    for (int k = 0; k < n; ++k) b(k, j) += t * b(k, i);
  };
  for (int i = 1; i < n; ++i)
    for (int j = i - 1; j >= 0; --j) reduce(i, j);

  auto found = [&]() -> int {
    for (int j = 0; j < n; ++j)
      if (mp::abs(y[j]) < threshold) return j;
    return -1;
  };
  auto finish_with_relation = [&](int j) {
    result.relation.resize(n);
    Real residual = 0;
    Integer largest = 0;
    for (int k = 0; k < n; ++k) {
      result.relation[k] = b(k, j);
      residual += to_real(Rational(b(k, j))) * x[k];
      largest = std::max(largest, Integer(mp::abs(b(k, j))));
    }
    result.residual = mp::abs(residual);
    result.status = largest <= max_coeff ? RelationStatus::Relation : RelationStatus::Inconclusive;
  };

  for (result.iterations = 0; result.iterations < max_iterations; ++result.iterations) {
    Real hmax = 0;
    for (int j = 0; j < n - 1; ++j) hmax = std::max(hmax, Real(mp::abs(h(j, j))));
    result.norm_bound = hmax == 0 ? Real(0) : Real(1 / hmax);
    if (int j = found(); j >= 0) {
      finish_with_relation(j);
      return result;
    }
    if (result.norm_bound > stop_bound) {
      result.status = RelationStatus::Independent;
      return result;
    }

    int m = 0;
    Real best = -1;
    Real weight = 1;
    for (int i = 0; i < n - 1; ++i) {
      weight *= gamma;
      Real v = weight * mp::abs(h(i, i));
      if (v > best) {
        best = v;
        m = i;
      }
    }
    std::swap(y[m], y[m + 1]);
    h.row(m).swap(h.row(m + 1));
    b.col(m).swap(b.col(m + 1));
    if (m < n - 2) {
      Real t0 = mp::sqrt(h(m, m) * h(m, m) + h(m, m + 1) * h(m, m + 1));
      Real t1 = h(m, m) / t0;
      Real t2 = h(m, m + 1) / t0;
      for (int i = m; i < n; ++i) {
        Real t3 = h(i, m), t4 = h(i, m + 1);
        h(i, m) = t1 * t3 + t2 * t4;
        h(i, m + 1) = -t2 * t3 + t1 * t4;
      }
    }
    for (int i = m + 1; i < n; ++i)
      for (int j = std::min(i - 1, m + 1); j >= 0; --j) reduce(i, j);
  }
  result.status = RelationStatus::Inconclusive;
  return result;
}

unsigned required_digits(std::size_t count, const Integer& max_coeff, const Real& tol) {
  const unsigned d = tol_digits(tol);
  const double per_number = std::log10(2 * max_coeff.convert_to<double>() + 1);
  const auto lattice = static_cast<unsigned>(std::ceil(3.0 * static_cast<double>(count) * per_number)) + d;
  return std::max(4 * d, lattice);
}

IndependenceResult independence_check(const std::vector<Real>& arcs, const Integer& max_coeff, const Real& tol) {
  if (max_coeff < 1) throw std::invalid_argument("max_coeff must be positive");
  if (!(tol > 0)) throw std::invalid_argument("tol must be positive");
  std::vector<Real> x;
  x.reserve(arcs.size() + 1);
  unsigned digits = bits_to_digits10(precision_bits());
  for (const auto& t : arcs) digits = std::min(digits, t.precision());
  x.push_back(Real(1));
  x.insert(x.end(), arcs.begin(), arcs.end());

  const unsigned needed = required_digits(x.size(), max_coeff, tol);
  if (digits < needed) {
    throw PrecisionError("independence check of " + std::to_string(x.size()) + " numbers needs " +
                         std::to_string(needed) + " digits, inputs carry " + std::to_string(digits));
  }
  PrecisionScope scope(digits10_to_bits(digits));
  const Real threshold = mp::pow(Real(10), -static_cast<int>(digits - tol_digits(tol)));

  RelationResult r = pslq(x, max_coeff, threshold);
  IndependenceResult out;
  out.digits = digits;
  out.norm_bound = r.norm_bound;
  out.residual = r.residual;
  out.status = r.status;
  if (r.status == RelationStatus::Relation && r.residual > tol) out.status = RelationStatus::Inconclusive;
  if (!r.relation.empty()) {
    // leading nonzero coefficient positive
    auto lead = std::find_if(r.relation.begin(), r.relation.end(), [](const Integer& v) { return v != 0; });
    if (lead != r.relation.end() && *lead < 0)
      for (auto& v : r.relation) v = -v;
    out.witness = std::move(r.relation);
  }
  return out;
}

}  // namespace bk
