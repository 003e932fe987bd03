#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fei {

inline void check_probability(double p)
{
  if (!(p >= 0.0 && p <= 1.0))
    throw std::domain_error("probability outside [0,1]");
}

/// binary entropy, h(0) = h(1) = 0
inline double h(double p)
{
  check_probability(p);
  if (p == 0.0 || p == 1.0)
    return 0.0;
  // 1 - p is exact for p >= 1/2; below that log1p keeps the small-p tail accurate
  double l1 = p >= 0.5 ? std::log2(1.0 - p) : std::log1p(-p) / std::numbers::ln2;
  return -p * std::log2(p) - (1.0 - p) * l1;
}

inline double h_tilde(double p)
{
  check_probability(p);
  return h(4.0 * p * (1.0 - p));
}

/// cross term of the conjunction entropy, as a plain formula
inline double psi_general(double p, double q)
{
  check_probability(p);
  check_probability(q);
  double pq = p * q;
  return h_tilde(pq) + 4.0 * pq * (h(p) + h(q) - h(pq));
}

/// same value; at q = 1/2 (or p = 1/2) returns 2h(p) so iota steps stay bit-exact
inline double psi(double p, double q)
{
  if (q == 0.5)
    return (check_probability(p), 2.0 * h(p));
  if (p == 0.5)
    return (check_probability(q), 2.0 * h(q));
  return psi_general(p, q);
}

/// compensated (Neumaier) running sum
class CompensatedSum {
public:
  void add(double x)
  {
    double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline const double kPhi = (std::sqrt(5.0) - 1.0) / 2.0;

} // namespace fei
