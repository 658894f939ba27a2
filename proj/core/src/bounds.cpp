#include "noisycluster/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "noisycluster/errors.hpp"

namespace noisycluster {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void validate_prob(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0))
    throw InvalidInput(std::string("bounds: ") + name + " outside [0, 1]");
}

}  // namespace

double kl_bernoulli(double p, double q) {
  validate_prob(p, "p");
  validate_prob(q, "q");
  double total = 0.0;
  if (p > 0.0) {
    if (q == 0.0) return kInf;
    total += p * std::log(p / q);
  }
  if (p < 1.0) {
    if (q == 1.0) return kInf;
    total += (1.0 - p) * std::log((1.0 - p) / (1.0 - q));
  }
  return total;
}

double js_bernoulli(double p, double q) {
  return 0.5 * (kl_bernoulli(p, q) + kl_bernoulli(q, p));
}

double js_symmetric_closed_form(double p) {
  validate_prob(p, "p");
  if (p == 0.0 || p == 1.0) return kInf;
  return (1.0 - 2.0 * p) * std::log((1.0 - p) / p);
}

AdaptiveBound adaptive_query_lower_bound(double n, double k, double p, double q) {
  if (!(n > 0.0) || !(k > 0.0)) throw InvalidInput("bounds: n and k must be positive");
  const double js = js_bernoulli(p, q);
  const double d_pq = kl_bernoulli(p, q);
  const double d_qp = kl_bernoulli(q, p);
  AdaptiveBound bound;
  bound.js_bound = js > 0.0 ? n * k / js : kInf;
  const double min_kl = std::min(d_pq, d_qp);
  bound.min_kl_bound = min_kl > 0.0 ? n * k / min_kl : kInf;
  return bound;
}

double nonadaptive_query_lower_bound(double n, double k, double p, double q) {
  if (!(n > 1.0) || !(k > 0.0)) throw InvalidInput("bounds: need n > 1 and k > 0");
  const double sum = kl_bernoulli(p, q) + kl_bernoulli(q, p);
  return sum > 0.0 ? n * k * std::log(n) / sum : kInf;
}

bool sbm_feasibility(double a, double b, double k, double n, double Q) {
  if (!(a >= b && b >= 0.0)) throw InvalidInput("sbm_feasibility: need a >= b >= 0");
  if (!(Q >= 1.0)) throw InvalidInput("sbm_feasibility: need Q >= 1");
  if (!(k > 0.0) || !(n > 0.0)) throw InvalidInput("sbm_feasibility: k, n positive");
  return std::sqrt(a) - std::sqrt(b) >= (n / 2.0) * std::sqrt(k / Q);
}

}  // namespace noisycluster
