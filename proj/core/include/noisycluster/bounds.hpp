#pragma once

namespace noisycluster {

// Divergence-based reference values for experiment tables. All divergences
// are in nats. p = q yields an infinite bound (indistinguishable oracle);
// infinity is a signaled value so sweep tables can carry it.

// D(p||q) for Bernoulli parameters, with 0*ln 0 = 0. q in {0,1} with a
// mismatched p gives +infinity.
double kl_bernoulli(double p, double q);

// Jensen-Shannon flavor used by the lower bound: (D(p||q) + D(q||p)) / 2.
double js_bernoulli(double p, double q);

// Closed form of js_bernoulli(p, 1-p): (1-2p) * ln((1-p)/p).
double js_symmetric_closed_form(double p);

struct AdaptiveBound {
  double js_bound;      // n*k / js_bernoulli(p, q)
  double min_kl_bound;  // n*k / min(D(p||q), D(q||p)) — the tighter form
};

AdaptiveBound adaptive_query_lower_bound(double n, double k, double p, double q);

// n*k*ln n / (D(p||q) + D(q||p)).
double nonadaptive_query_lower_bound(double n, double k, double p, double q);

// Incomplete-SBM recovery condition for edge rates a ln n / n and b ln n / n
// observed on Q entries: recovery is not ruled out iff
// sqrt(a) - sqrt(b) >= (n/2) * sqrt(k/Q).
bool sbm_feasibility(double a, double b, double k, double n, double Q);

}  // namespace noisycluster
