#include "rtreg/summary.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rtreg {

double ess_initial_positive(const Eigen::Ref<const Vector>& x) {
  const Index n = x.size();
  if (n < 2) return static_cast<double>(n);
  const Vector c = x.array() - x.mean();
  const double c0 = c.squaredNorm() / static_cast<double>(n);
  if (!(c0 > 0.0)) return static_cast<double>(n);
  const auto rho = [&](Index t) {
    return c.head(n - t).dot(c.tail(n - t)) / (static_cast<double>(n) * c0);
  };
  double sum = 0.0;
  for (Index k = 0;; ++k) {
    const Index t1 = 2 * k, t2 = 2 * k + 1;
    if (t2 >= n) break;
    const double pair = (t1 == 0 ? 1.0 : rho(t1)) + rho(t2);
    if (pair <= 0.0) break;
    sum += pair;
  }
  const double tau = 2.0 * sum - 1.0;
  const double ess = tau > 0.0 ? static_cast<double>(n) / tau : static_cast<double>(n);
  return std::min(ess, static_cast<double>(n));
}

double quantile_type7(const Eigen::Ref<const Vector>& x, double prob) {
  if (x.size() < 1) throw std::invalid_argument("quantile of an empty sample");
  if (!(prob >= 0.0 && prob <= 1.0)) throw std::invalid_argument("quantile probability outside [0, 1]");
  std::vector<double> v(x.data(), x.data() + x.size());
  std::sort(v.begin(), v.end());
  const double h = (static_cast<double>(v.size()) - 1.0) * prob;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= v.size()) return v.back();
  return v[lo] + (h - std::floor(h)) * (v[lo + 1] - v[lo]);
}

Summary summarize_draws(const Matrix& draws, const std::vector<double>& probs) {
  const Index n = draws.rows(), d = draws.cols();
  if (n < 10) throw std::invalid_argument("summaries require at least 10 draws");
  Summary s;
  s.mean = draws.colwise().mean();
  s.sd.resize(d);
  s.ess.resize(d);
  for (Index j = 0; j < d; ++j) {
    s.sd(j) = std::sqrt((draws.col(j).array() - s.mean(j)).square().sum() / static_cast<double>(n - 1));
    s.ess(j) = ess_initial_positive(draws.col(j));
  }
  s.mcse_mean = s.sd.cwiseQuotient(s.ess.cwiseSqrt());
  s.mcse_sd = s.sd.cwiseQuotient((2.0 * s.ess).cwiseSqrt());
  for (double prob : probs) {
    Vector q(d);
    for (Index j = 0; j < d; ++j) q(j) = quantile_type7(draws.col(j), prob);
    s.quantiles.emplace(prob, std::move(q));
  }
  return s;
}

Summary summarize(const Chain& chain, const std::vector<double>& probs) {
  return summarize_draws(chain.draws, probs);
}

}  // namespace rtreg
