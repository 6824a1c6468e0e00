#include "rtreg/ols.hpp"

#include "rtreg/rng.hpp"
#include "rtreg/simulate.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace rtreg;

namespace {

Dataset noisy_line(Index n, std::uint64_t seed) {
  SimConfig config;
  config.n = n;
  config.p = 2;
  config.beta_true = Vector::Ones(2);
  config.sigma_true = 1.0;
  config.scheme = CovariateScheme::sequential;
  config.seed = seed;
  return simulate_dataset(config);
}

}  // namespace

TEST_CASE("exact-fit data recovers the coefficients with zero residual") {
  Matrix design(6, 2);
  Vector response(6);
  for (Index i = 0; i < 6; ++i) {
    design(i, 0) = 1.0;
    design(i, 1) = static_cast<double>(i);
    response(i) = 2.0 - 3.0 * static_cast<double>(i);
  }
  const OlsFit fit = ols_fit(make_dataset(design, response));
  CHECK(std::abs(fit.beta_hat(0) - 2.0) < 1e-12);
  CHECK(std::abs(fit.beta_hat(1) + 3.0) < 1e-12);
  CHECK(fit.residual_sumsq < 1e-20);
  CHECK(fit.has_posterior_cov);  // n = 6 > p + 2
  CHECK(fit.posterior_cov.norm() < 1e-20);
}

TEST_CASE("sequential design matches an independent dense solve") {
  const Dataset data = noisy_line(20, 1);
  const OlsFit fit = ols_fit(data);
  const Matrix xtx = data.design.transpose() * data.design;
  const Vector xty = data.design.transpose() * data.response;
  const Vector direct = xtx.fullPivLu().solve(xty);
  CHECK((fit.beta_hat - direct).lpNorm<Eigen::Infinity>() < 1e-10);
}

TEST_CASE("normal equations hold to relative 1e-9") {
  GaussianRng rng(21);
  Matrix design(40, 3);
  Vector response(40);
  for (Index i = 0; i < 40; ++i) {
    design(i, 0) = 1.0;
    design(i, 1) = rng.normal();
    design(i, 2) = rng.normal();
    response(i) = 0.5 + design(i, 1) - 2.0 * design(i, 2) + 0.3 * rng.normal();
  }
  const Dataset data = make_dataset(design, response);
  const OlsFit fit = ols_fit(data);
  const double residual =
      (data.design.transpose() * (data.response - data.design * fit.beta_hat)).lpNorm<Eigen::Infinity>();
  const double scale = (data.design.transpose() * data.response).lpNorm<Eigen::Infinity>();
  CHECK(residual < 1e-9 * scale);
}

TEST_CASE("posterior covariance matches the closed form and is symmetric psd") {
  const Dataset data = noisy_line(20, 3);
  const OlsFit fit = ols_fit(data);
  REQUIRE(fit.has_posterior_cov);
  CHECK((fit.posterior_cov - fit.posterior_cov.transpose()).norm() == 0.0);

  const Matrix xtx = data.design.transpose() * data.design;
  const Matrix expected = fit.residual_sumsq / static_cast<double>(data.n() - data.p() - 2) *
                          xtx.fullPivLu().inverse();
  CHECK((fit.posterior_cov - expected).norm() < 1e-10 * expected.norm());

  const Eigen::SelfAdjointEigenSolver<Matrix> eigen(fit.posterior_cov);
  CHECK(eigen.eigenvalues().minCoeff() >= -1e-12);
}

TEST_CASE("covariance needs n > p + 2") {
  Matrix design(4, 2);
  Vector response(4);
  for (Index i = 0; i < 4; ++i) {
    design(i, 0) = 1.0;
    design(i, 1) = static_cast<double>(i);
    response(i) = static_cast<double>(i % 2);
  }
  const OlsFit fit = ols_fit(make_dataset(design, response));
  CHECK_FALSE(fit.has_posterior_cov);
  CHECK_THROWS_AS(normal_posterior_coef(make_dataset(design, response), 1), std::invalid_argument);
}

TEST_CASE("rank deficiency names a dependent column") {
  Matrix design(10, 3);
  Vector response(10);
  for (Index i = 0; i < 10; ++i) {
    design(i, 0) = 1.0;
    design(i, 1) = static_cast<double>(i);
    design(i, 2) = 2.0 * static_cast<double>(i);  // multiple of column 2
    response(i) = static_cast<double>(i);
  }
  CHECK_THROWS_WITH_AS(ols_fit(make_dataset(design, response)), doctest::Contains("column"),
                       std::invalid_argument);
}

TEST_CASE("beta2 summary and its duplicated-data behavior") {
  const Dataset data = noisy_line(20, 5);
  const CoefSummary base = normal_posterior_beta2_summary(data);
  const OlsFit fit = ols_fit(data);
  CHECK(base.mean == fit.beta_hat(1));
  CHECK(base.sd == std::sqrt(fit.posterior_cov(1, 1)));

  Matrix design(40, 2);
  Vector response(40);
  design << data.design, data.design;
  response << data.response, data.response;
  const CoefSummary doubled = normal_posterior_beta2_summary(make_dataset(design, response));
  CHECK(std::abs(doubled.mean - base.mean) < 1e-12);
  CHECK(doubled.sd < base.sd);
}

TEST_CASE("response gradient is the exact rank-one sensitivity") {
  const Dataset data = noisy_line(20, 7);
  const Index row = 19;
  const Vector gradient = ols_response_gradient(data, row);
  const double delta = 123.456;
  Dataset bumped = data;
  bumped.response(row) += delta;
  const Vector expected = ols_fit(data).beta_hat + delta * gradient;
  const Vector actual = ols_fit(bumped).beta_hat;
  CHECK((actual - expected).lpNorm<Eigen::Infinity>() < 1e-9 * (1.0 + actual.lpNorm<Eigen::Infinity>()));

  CHECK_THROWS_AS(ols_response_gradient(data, 20), std::invalid_argument);
  CHECK_THROWS_AS(normal_posterior_coef(data, 2), std::invalid_argument);
}
