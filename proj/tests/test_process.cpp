#include <cmath>
#include <cstdint>

#include "doctest.h"
#include "dpsim/process.hpp"

using namespace dpsim;

namespace {

const ProcessParams kRefPoint{12.0, 1.0, 0.9, 0.1};

DiscreteParams ref_point() { return discretize(kRefPoint); }

doctest::Approx near(double x, double eps = 1e-15) {
  return doctest::Approx(x).epsilon(eps);
}

}  // namespace

TEST_CASE("discretize maps rates to per-step survival factors") {
  const DiscreteParams dp = ref_point();
  CHECK(dp.Gamma1 == near(0.3011942119122021));
  CHECK(dp.Gamma2 == near(0.90483741803595957));
  CHECK(dp.p == 0.9);
}

TEST_CASE("parameter validation rejects out-of-domain values") {
  CHECK_THROWS_AS((ProcessParams{0.0, 1.0, 0.5, 0.1}.validate()),
                  InvalidParameterError);
  CHECK_THROWS_AS((ProcessParams{-1.0, 1.0, 0.5, 0.1}.validate()),
                  InvalidParameterError);
  CHECK_THROWS_AS((ProcessParams{1.0, 1.0, 1.5, 0.1}.validate()),
                  InvalidParameterError);
  CHECK_THROWS_AS((ProcessParams{1.0, 1.0, -0.1, 0.1}.validate()),
                  InvalidParameterError);
  CHECK_THROWS_AS((ProcessParams{1.0, 1.0, 0.5, 0.0}.validate()),
                  InvalidParameterError);
  const double nan = std::nan("");
  CHECK_THROWS_AS((ProcessParams{nan, 1.0, 0.5, 0.1}.validate()),
                  InvalidParameterError);
  CHECK_THROWS_AS((DiscreteParams{1.0, 0.5, 0.5}.validate()),
                  InvalidParameterError);
  CHECK_THROWS_AS((DiscreteParams{0.5, 0.0, 0.5}.validate()),
                  InvalidParameterError);
}

TEST_CASE("discretize rejects timesteps outside double precision range") {
  // Gamma underflows to 0.
  CHECK_THROWS_AS(discretize(ProcessParams{12.0, 1.0, 0.9, 1e6}),
                  InvalidParameterError);
  // Gamma rounds up to 1.
  CHECK_THROWS_AS(discretize(ProcessParams{1e-200, 1.0, 0.9, 1e-200}),
                  InvalidParameterError);
}

TEST_CASE("non_extremal flags degenerate parameter lines") {
  CHECK(ref_point().non_extremal());
  CHECK_FALSE(DiscreteParams{0.3, 0.9, 0.0}.non_extremal());
  CHECK_FALSE(DiscreteParams{0.3, 0.9, 1.0}.non_extremal());
  CHECK_FALSE(DiscreteParams{0.5, 0.5, 0.3}.non_extremal());
  CHECK_FALSE(ProcessParams{3.0, 3.0, 0.5, 0.1}.non_extremal());
}

TEST_CASE("survival matches the dual-exponential form") {
  const DiscreteParams dp = ref_point();
  CHECK(survival(dp, 0) == 1.0);
  CHECK(survival(dp, 1) == near(0.36155853252457784));
  CHECK(survival(dp, 2) == near(0.16351923326826944));
  CHECK(survival(dp, 27) == near(0.0067205512739826167));
  CHECK(survival(dp, 28) == near(0.0060810062625240977));
}

TEST_CASE("survival sits inside the geometric envelope") {
  const DiscreteParams dp = ref_point();
  const double gmin = std::min(dp.Gamma1, dp.Gamma2);
  const double gmax = std::max(dp.Gamma1, dp.Gamma2);
  for (std::int64_t n = 0; n <= 200; ++n) {
    const double phi = survival(dp, n);
    CHECK(phi >= std::pow(gmin, static_cast<double>(n)) * (1.0 - 1e-14));
    CHECK(phi <= std::pow(gmax, static_cast<double>(n)) * (1.0 + 1e-14));
    if (n > 0) CHECK(phi < survival(dp, n - 1));  // strictly decreasing
  }
}

TEST_CASE("survival is exactly exchange-symmetric for dyadic p") {
  const double scale = 1048576.0;  // 2^20
  for (const double k : {1.0, 37.0, 524288.0, 1048575.0}) {
    const DiscreteParams dp{0.25, 0.75, k / scale};
    const DiscreteParams ex = dp.exchanged();
    for (std::int64_t n = 0; n <= 200; ++n) {
      CHECK(survival(dp, n) == survival(ex, n));
    }
  }
}

TEST_CASE("conditional gap distribution is memory-dependent but normalized") {
  const DiscreteParams dp = ref_point();
  CHECK(conditional_gap(dp, 1, 0) == near(0.54773786660074518));
  // Normalization at several pasts, with the analytic remainder added back.
  for (const std::int64_t a : {0, 1, 5, 28}) {
    double sum = 0.0;
    const std::int64_t kGaps = 400;
    for (std::int64_t b = 0; b < kGaps; ++b) sum += conditional_gap(dp, a, b);
    sum += survival(dp, a + kGaps) / survival(dp, a);
    CHECK(sum == near(1.0, 1e-12));
  }
  // A renewal process with two channels is not memoryless: the conditional
  // gap distribution at different pasts must differ.
  CHECK(std::abs(conditional_gap(dp, 0, 0) - conditional_gap(dp, 28, 0)) >
        0.1);
}

TEST_CASE("emission probability interpolates between the channel rates") {
  const DiscreteParams dp = ref_point();
  CHECK(emission_prob(dp, 0) == near(0.63844146747542216));
  for (std::int64_t n = 0; n <= 100; ++n) {
    const double e = emission_prob(dp, n);
    CHECK(e > 0.0);
    CHECK(e < 1.0);
    // Decreasing toward the slower channel; once converged to the limit the
    // computed values may jitter by an ulp, hence the tiny slack.
    if (n > 0) CHECK(e <= emission_prob(dp, n - 1) + 1e-15);
  }
  // Large-n limit: the slower channel dominates.
  CHECK(emission_prob(dp, 2000) == near(0.095162581964040427, 1e-13));
}

TEST_CASE("normalization constant and steady state probabilities") {
  const DiscreteParams dp = ref_point();
  CHECK(normalization_mu(dp) == near(0.42757980763602567));
  CHECK(steady_state_prob(dp, 0) == near(0.42757980763602567));
  CHECK(steady_state_prob(dp, 1) == near(0.15459512778602273));
}

TEST_CASE("tail cutoff bounds the neglected steady-state mass") {
  const DiscreteParams dp = ref_point();
  const double mu = normalization_mu(dp);
  const double gmax = std::max(dp.Gamma1, dp.Gamma2);
  const std::int64_t t = tail_cutoff_index(dp);
  // Defining property: the geometric overbound of the tail is below 1e-12
  // at t and not below it one step earlier.
  const auto bound = [&](std::int64_t n) {
    return mu * std::pow(gmax, static_cast<double>(n + 1)) / (1.0 - gmax);
  };
  CHECK(bound(t) < 1e-12);
  REQUIRE(t > 0);
  CHECK(bound(t - 1) >= 1e-12);
  // The actual neglected mass is below the overbound.
  CHECK(mu * survival_tail_sum(dp, t + 1) < 1e-12);
}

TEST_CASE("survival_tail_sum equals the summed survival series") {
  const DiscreteParams dp = ref_point();
  double brute = 0.0;
  for (std::int64_t n = 5; n <= 2000; ++n) brute += survival(dp, n);
  CHECK(survival_tail_sum(dp, 5) == near(brute, 1e-13));
  CHECK(survival_tail_sum(dp, 0) == near(1.0 / normalization_mu(dp), 1e-13));
}

TEST_CASE("DualPoissonSurvival matches the free function") {
  const DiscreteParams dp = ref_point();
  const DualPoissonSurvival phi(dp);
  const SurvivalFunction& as_interface = phi;
  for (std::int64_t n = 0; n <= 50; ++n) {
    CHECK(as_interface(n) == survival(dp, n));
  }
}
