#include <doctest.h>

#include <cmath>

#include "schedsim/model.hpp"
#include "test_util.hpp"

using namespace schedsim;
using testutil::Rng;

namespace {

ClusterSpec table2_cluster() {
  ClusterSpec c;
  c.mu = VectorXd(8);
  c.mu << 0.28, 0.22, 0.19, 0.23, 0.20, 0.26, 0.22, 0.23;
  c.delay = MatrixXd::Constant(7, 8, 0.5);
  c.bandwidth = MatrixXd::Constant(7, 8, 1e5);
  return c;
}

WorkloadSpec table1_workload(double rho = 0.5) {
  WorkloadSpec w;
  w.phi = VectorXd(7);
  w.phi << 0.0035, 0.01, 0.01, 0.01, 0.01, 0.006, 0.005;
  w.rho = rho;
  w.task_bits = 1e6;
  return w;
}

}  // namespace

TEST_CASE("arrival rates follow the workload law") {
  const ClusterSpec cluster = table2_cluster();
  const WorkloadSpec workload = table1_workload();
  const VectorXd lambda = arrival_rates(workload, cluster);
  CHECK(lambda(0) == doctest::Approx(0.0032025).epsilon(1e-12));
  CHECK((lambda.array() > 0.0).all());

  // rho -> 0 limit
  WorkloadSpec light = workload;
  light.rho = 1e-12;
  CHECK(arrival_rates(light, cluster).maxCoeff() < 1e-10);

  // identity-scale case
  ClusterSpec one;
  one.mu = VectorXd::Ones(1);
  one.delay = MatrixXd::Constant(1, 1, 0.0);
  one.bandwidth = MatrixXd::Constant(1, 1, 1.0);
  WorkloadSpec unit;
  unit.phi = VectorXd::Ones(1);
  unit.rho = 0.5;
  unit.task_bits = 1.0;
  CHECK(arrival_rates(unit, one)(0) == doctest::Approx(0.5));
}

TEST_CASE("M/G/1 mean time in system") {
  CHECK(mg1_mean_time(0.5, 1.0, 1.0) == doctest::Approx(2.0));   // exponential
  CHECK(mg1_mean_time(0.5, 1.0, 0.0) == doctest::Approx(1.5));   // deterministic
  CHECK(mg1_mean_time(0.0, 2.0, 3.0) == doctest::Approx(0.5));   // empty queue
  CHECK_THROWS_AS(mg1_mean_time(1.0, 1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(mg1_mean_time(2.0, 1.0, 0.0), std::domain_error);
}

TEST_CASE("available capacity subtracts other schedulers' load") {
  SUBCASE("single scheduler sees the raw rates") {
    const auto s = testutil::single_scheduler_state(
        (VectorXd(2) << 2.0, 1.0).finished(), 0.3, VectorXd::Zero(2),
        VectorXd::Constant(2, 1e5), 1e6);
    const VectorXd cap = available_capacity(s, Allocation::uniform(1, 2), 0);
    CHECK(cap(0) == doctest::Approx(2.0));
    CHECK(cap(1) == doctest::Approx(1.0));
  }
  SUBCASE("two symmetric schedulers") {
    const auto s = testutil::symmetric_state(2, 2, 1.0, 0.2);
    const VectorXd cap = available_capacity(s, Allocation::uniform(2, 2), 0);
    CHECK(cap(0) == doctest::Approx(0.9));
    CHECK(cap(1) == doctest::Approx(0.9));
  }
  SUBCASE("known contribution") {
    auto s = testutil::symmetric_state(2, 1, 2.0, 0.3);
    Allocation a = Allocation::uniform(2, 1);
    const VectorXd cap = available_capacity(s, a, 0);  // other sends 0.3 * 1
    CHECK(cap(0) == doctest::Approx(1.7));
  }
}

TEST_CASE("slice cost closed form") {
  CHECK(slice_cost(0.5, 2.0, 1.0, 0.5, 1e6, 1e5) ==
        doctest::Approx(0.5 / 1.5 + 0.5 + 5.0).epsilon(1e-12));
  CHECK(slice_cost(0.0, 2.0, 1.0, 0.7, 1e6, 1e5) == doctest::Approx(0.7));
  // experiment-1 scale values
  CHECK(slice_cost(0.125, 0.25, 0.00915, 0.5, 1e6, 1e5) ==
        doctest::Approx(0.125 / (0.25 - 0.00114375) + 0.5 + 1.25).epsilon(1e-12));
  CHECK_THROWS_AS(slice_cost(1.0, 0.5, 1.0, 0.0, 1e6, 1e5), std::domain_error);
}

TEST_CASE("slice cost gradient") {
  CHECK(slice_cost_gradient(0.5, 2.0, 1.0, 1e6, 1e5) ==
        doctest::Approx(2.0 / 2.25 + 10.0).epsilon(1e-12));
  CHECK(slice_cost_gradient(0.4, 2.0, 0.0, 1e6, 1e5) ==
        doctest::Approx(0.5 + 10.0).epsilon(1e-12));
  Rng rng(17);
  for (int t = 0; t < 200; ++t) {
    const double mu = rng.uniform(0.2, 3.0);
    const double lambda = rng.uniform(0.0, 0.8 * mu);
    const double a = rng.uniform(0.0, 0.9 * (lambda > 0 ? mu / lambda : 1.0));
    CHECK(slice_cost_gradient(std::min(a, 1.0), mu, lambda, 1e6, 1e5) > 0.0);
  }
}

TEST_CASE("reduced and unreduced slice cost forms agree") {
  Rng rng(42);
  for (int t = 0; t < 1000; ++t) {
    const double mu = rng.uniform(0.2, 3.0);
    const double other_load = rng.uniform(0.0, 0.6 * mu);
    const double lambda = rng.uniform(1e-4, 0.5 * (mu - other_load));
    const double a = rng.uniform(0.0, 0.9);
    const double delay = rng.uniform(0.0, 1.0);
    const double bw = rng.uniform(1e4, 1e6);
    const double reduced = slice_cost(a, mu - other_load, lambda, delay, 1e6, bw);
    const double raw =
        slice_cost_unreduced(a, mu, other_load + lambda * a, delay, 1e6, bw);
    CHECK(std::abs(reduced - raw) <= 1e-12 * std::abs(raw));
  }
}

TEST_CASE("slice cost is convex in the slicing ratio") {
  Rng rng(7);
  for (int t = 0; t < 1000; ++t) {
    const double mu = rng.uniform(0.5, 3.0);
    const double lambda = rng.uniform(1e-3, 0.8 * mu);
    const double hi = std::min(1.0, 0.95 * mu / lambda);
    double a1 = rng.uniform(0.0, hi), a2 = rng.uniform(0.0, hi);
    const double w = rng.uniform(0.05, 0.95);
    const double bw = rng.uniform(1e4, 1e6);
    auto f = [&](double a) { return slice_cost(a, mu, lambda, 0.3, 1e6, bw); };
    CHECK(f(w * a1 + (1 - w) * a2) <= w * f(a1) + (1 - w) * f(a2) + 1e-12);
  }
}

TEST_CASE("slice cost gradient matches finite differences") {
  Rng rng(11);
  for (int t = 0; t < 500; ++t) {
    const double mu = rng.uniform(0.5, 3.0);
    const double lambda = rng.uniform(1e-3, 0.8 * mu);
    const double hi = std::min(1.0, 0.9 * mu / lambda);
    const double a = rng.uniform(0.05 * hi, 0.9 * hi);
    const double bw = rng.uniform(1e4, 1e6);
    const double h = 1e-7;
    const double fd = (slice_cost(a + h, mu, lambda, 0.3, 1e6, bw) -
                       slice_cost(a - h, mu, lambda, 0.3, 1e6, bw)) /
                      (2 * h);
    const double g = slice_cost_gradient(a, mu, lambda, 1e6, bw);
    CHECK(std::abs(fd - g) <= 1e-6 * std::abs(g));
    // second difference positive: the cost curves upward
    const double d2 = slice_cost(a + h, mu, lambda, 0.3, 1e6, bw) -
                      2 * slice_cost(a, mu, lambda, 0.3, 1e6, bw) +
                      slice_cost(a - h, mu, lambda, 0.3, 1e6, bw);
    CHECK(d2 >= -1e-9 * std::abs(slice_cost(a, mu, lambda, 0.3, 1e6, bw)));
  }
}

TEST_CASE("response time") {
  SUBCASE("max over slice costs, permutation invariant") {
    VectorXd mu(2), delay(2), bw(2);
    mu << 2.0, 1.0;
    delay << 0.5, 0.1;
    bw << 1e5, 2e5;
    auto s = testutil::single_scheduler_state(mu, 0.4, delay, bw, 1e6);
    Allocation a;
    a.a = MatrixXd(1, 2);
    a.a << 0.7, 0.3;
    const double r = response_time(s, a, 0);

    // permute nodes along with all per-node data
    VectorXd mu2(2), delay2(2), bw2(2);
    mu2 << 1.0, 2.0;
    delay2 << 0.1, 0.5;
    bw2 << 2e5, 1e5;
    auto s2 = testutil::single_scheduler_state(mu2, 0.4, delay2, bw2, 1e6);
    Allocation a2;
    a2.a = MatrixXd(1, 2);
    a2.a << 0.3, 0.7;
    CHECK(response_time(s2, a2, 0) == doctest::Approx(r).epsilon(1e-14));
  }
  SUBCASE("singleton") {
    auto s = testutil::single_scheduler_state(VectorXd::Ones(1), 0.2,
                                              VectorXd::Constant(1, 0.5),
                                              VectorXd::Constant(1, 1e5), 1e6);
    Allocation a;
    a.a = MatrixXd::Ones(1, 1);
    CHECK(response_time(s, a, 0) ==
          doctest::Approx(slice_cost(1.0, 1.0, 0.2, 0.5, 1e6, 1e5)));
  }
  SUBCASE("symmetric uniform row gives equal slice costs") {
    auto s = testutil::symmetric_state(1, 2);
    Allocation a = Allocation::uniform(1, 2);
    const VectorXd cap = available_capacity(s, a, 0);
    const double c0 = slice_cost(0.5, cap(0), s.lambda(0), 0.5, 1e6, 1e5);
    CHECK(response_time(s, a, 0) == doctest::Approx(c0));
  }
}

TEST_CASE("slice cost grows without bound toward the stability boundary") {
  const double mu = 1.0, lambda = 0.8;
  double prev = -1.0;
  for (double frac : {0.5, 0.9, 0.99, 0.999, 0.9999}) {
    const double a = frac * mu / lambda;
    const double c = slice_cost(a, mu, lambda, 0.0, 1e6, 1e6);
    CHECK(c > prev);
    prev = c;
  }
  CHECK(prev > 1e3);
}

TEST_CASE("stability check") {
  SUBCASE("paper experiment 1 with uniform allocation passes") {
    const SystemState s =
        SystemState::make(table2_cluster(), table1_workload());
    CHECK(s.lambda.sum() == doctest::Approx(0.0545 * 0.5 * 1.83));
    const auto rep = check_stability(s, Allocation::uniform(7, 8));
    CHECK(rep.ok);
    CHECK(rep.overloaded_nodes.empty());
  }
  SUBCASE("boundary fails") {
    SystemState s = testutil::single_scheduler_state(
        VectorXd::Ones(1), 1.0, VectorXd::Zero(1), VectorXd::Ones(1), 1.0);
    const auto rep = check_stability(s, Allocation::uniform(1, 1));
    CHECK_FALSE(rep.ok);
    CHECK(rep.overloaded_nodes == std::vector<int>{0});
  }
  SUBCASE("near-zero workload passes") {
    SystemState s = testutil::symmetric_state(2, 2, 1.0, 1e-12);
    CHECK(check_stability(s, Allocation::uniform(2, 2)).ok);
  }
}

TEST_CASE("input validation") {
  ClusterSpec c = table2_cluster();
  c.mu(0) = -1.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);

  WorkloadSpec w = table1_workload();
  w.rho = 1.5;
  CHECK_THROWS_AS(w.validate(), std::invalid_argument);

  Allocation a = Allocation::uniform(2, 3);
  a.a(0, 0) += 0.5;
  CHECK_THROWS_AS(a.validate(), std::invalid_argument);
}
