#include <doctest.h>

#include <cmath>
#include <set>
#include <stdexcept>

#include "fside/opmatrix.hpp"
#include "fside/stochastic.hpp"

using namespace fside;

TEST_CASE("normal generator moments") {
    NormalRng rng(2024);
    const int n = 100000;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double z = rng.next_normal();
        sum += z;
        sumsq += z * z;
    }
    const double mean = sum / n;
    const double var = sumsq / n - mean * mean;
    CHECK(std::abs(mean) <= 3.0 / std::sqrt(static_cast<double>(n)));
    CHECK(var == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("uniform generator stays in the open interval") {
    NormalRng rng(7);
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.next_uniform();
        CHECK(u > 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("derived seeds are deterministic and collision-free") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 1000; ++i) {
        const std::uint64_t s = derive_seed(99, i);
        CHECK(s == derive_seed(99, i));
        CHECK(seen.insert(s).second);
    }
    CHECK(derive_seed(1, 0) != derive_seed(2, 0));
}

TEST_CASE("uniform partition endpoints and spacing") {
    const std::vector<double> p = uniform_partition(0.0, 1.0, 8);
    REQUIRE(p.size() == 9);
    CHECK(p.front() == 0.0);
    CHECK(p.back() == 1.0);
    for (std::size_t i = 1; i < p.size(); ++i)
        CHECK(p[i] - p[i - 1] == doctest::Approx(0.125).epsilon(1e-12));
    CHECK_THROWS_AS(uniform_partition(1.0, 0.0, 4), std::domain_error);
    CHECK_THROWS_AS(uniform_partition(0.0, 1.0, 0), std::domain_error);
}

TEST_CASE("brownian path starts at zero with consistent increments") {
    const std::vector<double> p = uniform_partition(0.0, 1.0, 16);
    const BrownianPath path = sample_brownian(p, 5);
    CHECK(path.values[0] == 0.0);
    REQUIRE(path.cells() == 16);
    for (std::size_t i = 0; i < path.cells(); ++i)
        CHECK(path.increments[i] == path.values[i + 1] - path.values[i]);
}

TEST_CASE("brownian sampling is deterministic per seed") {
    const std::vector<double> p = uniform_partition(0.0, 1.0, 32);
    const BrownianPath a = sample_brownian(p, 123);
    const BrownianPath b = sample_brownian(p, 123);
    CHECK(a.values == b.values);
    const BrownianPath c = sample_brownian(p, 124);
    CHECK(a.values != c.values);
}

TEST_CASE("brownian rejects bad partitions") {
    CHECK_THROWS_AS(sample_brownian({0.0, 0.5, 0.5, 1.0}, 1), std::domain_error);
    CHECK_THROWS_AS(sample_brownian({0.5, 0.25}, 1), std::domain_error);
    CHECK_THROWS_AS(sample_brownian({-0.5, 0.5}, 1), std::domain_error);
    CHECK_THROWS_AS(sample_brownian({0.0}, 1), std::domain_error);
}

TEST_CASE("brownian increment statistics") {
    // Increment over cell 3 of an 8-cell partition: N(0, 1/8).
    const std::vector<double> p = uniform_partition(0.0, 1.0, 8);
    const double dt = 0.125;
    const int n = 100000;
    double sum = 0.0, sumsq = 0.0;
    for (int k = 0; k < n; ++k) {
        const BrownianPath path = sample_brownian(p, 1000 + static_cast<std::uint64_t>(k));
        const double inc = path.increments[3];
        sum += inc;
        sumsq += inc * inc;
    }
    const double mean = sum / n;
    const double var = sumsq / n - mean * mean;
    CHECK(std::abs(mean) <= 3.0 * std::sqrt(dt / n));
    CHECK(var == doctest::Approx(dt).epsilon(0.05));
}

TEST_CASE("increment magnitude shrinks under refinement") {
    // Continuity proxy: the mean of max|increment| over paths decreases
    // as the partition refines.
    double previous = 1e300;
    for (std::size_t cells : {8, 32, 128}) {
        const std::vector<double> p = uniform_partition(0.0, 1.0, cells);
        double acc = 0.0;
        for (int k = 0; k < 200; ++k) {
            const BrownianPath path = sample_brownian(p, 7000 + static_cast<std::uint64_t>(k));
            double mx = 0.0;
            for (double inc : path.increments) mx = std::max(mx, std::abs(inc));
            acc += mx;
        }
        acc /= 200.0;
        CHECK(acc < previous);
        previous = acc;
    }
}

TEST_CASE("fbm starts at zero and validates hurst") {
    const std::vector<double> p = uniform_partition(0.0, 1.0, 16);
    const BrownianPath path = sample_fbm(p, 3, 0.7);
    CHECK(path.values[0] == 0.0);
    CHECK(path.hurst == 0.7);
    CHECK_THROWS_AS(sample_fbm(p, 3, 0.0), std::domain_error);
    CHECK_THROWS_AS(sample_fbm(p, 3, 1.0), std::domain_error);
}

TEST_CASE("fbm endpoint variance matches the covariance formula") {
    // Var B_H(1) = 1 for any H.
    const std::vector<double> p = uniform_partition(0.0, 1.0, 16);
    for (double hurst : {0.5, 0.7}) {
        const int n = 10000;
        double sum = 0.0, sumsq = 0.0;
        for (int k = 0; k < n; ++k) {
            const BrownianPath path = sample_fbm(p, 40000 + static_cast<std::uint64_t>(k), hurst);
            const double v = path.values.back();
            sum += v;
            sumsq += v * v;
        }
        const double mean = sum / n;
        CHECK(sumsq / n - mean * mean == doctest::Approx(1.0).epsilon(0.05));
    }
}

TEST_CASE("fbm at hurst one half matches brownian increment statistics") {
    // H=0.5 reduces the covariance to min(s,t): per-cell increment
    // variance dt, adjacent increments uncorrelated.
    const std::vector<double> p = uniform_partition(0.0, 1.0, 8);
    const int n = 10000;
    double var3 = 0.0, cov34 = 0.0;
    for (int k = 0; k < n; ++k) {
        const BrownianPath path = sample_fbm(p, 90000 + static_cast<std::uint64_t>(k), 0.5);
        var3 += path.increments[3] * path.increments[3];
        cov34 += path.increments[3] * path.increments[4];
    }
    CHECK(var3 / n == doctest::Approx(0.125).epsilon(0.05));
    CHECK(std::abs(cov34 / n) <= 3.0 * 0.125 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("path interpolation hits sampled values") {
    const std::vector<double> p = uniform_partition(0.0, 1.0, 4);
    const BrownianPath path = sample_brownian(p, 11);
    for (std::size_t i = 0; i < p.size(); ++i)
        CHECK(path.value_at(p[i]) == doctest::Approx(path.values[i]).epsilon(1e-14));
    const double mid = path.value_at(0.125);
    CHECK(mid == doctest::Approx(0.5 * (path.values[0] + path.values[1])).epsilon(1e-12));
}

TEST_CASE("ito sum of one telescopes exactly") {
    const std::vector<double> p = uniform_partition(0.0, 1.0, 64);
    const BrownianPath path = sample_brownian(p, 17);
    const double s = ito_sum([](double) { return 1.0; }, path);
    CHECK(s == doctest::Approx(path.values.back() - path.values.front()).epsilon(1e-14));
}

TEST_CASE("ito sum has zero mean") {
    const std::vector<double> p = uniform_partition(0.0, 1.0, 32);
    const int n = 10000;
    double sum = 0.0, sumsq = 0.0;
    for (int k = 0; k < n; ++k) {
        const BrownianPath path = sample_brownian(p, 300 + static_cast<std::uint64_t>(k));
        const double s = ito_sum([](double t) { return t; }, path);
        sum += s;
        sumsq += s * s;
    }
    const double mean = sum / n;
    const double stderr_est = std::sqrt((sumsq / n - mean * mean) / n);
    CHECK(std::abs(mean) <= 3.0 * stderr_est);
}

TEST_CASE("ito isometry for monomial integrands") {
    // E[(int f dB)^2] = int f^2 dt on [0,1]: 1, 1/3, 1/5.
    const std::vector<double> p = uniform_partition(0.0, 1.0, 64);
    const int n = 10000;
    const double expected[3] = {1.0, 1.0 / 3.0, 1.0 / 5.0};
    for (int pw = 0; pw < 3; ++pw) {
        double sumsq = 0.0;
        for (int k = 0; k < n; ++k) {
            const BrownianPath path = sample_brownian(p, 5000 + static_cast<std::uint64_t>(k));
            const double s = ito_sum([pw](double t) { return std::pow(t, pw); }, path);
            sumsq += s * s;
        }
        CHECK(sumsq / n == doctest::Approx(expected[pw]).epsilon(0.05));
    }
}

TEST_CASE("truncated ito sum endpoints and cell scaling") {
    const std::vector<double> p = uniform_partition(0.0, 1.0, 8);
    const BrownianPath path = sample_brownian(p, 23);
    auto f = [](double t) { return 1.0 + t; };
    CHECK(ito_sum_to(f, path, 0.0) == 0.0);
    CHECK(ito_sum_to(f, path, 1.0) == doctest::Approx(ito_sum(f, path)).epsilon(1e-14));
    // Halfway through cell 0: half the first increment, weighted at the
    // left endpoint.
    const double half = ito_sum_to(f, path, 0.0625);
    CHECK(half == doctest::Approx(f(0.0) * 0.5 * path.increments[0]).epsilon(1e-12));
}

TEST_CASE("stochastic matrix of a zero path is zero") {
    const BasisSpec spec(0.0, 1.0, 4);
    BrownianPath path = sample_brownian(uniform_partition(0.0, 1.0, 5), 1);
    for (double& v : path.values) v = 0.0;
    for (double& v : path.increments) v = 0.0;
    const Matrix q = stochastic_q3(path, spec);
    CHECK(max_abs(Vector(q.data())) == 0.0);
}

TEST_CASE("stochastic matrix with constant increments scales the q3 pattern") {
    const BasisSpec spec(0.0, 1.0, 4);
    const double c = 0.3;
    BrownianPath path;
    path.partition = uniform_partition(0.0, 1.0, 5);
    path.values.assign(6, 0.0);
    path.increments.assign(5, c);
    for (std::size_t i = 1; i < 6; ++i) path.values[i] = path.values[i - 1] + c;
    const Matrix q = stochastic_q3(path, spec);
    const Matrix q3 = q3_matrix(spec, spec);
    REQUIRE(q.rows() == q3.rows());
    for (std::size_t i = 0; i < q.rows(); ++i)
        for (std::size_t j = 0; j < q.cols(); ++j)
            CHECK(q(i, j) == doctest::Approx(c * q3(i, j)).epsilon(1e-13));
}

TEST_CASE("stochastic matrix rejects degree mismatch") {
    const BasisSpec spec(0.0, 1.0, 4);
    const BrownianPath path = sample_brownian(uniform_partition(0.0, 1.0, 7), 1);
    CHECK_THROWS_AS(stochastic_q3(path, spec), std::invalid_argument);
}

TEST_CASE("gbm starts at x0 and is reproducible") {
    const std::vector<double> p = uniform_partition(0.0, 1.0, 16);
    const auto a = gbm_path(2.0, 0.1, 0.4, 0.5, p, 77);
    const auto b = gbm_path(2.0, 0.1, 0.4, 0.5, p, 77);
    REQUIRE(a.size() == p.size());
    CHECK(a[0].second == doctest::Approx(2.0).epsilon(1e-14));
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].first == p[i]);
        CHECK(a[i].second == b[i].second);
        CHECK(a[i].second > 0.0);
    }
}

TEST_CASE("gbm with zero volatility follows the printed exponent") {
    // X(t) = x0 exp(((mu - sigma^2)/2) t) reduces to x0 e^{mu t / 2}.
    const std::vector<double> p = uniform_partition(0.0, 1.0, 8);
    const auto path = gbm_path(1.5, 0.8, 0.0, 0.5, p, 9);
    for (const auto& [t, x] : path)
        CHECK(x == doctest::Approx(1.5 * std::exp(0.4 * t)).epsilon(1e-12));
}

TEST_CASE("gbm validates arguments") {
    const std::vector<double> p = uniform_partition(0.0, 1.0, 4);
    CHECK_THROWS_AS(gbm_path(0.0, 0.1, 0.2, 0.5, p, 1), std::domain_error);
    CHECK_THROWS_AS(gbm_path(1.0, 0.1, -0.2, 0.5, p, 1), std::domain_error);
}
