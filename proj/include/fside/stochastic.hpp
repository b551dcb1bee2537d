#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "fside/legendre.hpp"
#include "fside/linalg.hpp"

namespace fside {

/// Counter-style 64-bit generator (SplitMix64 stream) feeding Box-Muller
/// standard normals. Deterministic per seed, no global state.
class NormalRng {
public:
    explicit NormalRng(std::uint64_t seed) : state_(seed) {}

    double next_normal();
    double next_uniform();  // open (0, 1)

private:
    std::uint64_t next_u64();

    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Deterministic per-path seed derived from a master seed.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index);

/// Sampled Brownian (or fractional Brownian) trajectory on a partition.
struct BrownianPath {
    std::vector<double> partition;   // strictly increasing, size n+1
    std::vector<double> values;      // B(partition[i]), values[0] = 0
    std::vector<double> increments;  // size n, values[i+1] - values[i]
    std::uint64_t seed = 0;
    double hurst = 0.5;

    std::size_t cells() const noexcept { return increments.size(); }
    /// Piecewise-linear interpolant of the sampled values.
    double value_at(double t) const;
};

struct PathEnsembleSpec {
    std::size_t n_paths = 0;
    std::uint64_t master_seed = 0;
    std::vector<double> partition;
};

std::vector<double> uniform_partition(double a, double b, std::size_t cells);

/// Standard Brownian motion: independent N(0, dt) increments.
BrownianPath sample_brownian(const std::vector<double>& partition, std::uint64_t seed);

/// Fractional Brownian motion with Hurst parameter H in (0,1), by exact
/// Cholesky factorization of the covariance on the partition
/// (diagonal regularized by 1e-12 before factoring).
BrownianPath sample_fbm(const std::vector<double>& partition, std::uint64_t seed, double hurst);

/// Left-endpoint Ito sum of f against the path over the full partition.
double ito_sum(const std::function<double(double)>& f, const BrownianPath& path);

/// Left-endpoint Ito sum truncated at time t; the cell containing t
/// contributes its increment scaled linearly.
double ito_sum_to(const std::function<double(double)>& f, const BrownianPath& path, double t);

/// Stochastic analogue of the Q3 integration matrix: the Q3 block
/// pattern with each identity block replaced by the diagonal increment
/// matrix Bbar, stencil and interval factors as in the deterministic
/// case. Requires the path to have m+1 cells.
Matrix stochastic_q3(const BrownianPath& path, const BasisSpec& spec);

/// Geometric Brownian motion driven by fBm:
/// X(t) = x0 * exp(((mu - sigma^2)/2) t + sigma B_H(t)).
std::vector<std::pair<double, double>> gbm_path(double x0, double mu, double sigma,
                                                double hurst,
                                                const std::vector<double>& partition,
                                                std::uint64_t seed);

}  // namespace fside
