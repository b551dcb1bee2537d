#include "fside/stochastic.hpp"

#include <cmath>
#include <stdexcept>

#include "fside/opmatrix.hpp"

namespace fside {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

void check_partition(const std::vector<double>& partition) {
    if (partition.size() < 2) throw std::domain_error("partition needs at least two points");
    for (std::size_t i = 1; i < partition.size(); ++i) {
        if (!(partition[i] > partition[i - 1])) {
            throw std::domain_error("partition must be strictly increasing");
        }
    }
}

}  // namespace

std::uint64_t NormalRng::next_u64() { return splitmix64(state_); }

double NormalRng::next_uniform() {
    double u;
    do {
        u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    } while (u <= 0.0);
    return u;
}

double NormalRng::next_normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    const double u1 = next_uniform();
    const double u2 = next_uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * kPi * u2);
    have_spare_ = true;
    return r * std::cos(2.0 * kPi * u2);
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index) {
    std::uint64_t state = master_seed ^ (0xa0761d6478bd642fULL * (index + 1));
    std::uint64_t mixed = splitmix64(state);
    return mixed ^ splitmix64(state);
}

double BrownianPath::value_at(double t) const {
    if (t <= partition.front()) return values.front();
    if (t >= partition.back()) return values.back();
    std::size_t i = 1;
    while (partition[i] < t) ++i;
    const double w = (t - partition[i - 1]) / (partition[i] - partition[i - 1]);
    return values[i - 1] + w * (values[i] - values[i - 1]);
}

std::vector<double> uniform_partition(double a, double b, std::size_t cells) {
    if (cells < 1 || !(b > a)) throw std::domain_error("uniform_partition: invalid arguments");
    std::vector<double> p(cells + 1);
    for (std::size_t i = 0; i <= cells; ++i) {
        p[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(cells);
    }
    return p;
}

BrownianPath sample_brownian(const std::vector<double>& partition, std::uint64_t seed) {
    check_partition(partition);
    if (partition.front() < 0.0) throw std::domain_error("partition must start at a >= 0");
    NormalRng rng(seed);
    BrownianPath path;
    path.partition = partition;
    path.seed = seed;
    path.hurst = 0.5;
    path.values.resize(partition.size());
    path.increments.resize(partition.size() - 1);
    path.values[0] = 0.0;
    for (std::size_t i = 1; i < partition.size(); ++i) {
        const double dt = partition[i] - partition[i - 1];
        path.values[i] = path.values[i - 1] + std::sqrt(dt) * rng.next_normal();
        // Recompute so increments[i-1] == values[i] - values[i-1] bitwise.
        path.increments[i - 1] = path.values[i] - path.values[i - 1];
    }
    return path;
}

BrownianPath sample_fbm(const std::vector<double>& partition, std::uint64_t seed, double hurst) {
    check_partition(partition);
    if (!(hurst > 0.0 && hurst < 1.0)) throw std::domain_error("sample_fbm: need 0 < H < 1");
    const std::size_t n = partition.size() - 1;
    // Covariance of (B_H(t_1), ..., B_H(t_n)); t_0 carries B_H = 0.
    Matrix cov(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double s = partition[i + 1];
            const double t = partition[j + 1];
            cov(i, j) = 0.5 * (std::pow(t, 2.0 * hurst) + std::pow(s, 2.0 * hurst) -
                               std::pow(std::abs(t - s), 2.0 * hurst));
        }
        cov(i, i) += 1e-12;
    }
    Matrix l = cholesky(cov);

    NormalRng rng(seed);
    Vector z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = rng.next_normal();

    BrownianPath path;
    path.partition = partition;
    path.seed = seed;
    path.hurst = hurst;
    path.values.resize(n + 1);
    path.increments.resize(n);
    path.values[0] = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double v = 0.0;
        for (std::size_t k = 0; k <= i; ++k) v += l(i, k) * z[k];
        path.values[i + 1] = v;
        path.increments[i] = path.values[i + 1] - path.values[i];
    }
    return path;
}

double ito_sum(const std::function<double(double)>& f, const BrownianPath& path) {
    double s = 0.0;
    for (std::size_t i = 0; i < path.cells(); ++i) {
        s += f(path.partition[i]) * path.increments[i];
    }
    return s;
}

double ito_sum_to(const std::function<double(double)>& f, const BrownianPath& path, double t) {
    double s = 0.0;
    for (std::size_t i = 0; i < path.cells(); ++i) {
        const double lo = path.partition[i];
        const double hi = path.partition[i + 1];
        if (t >= hi) {
            s += f(lo) * path.increments[i];
        } else if (t > lo) {
            s += f(lo) * path.increments[i] * (t - lo) / (hi - lo);
            break;
        } else {
            break;
        }
    }
    return s;
}

Matrix stochastic_q3(const BrownianPath& path, const BasisSpec& spec) {
    const std::size_t sz = spec.size();
    if (path.cells() != sz) {
        throw std::invalid_argument("stochastic_q3: path must have m+1 cells");
    }
    Matrix bbar(sz, sz);
    for (std::size_t i = 0; i < sz; ++i) bbar(i, i) = path.increments[i];
    return kron(integration_matrix_1d(spec), bbar);
}

std::vector<std::pair<double, double>> gbm_path(double x0, double mu, double sigma,
                                                double hurst,
                                                const std::vector<double>& partition,
                                                std::uint64_t seed) {
    if (!(x0 > 0.0)) throw std::domain_error("gbm_path: need x0 > 0");
    if (sigma < 0.0) throw std::domain_error("gbm_path: need sigma >= 0");
    BrownianPath b = sample_fbm(partition, seed, hurst);
    std::vector<std::pair<double, double>> out(partition.size());
    for (std::size_t i = 0; i < partition.size(); ++i) {
        const double t = partition[i];
        out[i] = {t, x0 * std::exp(0.5 * (mu - sigma * sigma) * t + sigma * b.values[i])};
    }
    return out;
}

}  // namespace fside
