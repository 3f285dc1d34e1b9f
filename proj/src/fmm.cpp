#include "asaw/fmm.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "asaw/parallel.hpp"

namespace asaw {

FractionalExponent::FractionalExponent(double value) : s(value) {
    if (!(value > 0.0 && value < 1.0))
        throw std::domain_error("fractional exponent must lie strictly in (0,1)");
}

AprioriConstants apriori_constants(FractionalExponent s, double density_sup_norm) {
    if (density_sup_norm <= 0.0)
        throw std::invalid_argument("density sup norm must be positive");
    double v = s.s;
    double c1 = std::pow(density_sup_norm, v) * std::pow(2.0, v) * std::pow(v, -v) / (1.0 - v);
    return AprioriConstants{c1, c1 * std::pow(2.0, v + 1.0)};
}

namespace {

struct MeanStdErr {
    double mean;
    double std_error;
};

MeanStdErr summarize(const std::vector<double>& samples) {
    long long n = static_cast<long long>(samples.size());
    double mean = 0.0;
    for (double v : samples) mean += v;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : samples) ss += (v - mean) * (v - mean);
    double sd = std::sqrt(ss / static_cast<double>(n - 1));
    return {mean, sd / std::sqrt(static_cast<double>(n))};
}

} // namespace

MomentEstimate estimate_fractional_moment(const Graph& g, const DisorderModel& model,
                                          int x, int y, ComplexEnergy z,
                                          FractionalExponent s, long long trials,
                                          std::uint64_t seed, unsigned workers) {
    if (trials < 2) throw std::invalid_argument("moment estimate: trials must be >= 2");
    std::vector<double> samples(trials);
    parallel_for(static_cast<std::size_t>(trials), workers, [&](std::size_t t) {
        AndersonOperator op(g, sample_disorder(model, g, seed, t), model.lambda);
        samples[t] = std::pow(std::abs(greens_function(op, x, y, z)), s.s);
    });
    auto [mean, se] = summarize(samples);
    MomentEstimate est;
    est.mean = mean;
    est.std_error = se;
    est.samples = trials;
    est.s = s.s;
    est.lambda = model.lambda;
    est.z_real = z.real;
    est.z_imag = z.imag;
    est.x = x;
    est.y = y;
    est.seed = seed;
    return est;
}

double fractional_moment_bound(const WalkClassCounts& counts, FractionalExponent s,
                               double lambda, const AprioriConstants& constants) {
    if (lambda <= 0.0) throw std::invalid_argument("moment bound: lambda must be positive");
    double ratio = constants.c2 / std::pow(lambda, s.s);
    return static_cast<double>(counts.w_prime_count()) * std::pow(ratio, counts.dist + 1);
}

RatioProbe second_moment_ratio_probe(const Graph& g, const DisorderModel& model,
                                     int x, int y, ComplexEnergy z,
                                     FractionalExponent s, long long trials,
                                     std::uint64_t seed, unsigned workers) {
    if (trials < 2) throw std::invalid_argument("ratio probe: trials must be >= 2");
    std::vector<double> sq(trials), frac(trials);
    parallel_for(static_cast<std::size_t>(trials), workers, [&](std::size_t t) {
        AndersonOperator op(g, sample_disorder(model, g, seed, t), model.lambda);
        double a = std::abs(greens_function(op, x, y, z));
        sq[t] = a * a;
        frac[t] = std::pow(a, s.s);
    });
    auto [sq_mean, sq_se] = summarize(sq);
    auto [fr_mean, fr_se] = summarize(frac);
    if (fr_mean == 0.0)
        throw std::runtime_error("ratio probe: degenerate estimate, zero denominator");
    RatioProbe probe;
    probe.second_moment_mean = sq_mean;
    probe.fractional_moment_mean = fr_mean;
    probe.samples = trials;
    double eta = std::abs(z.imag);
    probe.ratio = eta * sq_mean / fr_mean;
    // first-order propagation, ignoring the (positive) covariance term
    probe.ratio_std_error =
        probe.ratio * std::sqrt(std::pow(sq_se / sq_mean, 2) + std::pow(fr_se / fr_mean, 2));
    return probe;
}

} // namespace asaw
