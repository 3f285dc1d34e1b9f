#pragma once

#include <cstdint>

#include "asaw/anderson.hpp"
#include "asaw/graph.hpp"
#include "asaw/saw.hpp"

namespace asaw {

/// Fractional power s, strictly inside (0,1).
struct FractionalExponent {
    double s;
    explicit FractionalExponent(double value);
};

/// Closed-form a-priori resolvent-moment constants for a bounded density:
///   c1 = ||rho||_inf^s * 2^s * s^{-s} / (1-s)        (diagonal entries)
///   c2 = c1 * 2^{s+1}                                 (off-diagonal entries)
struct AprioriConstants {
    double c1 = 0.0;
    double c2 = 0.0;
};

AprioriConstants apriori_constants(FractionalExponent s, double density_sup_norm);

/// Monte Carlo estimate of E|G(x,y;z)|^s over i.i.d. disorder draws.
struct MomentEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    long long samples = 0;
    // query echo
    double s = 0.0;
    double lambda = 0.0;
    double z_real = 0.0;
    double z_imag = 0.0;
    int x = 0;
    int y = 0;
    std::uint64_t seed = 0;
};

MomentEstimate estimate_fractional_moment(const Graph& g, const DisorderModel& model,
                                          int x, int y, ComplexEnergy z,
                                          FractionalExponent s, long long trials,
                                          std::uint64_t seed, unsigned workers = 1);

/// Walk-count moment bound: |W'(x,y)| * (c2 / lambda^s)^{d+1}.
double fractional_moment_bound(const WalkClassCounts& counts, FractionalExponent s,
                               double lambda, const AprioriConstants& constants);

/// Empirical witness for the constant relating second and fractional moments:
///   ratio = |Im z| * E[|G|^2] / E[|G|^s], estimated from paired samples.
/// An observed lower witness for the constant, not a certified bound.
struct RatioProbe {
    double ratio = 0.0;
    double second_moment_mean = 0.0;
    double fractional_moment_mean = 0.0;
    double ratio_std_error = 0.0; // first-order error propagation
    long long samples = 0;
};

RatioProbe second_moment_ratio_probe(const Graph& g, const DisorderModel& model,
                                     int x, int y, ComplexEnergy z,
                                     FractionalExponent s, long long trials,
                                     std::uint64_t seed, unsigned workers = 1);

} // namespace asaw
