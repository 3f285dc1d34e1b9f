#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "asaw/anderson.hpp"
#include "asaw/graph.hpp"

namespace asaw {

/// Sorted spectrum of H per disorder draw, deterministic in seed.
std::vector<std::vector<double>> eigen_ensemble(const Graph& g, const DisorderModel& model,
                                                int draws, std::uint64_t seed,
                                                unsigned workers = 1);

/// Nearest-neighbor spacings after windowing and local unfolding, pooled over
/// draws. Unfolding divides each raw spacing by the moving-average spacing over
/// its 20 nearest neighbor spacings, so the pooled mean is ~1.
struct SpacingEnsemble {
    std::vector<double> unfolded_spacings;
    int draws = 0;
    std::string graph_desc;
    double lambda = 0.0;
    double window = 1.0;          // central fraction of each spectrum retained
    int degenerate_dropped = 0;   // raw spacings below 1e-12, excluded
};

SpacingEnsemble unfold_and_space(const std::vector<std::vector<double>>& spectra,
                                 double window);

/// Wraps pre-unfolded spacings (synthetic baselines, tests).
SpacingEnsemble make_spacing_ensemble(std::vector<double> unfolded, int draws = 1);

enum class SpacingVerdict { poisson_like, goe_like, ambiguous };

/// Kolmogorov-Smirnov distances of the pooled spacing law to the Poisson
/// baseline 1 - exp(-s) and the Wigner-surmise baseline 1 - exp(-pi s^2 / 4).
struct BaselineDistances {
    double ks_poisson = 0.0;
    double ks_goe = 0.0;
    SpacingVerdict verdict = SpacingVerdict::ambiguous;
};

inline constexpr double kVerdictMargin = 0.02;

BaselineDistances baseline_distances(const SpacingEnsemble& ensemble);

const char* to_string(SpacingVerdict v);

// Baseline CDFs and inverse-CDF samplers (handy for synthetic checks).
double poisson_spacing_cdf(double s);
double wigner_surmise_cdf(double s);
double poisson_spacing_quantile(double u); // u in [0,1)
double wigner_surmise_quantile(double u);

/// Two-sided KS statistic of samples against a CDF.
double ks_distance(std::vector<double> samples, double (*cdf)(double));

} // namespace asaw
