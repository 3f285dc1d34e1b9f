#include "asaw/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "asaw/parallel.hpp"

namespace asaw {

std::vector<std::vector<double>> eigen_ensemble(const Graph& g, const DisorderModel& model,
                                                int draws, std::uint64_t seed,
                                                unsigned workers) {
    if (draws < 1) throw std::invalid_argument("eigen ensemble: draws must be >= 1");
    std::vector<std::vector<double>> spectra(draws);
    parallel_for(static_cast<std::size_t>(draws), workers, [&](std::size_t t) {
        AndersonOperator op(g, sample_disorder(model, g, seed, t), model.lambda);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(op.matrix(),
                                                              Eigen::EigenvaluesOnly);
        if (solver.info() != Eigen::Success)
            throw std::runtime_error("eigen ensemble: eigendecomposition failed");
        const auto& evals = solver.eigenvalues();
        spectra[t].assign(evals.data(), evals.data() + evals.size());
        std::sort(spectra[t].begin(), spectra[t].end());
    });
    return spectra;
}

SpacingEnsemble unfold_and_space(const std::vector<std::vector<double>>& spectra,
                                 double window) {
    if (!(window > 0.0 && window <= 1.0))
        throw std::invalid_argument("unfold: window must lie in (0,1]");
    SpacingEnsemble out;
    out.draws = static_cast<int>(spectra.size());
    out.window = window;
    for (const auto& spectrum : spectra) {
        int n = static_cast<int>(spectrum.size());
        if (n < 32) throw std::invalid_argument("unfold: spectrum needs at least 32 eigenvalues");
        int keep = std::max(2, static_cast<int>(std::floor(n * window)));
        int lo = (n - keep) / 2;
        std::vector<double> raw;
        raw.reserve(keep - 1);
        for (int i = lo; i + 1 < lo + keep; ++i) {
            double s = spectrum[i + 1] - spectrum[i];
            if (s < 1e-12) {
                out.degenerate_dropped++;
                continue;
            }
            raw.push_back(s);
        }
        int m = static_cast<int>(raw.size());
        // local mean over the 20 nearest spacings (10 each side, clipped)
        for (int i = 0; i < m; ++i) {
            int a = std::max(0, i - 10);
            int b = std::min(m - 1, i + 10);
            double acc = 0.0;
            for (int j = a; j <= b; ++j) acc += raw[j];
            double local_mean = acc / (b - a + 1);
            out.unfolded_spacings.push_back(raw[i] / local_mean);
        }
    }
    return out;
}

SpacingEnsemble make_spacing_ensemble(std::vector<double> unfolded, int draws) {
    SpacingEnsemble out;
    out.unfolded_spacings = std::move(unfolded);
    out.draws = draws;
    return out;
}

double poisson_spacing_cdf(double s) { return s <= 0.0 ? 0.0 : 1.0 - std::exp(-s); }

double wigner_surmise_cdf(double s) {
    return s <= 0.0 ? 0.0 : 1.0 - std::exp(-std::numbers::pi * s * s / 4.0);
}

double poisson_spacing_quantile(double u) { return -std::log1p(-u); }

double wigner_surmise_quantile(double u) {
    return 2.0 * std::sqrt(-std::log1p(-u) / std::numbers::pi);
}

double ks_distance(std::vector<double> samples, double (*cdf)(double)) {
    if (samples.empty()) throw std::invalid_argument("ks distance: no samples");
    std::sort(samples.begin(), samples.end());
    double n = static_cast<double>(samples.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        double f = cdf(samples[i]);
        worst = std::max(worst, std::abs((static_cast<double>(i) + 1.0) / n - f));
        worst = std::max(worst, std::abs(f - static_cast<double>(i) / n));
    }
    return worst;
}

BaselineDistances baseline_distances(const SpacingEnsemble& ensemble) {
    if (ensemble.unfolded_spacings.size() < 500)
        throw std::invalid_argument("baseline distances: need at least 500 pooled spacings");
    BaselineDistances out;
    out.ks_poisson = ks_distance(ensemble.unfolded_spacings, poisson_spacing_cdf);
    out.ks_goe = ks_distance(ensemble.unfolded_spacings, wigner_surmise_cdf);
    if (out.ks_poisson < out.ks_goe - kVerdictMargin)
        out.verdict = SpacingVerdict::poisson_like;
    else if (out.ks_goe < out.ks_poisson - kVerdictMargin)
        out.verdict = SpacingVerdict::goe_like;
    else
        out.verdict = SpacingVerdict::ambiguous;
    return out;
}

const char* to_string(SpacingVerdict v) {
    switch (v) {
        case SpacingVerdict::poisson_like: return "poisson_like";
        case SpacingVerdict::goe_like: return "goe_like";
        case SpacingVerdict::ambiguous: return "ambiguous";
    }
    return "?";
}

} // namespace asaw
