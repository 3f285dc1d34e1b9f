#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "asaw/rng.hpp"
#include "asaw/spectral.hpp"

using namespace asaw;

TEST_CASE("free cycle spectrum matches the circulant closed form") {
    auto g = build_cycle(6);
    // lambda must be positive; make the potential negligible instead of zero
    auto model = DisorderModel::uniform_unit(1e-12);
    auto spectra = eigen_ensemble(g, model, 1, 0);
    REQUIRE(spectra.size() == 1);
    std::vector<double> expected{-2.0, -1.0, -1.0, 1.0, 1.0, 2.0};
    REQUIRE(spectra[0].size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i)
        CHECK(spectra[0][i] == doctest::Approx(expected[i]).epsilon(1e-9));
}

TEST_CASE("spectra are bounded, sorted and deterministic") {
    auto g = build_cycle_shortcut(40, 6, 3);
    auto model = DisorderModel::uniform_unit(2.5);
    auto spectra = eigen_ensemble(g, model, 5, 11, 2);
    double bound = g.degree_bound() + 2.5;
    for (const auto& spectrum : spectra) {
        CHECK(std::is_sorted(spectrum.begin(), spectrum.end()));
        for (double e : spectrum) {
            CHECK(e >= -bound - 1e-9);
            CHECK(e <= bound + 1e-9);
        }
    }
    auto again = eigen_ensemble(g, model, 5, 11, 1);
    CHECK(spectra == again);
}

TEST_CASE("unfolding an equally spaced spectrum gives unit spacings") {
    std::vector<double> ladder(64);
    for (int i = 0; i < 64; ++i) ladder[i] = 0.25 * i;
    auto ensemble = unfold_and_space({ladder}, 1.0);
    REQUIRE(!ensemble.unfolded_spacings.empty());
    for (double s : ensemble.unfolded_spacings) CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("unfolded mean spacing is one within two percent") {
    auto g = build_cycle_shortcut(200, 20, 5);
    auto spectra = eigen_ensemble(g, DisorderModel::uniform_unit(3.0), 10, 4, 2);
    auto ensemble = unfold_and_space(spectra, 0.5);
    double mean = std::accumulate(ensemble.unfolded_spacings.begin(),
                                  ensemble.unfolded_spacings.end(), 0.0) /
                  ensemble.unfolded_spacings.size();
    CHECK(std::abs(mean - 1.0) <= 0.02);
}

TEST_CASE("uniform eigenvalues unfold to Poisson spacings") {
    // i.i.d. uniform levels: order-statistics spacings are exponential
    const int n = 501, draws = 20;
    std::vector<std::vector<double>> spectra(draws);
    for (int t = 0; t < draws; ++t) {
        spectra[t].resize(n);
        for (int i = 0; i < n; ++i)
            spectra[t][i] = rng::u01(99, rng::kStreamSynth, t, i);
        std::sort(spectra[t].begin(), spectra[t].end());
    }
    auto ensemble = unfold_and_space(spectra, 1.0);
    CHECK(ensemble.unfolded_spacings.size() >= 10000 - draws);
    CHECK(ks_distance(ensemble.unfolded_spacings, poisson_spacing_cdf) < 0.05);
}

TEST_CASE("unfold input validation") {
    std::vector<double> tiny(16, 1.0);
    CHECK_THROWS_AS(unfold_and_space({tiny}, 0.5), std::invalid_argument);
    std::vector<double> ok(64, 1.0);
    CHECK_THROWS_AS(unfold_and_space({ok}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(unfold_and_space({ok}, 1.5), std::invalid_argument);
}

TEST_CASE("degenerate spacings are dropped and counted") {
    std::vector<double> spectrum(64);
    for (int i = 0; i < 64; ++i) spectrum[i] = 1.0 * i;
    spectrum[30] = spectrum[29]; // exact degeneracy
    std::sort(spectrum.begin(), spectrum.end());
    auto ensemble = unfold_and_space({spectrum}, 1.0);
    CHECK(ensemble.degenerate_dropped == 1);
    for (double s : ensemble.unfolded_spacings) CHECK(s > 0.0);
}

TEST_CASE("synthetic baselines are classified correctly") {
    const int n = 10000;
    std::vector<double> poisson(n), goe(n);
    for (int i = 0; i < n; ++i) {
        poisson[i] = poisson_spacing_quantile(rng::u01(7, rng::kStreamSynth, 0, i));
        goe[i] = wigner_surmise_quantile(rng::u01(7, rng::kStreamSynth, 1, i));
    }
    auto dp = baseline_distances(make_spacing_ensemble(poisson));
    CHECK(dp.verdict == SpacingVerdict::poisson_like);
    CHECK(dp.ks_poisson < 0.05);
    CHECK(dp.ks_poisson < dp.ks_goe);

    auto dg = baseline_distances(make_spacing_ensemble(goe));
    CHECK(dg.verdict == SpacingVerdict::goe_like);
    CHECK(dg.ks_goe < 0.05);
    CHECK(dg.ks_goe < dg.ks_poisson);

    std::vector<double> few(100, 1.0);
    CHECK_THROWS_AS(baseline_distances(make_spacing_ensemble(few)), std::invalid_argument);
}

TEST_CASE("classification correctness holds already at one thousand samples") {
    const int n = 1000;
    for (int rep = 0; rep < 5; ++rep) {
        std::vector<double> poisson(n), goe(n);
        for (int i = 0; i < n; ++i) {
            poisson[i] = poisson_spacing_quantile(rng::u01(rep + 20, rng::kStreamSynth, 0, i));
            goe[i] = wigner_surmise_quantile(rng::u01(rep + 20, rng::kStreamSynth, 1, i));
        }
        auto dp = baseline_distances(make_spacing_ensemble(poisson));
        CHECK(dp.ks_poisson < dp.ks_goe);
        auto dg = baseline_distances(make_spacing_ensemble(goe));
        CHECK(dg.ks_goe < dg.ks_poisson);
    }
}

TEST_CASE("shortcut model: disorder drives the verdict from GOE toward Poisson") {
    // scaled-down version of the production experiment, seeded
    auto g = build_cycle_shortcut(160, 16, 1);
    auto low = baseline_distances(
        unfold_and_space(eigen_ensemble(g, DisorderModel::uniform_unit(0.5), 30, 2, 2), 0.5));
    auto high = baseline_distances(
        unfold_and_space(eigen_ensemble(g, DisorderModel::uniform_unit(20.0), 30, 2, 2), 0.5));
    CHECK(low.ks_goe < high.ks_goe);
    CHECK(high.ks_poisson < low.ks_poisson);
    CHECK(high.verdict == SpacingVerdict::poisson_like);
}

TEST_CASE("ks distance sanity") {
    std::vector<double> exact;
    for (int i = 1; i <= 1000; ++i)
        exact.push_back(poisson_spacing_quantile((i - 0.5) / 1000.0));
    CHECK(ks_distance(exact, poisson_spacing_cdf) < 0.002);
    CHECK(ks_distance(exact, wigner_surmise_cdf) > 0.1);
}
