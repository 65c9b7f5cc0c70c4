// Copyright 2026 The qpoisson Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qpoisson/analysis.h"

#include <gtest/gtest.h>

#include <cmath>

#include "qpoisson/appendix.h"
#include "qpoisson/poisson.h"

namespace qpoisson {
namespace {

TEST(Schedule, KnownIntensities) {
    EXPECT_NEAR(sweep_intensity(1), 1.926e-4, 1e-7);
    EXPECT_NEAR(sweep_intensity(5), 2.646e-3, 1e-6);
    EXPECT_NEAR(sweep_intensity(9), 3.637e-2, 3e-5);
    EXPECT_NEAR(sweep_intensity(10), 7e-2, 1e-15);
    EXPECT_THROW(sweep_intensity(0), std::invalid_argument);
    int is[] = {1, 2, 3};
    auto s = sweep_schedule(is);
    ASSERT_EQ(s.size(), 3u);
    EXPECT_LT(s[0], s[1]);
    EXPECT_NEAR(s[1] / s[0], s[2] / s[1], 1e-12);
}

TEST(Deviation, Example) {
    double noise[] = {0.2, 0.3, 0.1};
    double theory[] = {0.25, 0.3, 0.2};
    Deviation d = deviation(noise, theory);
    EXPECT_NEAR(d.per_basis[0], 0.2, 1e-15);
    EXPECT_NEAR(d.per_basis[1], 0, 1e-15);
    EXPECT_NEAR(d.per_basis[2], 0.5, 1e-15);
    EXPECT_NEAR(d.mean, 0.7 / 3, 1e-15);
}

TEST(Deviation, UnchangedWhenBothDistributionsScale) {
    double noise[] = {0.11, 0.27, 0.05};
    double theory[] = {0.2, 0.3, 0.1};
    double noise2[] = {0.22, 0.54, 0.10};
    double theory2[] = {0.4, 0.6, 0.2};
    Deviation a = deviation(noise, theory);
    Deviation b = deviation(noise2, theory2);
    for (std::size_t k = 0; k < 3; k++) {
        EXPECT_NEAR(a.per_basis[k], b.per_basis[k], 1e-15);
    }
}

TEST(Deviation, Rejects) {
    double a[] = {0.1, 0.2};
    double b[] = {0.1};
    double zero[] = {0.1, 0.0};
    EXPECT_THROW(deviation(a, b), std::invalid_argument);
    EXPECT_THROW(deviation(std::span<const double>{}, std::span<const double>{}), std::invalid_argument);
    EXPECT_THROW(deviation(a, zero), std::invalid_argument);
}

TEST(Threshold, SyntheticCurve) {
    // D = 0.1 exactly halfway (in log p) between 1e-3 and 1e-2.
    double p[] = {1e-4, 1e-3, 1e-2, 1e-1};
    double d[] = {0.01, 0.05, 0.15, 0.5};
    EXPECT_NEAR(find_threshold(p, d), std::sqrt(1e-5), 1e-12);
    double flat[] = {0.01, 0.02, 0.03, 0.04};
    EXPECT_THROW(find_threshold(p, flat), std::domain_error);
    EXPECT_THROW(find_threshold(std::span<const double>(p, 1), std::span<const double>(d, 1)), std::invalid_argument);
}

TEST(Threshold, ExactCrossingPoint) {
    double p[] = {1e-3, 1e-2};
    double d[] = {0.05, 0.1};
    EXPECT_NEAR(find_threshold(p, d), 1e-2, 1e-15);
    // A curve that starts above the target never rises through it.
    double above[] = {0.1, 0.2};
    EXPECT_THROW(find_threshold(p, above), std::domain_error);
}

TEST(Metrics, SmallCircuit) {
    Circuit c(3, 1);
    c.h(0).cx(0, 1).ccx(0, 1, 2).swap(0, 2).barrier({0, 1, 2}).measure(2, 0);
    CircuitMetrics m = circuit_metrics(c);
    EXPECT_EQ(m.gate_count, 4u);
    EXPECT_EQ(m.one_two_qubit_gate_count, 3u);
    EXPECT_EQ(m.ccx_count, 1u);
    EXPECT_EQ(m.decomposed_basic_gate_count, 1u + 1 + 15 + 3);
    EXPECT_EQ(m.depth, 4u);
}

TEST(Metrics, ParallelGatesShareALayer) {
    Circuit c(4);
    c.h(0).h(1).h(2).h(3).cx(0, 1).cx(2, 3);
    EXPECT_EQ(circuit_metrics(c).depth, 2u);
}

TEST(Metrics, ListingCounts) {
    EXPECT_EQ(circuit_metrics(appendix_circuit(2)).gate_count, 79u);
    auto n3 = circuit_metrics(appendix_circuit(3)).gate_count;
    EXPECT_LE(n3, 227u);
    EXPECT_GE(n3, 207u);
}

TEST(SweepConfig, Validation) {
    SweepConfig ok;
    EXPECT_NO_THROW(ok.validate());
    SweepConfig bad = ok;
    bad.i_min = 0;
    EXPECT_THROW(bad.validate(), std::invalid_argument);
    bad = ok;
    bad.i_max = 0;
    EXPECT_THROW(bad.validate(), std::invalid_argument);
    bad = ok;
    bad.noise_types.clear();
    EXPECT_THROW(bad.validate(), std::invalid_argument);
    bad = ok;
    bad.mode = SweepMode::Sampled;
    bad.shots = 0;
    EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(Sweep, ZeroIntensityHasNoDeviation) {
    SweepConfig config;
    config.intensities = {0.0};
    auto report = run_sweep(config);
    ASSERT_EQ(report.rows.size(), 4u);
    for (const auto &row : report.rows) {
        EXPECT_NEAR(row.Dbar, 0, 1e-9);
    }
}

TEST(Sweep, ExactIsReproducibleAndMonotoneAtEnds) {
    SweepConfig config;
    config.threads = 2;
    auto a = run_sweep(config);
    config.threads = 1;
    auto b = run_sweep(config);
    EXPECT_EQ(report_csv(a), report_csv(b));
    ASSERT_EQ(a.rows.size(), 36u);
    for (std::size_t k = 0; k < 4; k++) {
        EXPECT_GT(a.rows[9 * k + 8].Dbar, a.rows[9 * k].Dbar);
    }
    EXPECT_EQ(a.bases.size(), 3u);
    EXPECT_EQ(a.bases[0], "01");
    EXPECT_NEAR(a.theory[0], 0.205, 0.005);
}

TEST(Sweep, SampledIsSeedDeterministic) {
    SweepConfig config;
    config.mode = SweepMode::Sampled;
    config.noise_types = {ChannelKind::PhaseDamping};
    config.i_max = 2;
    config.seed = 99;
    auto a = run_sweep(config);
    config.threads = 1;
    auto b = run_sweep(config);
    EXPECT_EQ(report_csv(a), report_csv(b));
    config.seed = 100;
    EXPECT_NE(report_csv(a), report_csv(run_sweep(config)));
}

TEST(Sweep, BuilderAndListingAgreeExactly) {
    SweepConfig config;
    config.noise_types = {ChannelKind::PhaseDamping};
    config.i_max = 1;
    auto listing = run_sweep(config);
    config.source = SweepCircuit::Builder;
    auto builder = run_sweep(config);
    EXPECT_NEAR(listing.theory[0], builder.theory[0], 1e-6);
}

TEST(Report, CsvAndJson) {
    SweepConfig config;
    config.noise_types = {ChannelKind::BitFlip};
    config.i_max = 3;
    auto report = run_sweep(config);
    std::string csv = report_csv(report);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "noise,i,p,basis,D,Dbar");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 3 * 3);
    std::string json = report_json(report);
    EXPECT_NE(json.find("\"circuit_hash\""), std::string::npos);
    EXPECT_EQ(report.circuit_hash.size(), 16u);
    EXPECT_EQ(report.circuit_hash, circuit_hash(appendix_circuit(2)));
}

TEST(Thresholds, WorstPicksSmallestP) {
    std::vector<Threshold> t = {
        {ChannelKind::AmplitudeDamping, 2e-3}, {ChannelKind::BitFlip, 1e-3}, {ChannelKind::PhaseDamping, std::nullopt}};
    auto w = worst_threshold(t);
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(w->noise, ChannelKind::BitFlip);
    std::vector<Threshold> none = {{ChannelKind::PhaseDamping, std::nullopt}};
    EXPECT_FALSE(worst_threshold(none).has_value());
}

}  // namespace
}  // namespace qpoisson
