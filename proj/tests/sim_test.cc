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

#include "qpoisson/sim.h"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "qpoisson/analysis.h"
#include "qpoisson/appendix.h"
#include "qpoisson/poisson.h"
#include "test_util.h"

namespace qpoisson {
namespace {

TEST(RunIdeal, Hadamard) {
    Circuit c(1);
    c.h(0);
    StateVector s = run_ideal(c);
    EXPECT_NEAR(s.amplitude(0).real(), 1 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(s.amplitude(1).real(), 1 / std::sqrt(2.0), 1e-15);
}

TEST(RunIdeal, DimensionMismatch) {
    Circuit c(2);
    EXPECT_THROW(run_ideal(c, StateVector(3)), std::invalid_argument);
    EXPECT_THROW(run_noisy(c, DensityMatrix(1), NoiseModel{}), std::invalid_argument);
}

TEST(RunIdeal, StripsMeasuresWithWarning) {
    Circuit c(1, 1);
    c.x(0).measure(0, 0).barrier({0});
    std::ostringstream warn;
    StateVector s = run_ideal(c, &warn);
    EXPECT_EQ(s.amplitude(1), Complex(1));
    EXPECT_NE(warn.str().find("measure"), std::string::npos);
}

TEST(RunIdeal, AppendixNormPreserved) {
    for (std::size_t n : {2, 3}) {
        StateVector s = run_ideal(appendix_circuit(n));
        EXPECT_NEAR(s.norm_squared(), 1, 1e-10);
    }
}

TEST(RunNoisy, EmptyModelMatchesIdeal) {
    Circuit c = appendix_circuit(2);
    DensityMatrix rho = run_noisy(c, NoiseModel{});
    DensityMatrix pure = DensityMatrix::from_pure(run_ideal(c));
    EXPECT_LT(rho.max_abs_diff(pure), 1e-10);
}

TEST(RunNoisy, IdentityChannelsMatchIdeal) {
    Circuit c = appendix_circuit(2);
    NoiseModel model = NoiseModel::uniform(KrausChannel::custom({Matrix::identity(2)}));
    DensityMatrix rho = run_noisy(c, model);
    EXPECT_LT(rho.max_abs_diff(DensityMatrix::from_pure(run_ideal(c))), 1e-10);
}

TEST(RunNoisy, BitFlipBeforeXCancels) {
    Circuit c(1);
    c.x(0);
    DensityMatrix rho = run_noisy(c, NoiseModel::uniform(KrausChannel::bit_flip(1)));
    EXPECT_NEAR(rho(0, 0).real(), 1, 1e-15);
}

TEST(RunNoisy, AmplitudeDampingBeforeHadamard) {
    Circuit c(1);
    c.h(0);
    DensityMatrix rho = run_noisy(c, NoiseModel::uniform(KrausChannel::amplitude_damping(1)));
    for (std::size_t r = 0; r < 2; r++) {
        for (std::size_t col = 0; col < 2; col++) {
            EXPECT_NEAR(std::abs(rho(r, col) - 0.5), 0, 1e-15);
        }
    }
}

TEST(RunNoisy, ChannelOnEveryActedQubit) {
    // Bit flip p=1 before a CX on |00> flips both qubits, then CX maps |11> to |10>.
    Circuit c(2);
    c.cx(0, 1);
    DensityMatrix rho = run_noisy(c, NoiseModel::uniform(KrausChannel::bit_flip(1)));
    EXPECT_NEAR(rho(1, 1).real(), 1, 1e-15);
}

TEST(RunNoisy, ReadoutChannelAtMeasure) {
    Circuit c(1, 1);
    c.measure(0, 0);
    NoiseModel model;
    model.readout = KrausChannel::bit_flip(0.25);
    DensityMatrix rho = run_noisy(c, model);
    EXPECT_NEAR(rho(1, 1).real(), 0.25, 1e-15);
}

TEST(RunNoisy, RejectsInvalidChannels) {
    Circuit c(2);
    c.h(0);
    NoiseModel model;
    model.per_gate.emplace(GateKind::H, KrausChannel::custom({Matrix::identity(4)}));
    EXPECT_THROW(run_noisy(c, model), std::invalid_argument);
}

TEST(RunNoisy, TraceOnCorpusAtEverySweptIntensity) {
    for (std::size_t n : {2, 3}) {
        Circuit c = appendix_circuit(n);
        for (int i : {1, 5, 9}) {
            for (auto kind : {ChannelKind::AmplitudeDamping, ChannelKind::Composite}) {
                DensityMatrix rho = run_noisy(c, NoiseModel::uniform(KrausChannel::of_kind(kind, sweep_intensity(i))));
                EXPECT_NEAR(std::abs(rho.trace() - 1.0), 0, 1e-8);
                EXPECT_LT(rho.hermiticity_error(), 1e-12);
            }
        }
    }
}

TEST(Sample, PureBasisState) {
    auto hist = sample(StateVector::basis(2, 1), 1000, 7);
    ASSERT_EQ(hist.size(), 1u);
    EXPECT_EQ(hist[0].bitstring, "01");
    EXPECT_EQ(hist[0].count, 1000u);
    EXPECT_DOUBLE_EQ(hist[0].probability, 1.0);
}

TEST(Sample, PlusStateConcentrates) {
    Circuit c(1);
    c.h(0);
    auto hist = sample(run_ideal(c), 1000000, 8);
    ASSERT_EQ(hist.size(), 2u);
    EXPECT_NEAR(hist[0].probability, 0.5, 0.002);
}

TEST(Sample, DeterministicForSeed) {
    StateVector s = run_ideal(appendix_circuit(2));
    auto a = sample(s, 5000, 42);
    auto b = sample(s, 5000, 42);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t k = 0; k < a.size(); k++) {
        EXPECT_EQ(a[k].bitstring, b[k].bitstring);
        EXPECT_EQ(a[k].count, b[k].count);
    }
    auto rho_hist = sample(DensityMatrix::from_pure(s), 5000, 42);
    EXPECT_EQ(rho_hist.size(), a.size());
}

TEST(Sample, ZeroShotsRejected) {
    EXPECT_THROW(sample(StateVector(1), 0, 1), std::invalid_argument);
}

TEST(Sample, ConvergesOnSolverOutput) {
    StateVector s = run_ideal(build_solver(builtin_instance(2)));
    auto exact = born_probabilities(s);
    auto hist = sample(s, 1000000, 9);
    std::vector<double> empirical(exact.size(), 0.0);
    double total = 0;
    for (const auto &o : hist) {
        empirical[std::stoull(o.bitstring, nullptr, 2)] = o.probability;
        total += o.probability;
    }
    EXPECT_NEAR(total, 1, 1e-9);
    double tv = 0;
    for (std::size_t k = 0; k < exact.size(); k++) {
        tv += std::abs(exact[k] - empirical[k]) / 2;
    }
    EXPECT_LT(tv, 0.005);
}

TEST(PostSelect, Examples) {
    QubitCondition q0_one[] = {{0, true}};
    PostSelection a = post_select(StateVector::basis(2, 3), q0_one);
    EXPECT_DOUBLE_EQ(a.success_probability, 1);
    EXPECT_DOUBLE_EQ(a.probabilities[1], 1);

    StateVector bell(2, {1 / std::sqrt(2.0), 0, 0, 1 / std::sqrt(2.0)});
    PostSelection b = post_select(bell, q0_one);
    EXPECT_NEAR(b.success_probability, 0.5, 1e-15);
    EXPECT_NEAR(b.probabilities[1], 0.5, 1e-15);
    EXPECT_NEAR(b.probabilities[0], 0, 1e-15);
    EXPECT_NEAR(b.conditional()[1], 1, 1e-15);
}

TEST(PostSelect, BranchesSumToOne) {
    std::mt19937_64 rng(41);
    StateVector s = testing::random_state(4, rng);
    double total = 0;
    for (int v0 = 0; v0 < 2; v0++) {
        for (int v2 = 0; v2 < 2; v2++) {
            QubitCondition cond[] = {{0, v0 == 1}, {2, v2 == 1}};
            PostSelection p = post_select(s, cond);
            double sum = 0;
            for (double x : p.probabilities) {
                EXPECT_GE(x, 0);
                sum += x;
            }
            EXPECT_NEAR(sum, p.success_probability, 1e-12);
            total += p.success_probability;
        }
    }
    EXPECT_NEAR(total, 1, 1e-9);
}

TEST(PostSelect, ReadoutOrderAndValidation) {
    // |q2 q1 q0> = |110>: reading out (q2, q1) gives value 0b11.
    StateVector s = StateVector::basis(3, 6);
    Qubit readout[] = {2, 1};
    PostSelection p = post_select(s, {}, readout);
    EXPECT_DOUBLE_EQ(p.probabilities[3], 1);
    QubitCondition dup[] = {{0, true}, {0, false}};
    EXPECT_THROW(post_select(s, dup), std::invalid_argument);
}

TEST(PostSelect, SolverTargets) {
    SolverLayout layout = SolverLayout::of(2);
    StateVector s = run_ideal(build_solver(builtin_instance(2)));
    PostSelection p = solver_post_select(s, layout);
    EXPECT_NEAR(p.probabilities[1], 0.205, 5e-3);
    EXPECT_NEAR(p.probabilities[2], 0.304, 5e-3);
    EXPECT_NEAR(p.probabilities[3], 0.161, 5e-3);
}

}  // namespace
}  // namespace qpoisson
