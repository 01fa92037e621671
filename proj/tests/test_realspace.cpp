#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "wgqed/closed_form.hpp"
#include "wgqed/realspace.hpp"

using namespace wgqed;

namespace {

constexpr complex I{0.0, 1.0};

ScatteringAmplitudes outgoing_two_atom(const SolveResult& r)
{
    return {r.outgoing(0, Direction::Rightward), r.outgoing(0, Direction::Leftward),
            r.outgoing(1, Direction::Rightward), r.outgoing(1, Direction::Leftward)};
}

double amplitude_gap(const ScatteringAmplitudes& a, const ScatteringAmplitudes& b)
{
    return std::max(std::max(std::abs(a.t_r1 - b.t_r1), std::abs(a.r_l1 - b.r_l1)),
                    std::max(std::abs(a.t_r2 - b.t_r2), std::abs(a.r_l2 - b.r_l2)));
}

double outgoing_flux(const SolveResult& r)
{
    double sum = 0.0;
    for (complex z : r.outgoing_rightward) sum += std::norm(z);
    for (complex z : r.outgoing_leftward) sum += std::norm(z);
    return sum;
}

// A random mess of emitters and waveguides, all lossless.
SystemSpec random_system(std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> n_wg_d(1, 3), n_em_d(1, 3), n_legs_d(1, 3);
    std::uniform_real_distribution<double> pos(-1.0, 1.0), v(0.2, 1.5), freq(-3.0, 3.0),
        jay(-1.5, 1.5);
    const double carrier = 1e6;

    SystemSpec sys;
    const int n_wg = n_wg_d(rng), n_em = n_em_d(rng);
    for (int w = 0; w < n_wg; ++w) sys.waveguides.push_back({w, 1.0});
    for (int e = 0; e < n_em; ++e) sys.emitters.push_back({e, freq(rng), 0.0});
    for (int e = 0; e < n_em; ++e) {
        const int legs = n_legs_d(rng);
        for (int l = 0; l < legs; ++l) {
            std::uniform_int_distribution<int> wg_d(0, n_wg - 1);
            sys.couplings.push_back(
                {e, wg_d(rng), pos(rng) * 2.0 * M_PI / carrier, v(rng)});
        }
    }
    for (int a = 0; a < n_em; ++a)
        for (int b = a + 1; b < n_em; ++b)
            if (rng() % 2) sys.direct.push_back({a, b, jay(rng)});
    sys.frequency_units = FrequencyUnits::DetuningFromReference;
    sys.reference_frequency = carrier;
    return sys;
}

}  // namespace

TEST_CASE("the two-atom system assembles a 10x10 boundary-condition matrix")
{
    const auto sys = two_atom_to_system({M_PI / 2, M_PI / 2, 1.0, -2.0, 0.0, 0.0}, 1e6);
    const auto ls = build_linear_system({sys, 0, Direction::Rightward, 1e6});
    CHECK(ls.matrix.rows() == 10);
    CHECK(ls.matrix.cols() == 10);
    CHECK(ls.junction_positions[0].size() == 2);
    CHECK(ls.junction_positions[1].size() == 2);
    CHECK(ls.rhs.cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("single emitter on one waveguide reproduces the textbook transmission")
{
    for (double kappa : {0.0, 0.4}) {
        SystemSpec sys;
        sys.waveguides = {{0, 1.0}};
        sys.emitters = {{0, 0.0, kappa}};
        sys.couplings = {{0, 0, 0.0, 1.0}};  // V^2 = gamma = 1
        sys.frequency_units = FrequencyUnits::DetuningFromReference;
        sys.reference_frequency = 1e6;

        for (double delta : {-2.0, -0.3, 0.0, 0.5, 4.0}) {
            const auto r = solve({sys, 0, Direction::Rightward, delta});
            const complex expected =
                (delta + I * kappa / 2.0) / (delta + I * 1.0 + I * kappa / 2.0);
            CHECK(std::abs(r.outgoing(0, Direction::Rightward) - expected) < 1e-12);
            CHECK(std::abs(r.outgoing(0, Direction::Leftward) - (expected - 1.0)) < 1e-12);
        }
    }
}

TEST_CASE("waveguides without couplings pass the photon straight through")
{
    SystemSpec sys;
    sys.waveguides = {{0, 1.0}, {1, 1.0}};
    sys.emitters = {{0, 0.0, 0.0}};
    sys.couplings = {{0, 0, 0.0, 1.0}};  // only waveguide 0 is loaded
    sys.frequency_units = FrequencyUnits::DetuningFromReference;
    sys.reference_frequency = 1e6;

    const auto r = solve({sys, 1, Direction::Rightward, 0.7});
    CHECK(std::abs(r.outgoing(1, Direction::Rightward) - 1.0) < 1e-15);
    CHECK(std::abs(r.outgoing(1, Direction::Leftward)) < 1e-15);
    CHECK(std::abs(r.outgoing(0, Direction::Rightward)) < 1e-15);
    CHECK(std::abs(r.outgoing(0, Direction::Leftward)) < 1e-15);

    const auto l = solve({sys, 1, Direction::Leftward, 0.7});
    CHECK(std::abs(l.outgoing(1, Direction::Leftward) - 1.0) < 1e-15);

    SystemSpec empty;
    empty.waveguides = {{0, 1.0}};
    empty.reference_frequency = 1e6;
    empty.frequency_units = FrequencyUnits::DetuningFromReference;
    const auto e = solve({empty, 0, Direction::Rightward, 0.0});
    CHECK(std::abs(e.outgoing(0, Direction::Rightward) - 1.0) < 1e-15);
}

TEST_CASE("fixed-phase solve reproduces the closed form to machine precision")
{
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    std::uniform_real_distribution<double> coupling(-3.0, 3.0);
    std::uniform_real_distribution<double> detuning(-10.0, 10.0);
    std::uniform_real_distribution<double> kappa(0.0, 1.5);

    double worst = 0.0;
    for (int i = 0; i < 300; ++i) {
        const TwoAtomParams p{angle(rng), angle(rng), 1.0, coupling(rng),
                              i % 2 ? kappa(rng) : 0.0, detuning(rng)};
        const auto sys = two_atom_to_system(p, 1e6, PhaseMode::FixedPhase,
                                            FrequencyUnits::DetuningFromReference);
        const auto sol = solve({sys, 0, Direction::Rightward, p.detuning});
        worst = std::max(worst, amplitude_gap(outgoing_two_atom(sol), amplitudes_full(p)));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("dispersive solve converges to the closed form at large carrier")
{
    const TwoAtomParams p{M_PI / 2, 1.5 * M_PI, 1.0, 0.0, 0.0, 1.3};
    double previous = 1.0;
    for (double carrier : {1e5, 1e7, 1e9}) {
        const auto sys = two_atom_to_system(p, carrier, PhaseMode::Dispersive,
                                            FrequencyUnits::DetuningFromReference);
        const auto sol = solve({sys, 0, Direction::Rightward, p.detuning});
        const double gap = amplitude_gap(outgoing_two_atom(sol), amplitudes_full(p));
        CHECK(gap < previous);  // error shrinks with carrier
        previous = gap;
    }
    CHECK(previous < 1e-8);
}

TEST_CASE("random lossless networks conserve outgoing flux in both phase modes")
{
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 120; ++trial) {
        SystemSpec sys = random_system(rng);
        sys.phase_mode = trial % 2 ? PhaseMode::Dispersive : PhaseMode::FixedPhase;
        const int n_wg = static_cast<int>(sys.waveguides.size());
        const int wg = static_cast<int>(rng() % n_wg);
        const auto dir = rng() % 2 ? Direction::Rightward : Direction::Leftward;
        const double energy = std::uniform_real_distribution<double>(-4.0, 4.0)(rng);
        const auto r = solve({sys, wg, dir, energy});
        CHECK(outgoing_flux(r) == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("mirroring every position swaps the propagation directions")
{
    std::mt19937_64 rng(5150);
    for (int trial = 0; trial < 40; ++trial) {
        SystemSpec sys = random_system(rng);
        SystemSpec mirrored = sys;
        for (auto& c : mirrored.couplings) c.position = -c.position;

        const double energy = 0.4;
        const auto fwd = solve({sys, 0, Direction::Rightward, energy});
        const auto bwd = solve({mirrored, 0, Direction::Leftward, energy});
        for (size_t w = 0; w < sys.waveguides.size(); ++w) {
            CHECK(std::abs(fwd.outgoing_rightward[w] - bwd.outgoing_leftward[w]) < 1e-12);
            CHECK(std::abs(fwd.outgoing_leftward[w] - bwd.outgoing_rightward[w]) < 1e-12);
        }
    }
}

TEST_CASE("listing order of waveguides and emitters is irrelevant")
{
    const auto sys = two_atom_to_system({1.1, 2.0, 1.0, -0.7, 0.2, 0.0}, 1e6,
                                        PhaseMode::FixedPhase,
                                        FrequencyUnits::DetuningFromReference);
    SystemSpec shuffled = sys;
    std::swap(shuffled.waveguides[0], shuffled.waveguides[1]);
    std::swap(shuffled.emitters[0], shuffled.emitters[1]);
    std::swap(shuffled.couplings[0], shuffled.couplings[3]);
    std::swap(shuffled.couplings[1], shuffled.couplings[2]);

    const auto a = solve({sys, 0, Direction::Rightward, 0.9});
    const auto b = solve({shuffled, 0, Direction::Rightward, 0.9});
    for (int w = 0; w < 2; ++w) {
        CHECK(std::abs(a.outgoing_rightward[w] - b.outgoing_rightward[w]) < 1e-14);
        CHECK(std::abs(a.outgoing_leftward[w] - b.outgoing_leftward[w]) < 1e-14);
    }
    for (int e = 0; e < 2; ++e)
        CHECK(std::abs(a.emitter_amplitudes[e] - b.emitter_amplitudes[e]) < 1e-14);
}

TEST_CASE("swapping the waveguide labels swaps the loop phases")
{
    const TwoAtomParams p{0.8, 2.4, 1.0, -0.9, 0.0, 0.6};
    const TwoAtomParams q{2.4, 0.8, 1.0, -0.9, 0.0, 0.6};
    const auto sys = two_atom_to_system(p, 1e6, PhaseMode::FixedPhase,
                                        FrequencyUnits::DetuningFromReference);
    // Inject into waveguide 1 instead of 0: same network seen from the other
    // waveguide, so the closed form with theta and phi exchanged applies.
    const auto sol = solve({sys, 1, Direction::Rightward, p.detuning});
    const auto expected = amplitudes_full(q);
    CHECK(std::abs(sol.outgoing(1, Direction::Rightward) - expected.t_r1) < 1e-12);
    CHECK(std::abs(sol.outgoing(1, Direction::Leftward) - expected.r_l1) < 1e-12);
    CHECK(std::abs(sol.outgoing(0, Direction::Rightward) - expected.t_r2) < 1e-12);
    CHECK(std::abs(sol.outgoing(0, Direction::Leftward) - expected.r_l2) < 1e-12);
}

TEST_CASE("segment fields satisfy the radiation conditions")
{
    const auto sys = two_atom_to_system({M_PI / 2, M_PI / 2, 1.0, -2.0, 0.0, 0.0}, 1e6,
                                        PhaseMode::FixedPhase,
                                        FrequencyUnits::DetuningFromReference);
    const auto r = solve({sys, 0, Direction::Rightward, 0.0});
    const auto& w0 = r.segment_amplitudes[0];
    REQUIRE(w0.segments.size() == 3);
    CHECK(std::abs(w0.segments.front().right - 1.0) < 1e-15);  // incident wave
    CHECK(std::abs(w0.segments.back().left) < 1e-15);          // nothing returns
    const auto& w1 = r.segment_amplitudes[1];
    CHECK(std::abs(w1.segments.front().right) < 1e-15);
    CHECK(std::abs(w1.segments.back().left) < 1e-15);
    CHECK(r.emitter_amplitudes.size() == 2);
}

TEST_CASE("negative-position legs behave like their mirror image")
{
    // One atom with legs at -d and 0 is the mirror of legs at 0 and +d; for a
    // symmetric probe both transmissions must coincide.
    const double carrier = 1e6, d = (M_PI / 2) / carrier;
    auto make = [&](double x0, double x1) {
        SystemSpec sys;
        sys.waveguides = {{0, 1.0}};
        sys.emitters = {{0, 0.0, 0.0}};
        sys.couplings = {{0, 0, x0, 1.0}, {0, 0, x1, 1.0}};
        sys.frequency_units = FrequencyUnits::DetuningFromReference;
        sys.reference_frequency = carrier;
        return sys;
    };
    const auto plus = solve({make(0.0, d), 0, Direction::Rightward, 0.8});
    const auto minus = solve({make(-d, 0.0), 0, Direction::Rightward, 0.8});
    CHECK(std::abs(plus.outgoing(0, Direction::Rightward) -
                   minus.outgoing(0, Direction::Rightward)) < 1e-12);
}

TEST_CASE("three-qubit preset: geometry and directional transfer")
{
    const auto sys = fig5_preset(50.0, 0.0, 0.1, 1.0);
    CHECK(sys.waveguides.size() == 2);
    CHECK(sys.emitters.size() == 3);
    CHECK(sys.couplings.size() == 6);
    CHECK(sys.phase_mode == PhaseMode::Dispersive);

    // Forward: detuning Q2 parks the backward pair; photon crosses co-moving.
    const auto fwd = solve({sys, 0, Direction::Rightward, 0.0});
    CHECK(std::norm(fwd.outgoing(1, Direction::Rightward)) > 0.94);
    CHECK(std::norm(fwd.outgoing(0, Direction::Leftward)) < 1e-2);
    CHECK(std::norm(fwd.outgoing(1, Direction::Leftward)) < 1e-2);

    // Backward: detuning Q3 instead activates the counter-moving pair.
    const auto bsys = fig5_preset(0.0, 50.0, 0.1, 1.0);
    const auto bwd = solve({bsys, 0, Direction::Rightward, 0.0});
    CHECK(std::norm(bwd.outgoing(1, Direction::Leftward)) > 0.94);
    CHECK(std::norm(bwd.outgoing(1, Direction::Rightward)) < 1e-2);
}

TEST_CASE("three-qubit preset is lossless at kappa = 0")
{
    const auto sys = fig5_preset(50.0, 0.0, 0.0, 1.0);
    const auto r = solve({sys, 0, Direction::Rightward, 0.0});
    CHECK(outgoing_flux(r) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("three-qubit preset rejects bad rates")
{
    CHECK_THROWS_AS(fig5_preset(0.0, 0.0, 0.1, -1.0), ValidationError);
    CHECK_THROWS_AS(fig5_preset(0.0, 0.0, -0.1, 1.0), ValidationError);
}

TEST_CASE("unphysical probes are rejected with messages")
{
    const auto sys = two_atom_to_system({1.0, 1.0, 1.0, 0.0, 0.0, 0.0}, 1e6,
                                        PhaseMode::FixedPhase,
                                        FrequencyUnits::DetuningFromReference);
    // Absolute energy would be negative.
    CHECK_THROWS_AS(solve({sys, 0, Direction::Rightward, -2e6}), ValidationError);
    CHECK_THROWS_AS(solve({sys, 7, Direction::Rightward, 0.0}), ValidationError);
}
