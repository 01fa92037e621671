#include "wgqed/model.hpp"

#include <cmath>
#include <set>
#include <sstream>
#include <utility>

namespace wgqed {

std::vector<std::string> validation_problems(const SystemSpec& spec)
{
    std::vector<std::string> problems;
    auto complain = [&problems](const std::string& msg) { problems.push_back(msg); };

    std::set<int> waveguide_ids;
    for (std::size_t i = 0; i < spec.waveguides.size(); ++i) {
        const auto& w = spec.waveguides[i];
        if (!(w.group_velocity > 0)) {
            complain("waveguide " + std::to_string(w.id) +
                     ": group_velocity must be positive, got " +
                     std::to_string(w.group_velocity));
        }
        if (!waveguide_ids.insert(w.id).second) {
            complain("duplicate waveguide id " + std::to_string(w.id));
        }
    }
    for (std::size_t i = 0; i < spec.waveguides.size(); ++i) {
        if (!waveguide_ids.count(static_cast<int>(i))) {
            complain("waveguide ids must be contiguous from 0; missing id " +
                     std::to_string(i));
            break;
        }
    }

    std::set<int> emitter_ids;
    for (const auto& e : spec.emitters) {
        if (e.dissipation < 0) {
            complain("emitter " + std::to_string(e.id) +
                     ": dissipation must be >= 0, got " + std::to_string(e.dissipation));
        }
        if (!emitter_ids.insert(e.id).second) {
            complain("duplicate emitter id " + std::to_string(e.id));
        }
    }
    for (std::size_t i = 0; i < spec.emitters.size(); ++i) {
        if (!emitter_ids.count(static_cast<int>(i))) {
            complain("emitter ids must be contiguous from 0; missing id " +
                     std::to_string(i));
            break;
        }
    }

    for (std::size_t i = 0; i < spec.couplings.size(); ++i) {
        const auto& c = spec.couplings[i];
        if (!emitter_ids.count(c.emitter_id)) {
            complain("coupling " + std::to_string(i) + ": dangling emitter id " +
                     std::to_string(c.emitter_id));
        }
        if (!waveguide_ids.count(c.waveguide_id)) {
            complain("coupling " + std::to_string(i) + ": dangling waveguide id " +
                     std::to_string(c.waveguide_id));
        }
        if (c.strength < 0) {
            complain("coupling " + std::to_string(i) +
                     ": strength must be >= 0, got " + std::to_string(c.strength));
        }
    }

    std::set<std::pair<int, int>> pairs;
    for (std::size_t i = 0; i < spec.direct.size(); ++i) {
        const auto& d = spec.direct[i];
        if (d.emitter_a == d.emitter_b) {
            complain("direct coupling " + std::to_string(i) +
                     ": emitter coupled to itself (id " + std::to_string(d.emitter_a) + ")");
        }
        if (!emitter_ids.count(d.emitter_a)) {
            complain("direct coupling " + std::to_string(i) + ": dangling emitter id " +
                     std::to_string(d.emitter_a));
        }
        if (!emitter_ids.count(d.emitter_b)) {
            complain("direct coupling " + std::to_string(i) + ": dangling emitter id " +
                     std::to_string(d.emitter_b));
        }
        auto key = std::minmax(d.emitter_a, d.emitter_b);
        if (!pairs.insert(key).second) {
            complain("duplicate direct-coupling pair (" + std::to_string(key.first) +
                     ", " + std::to_string(key.second) + ")");
        }
    }

    const bool needs_reference =
        spec.phase_mode == PhaseMode::Dispersive ||
        spec.frequency_units == FrequencyUnits::DetuningFromReference;
    if (needs_reference && !(spec.reference_frequency > 0)) {
        complain("reference_frequency must be positive, got " +
                 std::to_string(spec.reference_frequency));
    }
    return problems;
}

std::string ValidationError::compose(const std::vector<std::string>& problems)
{
    std::ostringstream msg;
    msg << "invalid system (" << problems.size() << " problem"
        << (problems.size() == 1 ? "" : "s") << "):";
    for (const auto& p : problems) {
        msg << "\n  - " << p;
    }
    return msg.str();
}

SystemSpec validate_system(SystemSpec spec)
{
    auto problems = validation_problems(spec);
    if (!problems.empty()) throw ValidationError(std::move(problems));
    return spec;
}

SystemSpec two_atom_to_system(const TwoAtomParams& p, double carrier,
                              PhaseMode mode, FrequencyUnits units,
                              double group_velocity)
{
    if (!(carrier > 0)) {
        throw ValidationError("carrier must be positive, got " + std::to_string(carrier));
    }
    if (!(p.gamma > 0)) {
        throw ValidationError("gamma must be positive, got " + std::to_string(p.gamma));
    }
    if (p.kappa < 0) {
        throw ValidationError("kappa must be >= 0, got " + std::to_string(p.kappa));
    }
    const double vg = group_velocity;
    const double x1 = p.theta * vg / carrier;
    const double x2 = p.phi * vg / carrier;
    const double strength = std::sqrt(p.gamma * vg);
    const double freq = units == FrequencyUnits::Absolute ? carrier : 0.0;

    SystemSpec spec;
    spec.waveguides = {{0, vg}, {1, vg}};
    spec.emitters = {{0, freq, p.kappa}, {1, freq, p.kappa}};
    spec.couplings = {
        {0, 0, 0.0, strength},
        {0, 1, 0.0, strength},
        {1, 0, x1, strength},
        {1, 1, x2, strength},
    };
    spec.direct = {{0, 1, p.j}};
    spec.phase_mode = mode;
    spec.frequency_units = units;
    spec.reference_frequency = carrier;
    return validate_system(std::move(spec));
}

ScatteringProbabilities probabilities(const ScatteringAmplitudes& a)
{
    ScatteringProbabilities p;
    p.t = std::norm(a.t_r1);
    p.r = std::norm(a.r_l1);
    p.t_f = std::norm(a.t_r2);
    p.t_b = std::norm(a.r_l2);
    p.loss = 1.0 - p.t - p.r - p.t_f - p.t_b;
    return p;
}

}  // namespace wgqed
