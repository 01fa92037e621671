#include "wgqed/json_io.hpp"

#include <json.hpp>

namespace wgqed {

namespace {

using nlohmann::json;

json complex_to_json(complex z)
{
    return json::array({z.real(), z.imag()});
}

std::string phase_mode_name(PhaseMode m)
{
    return m == PhaseMode::Dispersive ? "dispersive" : "fixed_phase";
}

PhaseMode phase_mode_from(const std::string& s)
{
    if (s == "fixed_phase") return PhaseMode::FixedPhase;
    if (s == "dispersive") return PhaseMode::Dispersive;
    throw ValidationError("unknown phase_mode: " + s);
}

std::string units_name(FrequencyUnits u)
{
    return u == FrequencyUnits::DetuningFromReference ? "detuning_from_reference" : "absolute";
}

FrequencyUnits units_from(const std::string& s)
{
    if (s == "absolute") return FrequencyUnits::Absolute;
    if (s == "detuning_from_reference") return FrequencyUnits::DetuningFromReference;
    throw ValidationError("unknown frequency_units: " + s);
}

std::string engine_name(SweepEngine e)
{
    return e == SweepEngine::RealSpace ? "real_space" : "closed_form";
}

SweepEngine engine_from(const std::string& s)
{
    if (s == "closed_form") return SweepEngine::ClosedForm;
    if (s == "real_space") return SweepEngine::RealSpace;
    throw ValidationError("unknown engine: " + s);
}

std::string axis_name(SweepAxis a)
{
    switch (a) {
        case SweepAxis::Detuning: return "detuning";
        case SweepAxis::Theta: return "theta";
        case SweepAxis::Phi: return "phi";
        case SweepAxis::Kappa: return "kappa";
        case SweepAxis::Delta2: return "delta2";
        case SweepAxis::Delta3: return "delta3";
    }
    return "detuning";
}

SweepAxis axis_from(const std::string& s)
{
    if (s == "detuning") return SweepAxis::Detuning;
    if (s == "theta") return SweepAxis::Theta;
    if (s == "phi") return SweepAxis::Phi;
    if (s == "kappa") return SweepAxis::Kappa;
    if (s == "delta2") return SweepAxis::Delta2;
    if (s == "delta3") return SweepAxis::Delta3;
    throw ValidationError("unknown sweep axis: " + s);
}

json parse(const std::string& text)
{
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) throw ValidationError("malformed JSON document");
    return doc;
}

// Wraps nlohmann type errors (wrong type, missing key) as ValidationError.
template <typename F>
auto reading(const char* what, F&& f) -> decltype(f())
{
    try {
        return f();
    } catch (const json::exception& e) {
        throw ValidationError(std::string("bad ") + what + ": " + e.what());
    }
}

}  // namespace

std::string system_to_json(const SystemSpec& sys, int indent)
{
    json doc;
    doc["waveguides"] = json::array();
    for (const auto& w : sys.waveguides)
        doc["waveguides"].push_back({{"id", w.id}, {"group_velocity", w.group_velocity}});
    doc["emitters"] = json::array();
    for (const auto& e : sys.emitters)
        doc["emitters"].push_back(
            {{"id", e.id}, {"frequency", e.frequency}, {"dissipation", e.dissipation}});
    doc["couplings"] = json::array();
    for (const auto& c : sys.couplings)
        doc["couplings"].push_back({{"emitter_id", c.emitter_id},
                                    {"waveguide_id", c.waveguide_id},
                                    {"position", c.position},
                                    {"strength", c.strength}});
    doc["direct"] = json::array();
    for (const auto& d : sys.direct)
        doc["direct"].push_back(
            {{"emitter_a", d.emitter_a}, {"emitter_b", d.emitter_b}, {"strength", d.strength}});
    doc["phase_mode"] = phase_mode_name(sys.phase_mode);
    doc["frequency_units"] = units_name(sys.frequency_units);
    doc["reference_frequency"] = sys.reference_frequency;
    return doc.dump(indent);
}

SystemSpec system_from_json(const std::string& text)
{
    const json doc = parse(text);
    return reading("SystemSpec", [&] {
        SystemSpec sys;
        for (const auto& w : doc.value("waveguides", json::array()))
            sys.waveguides.push_back(
                {w.at("id").get<int>(), w.value("group_velocity", 1.0)});
        for (const auto& e : doc.value("emitters", json::array()))
            sys.emitters.push_back({e.at("id").get<int>(), e.at("frequency").get<double>(),
                                    e.value("dissipation", 0.0)});
        for (const auto& c : doc.value("couplings", json::array()))
            sys.couplings.push_back({c.at("emitter_id").get<int>(),
                                     c.at("waveguide_id").get<int>(),
                                     c.at("position").get<double>(),
                                     c.at("strength").get<double>()});
        for (const auto& d : doc.value("direct", json::array()))
            sys.direct.push_back({d.at("emitter_a").get<int>(), d.at("emitter_b").get<int>(),
                                  d.at("strength").get<double>()});
        sys.phase_mode = phase_mode_from(doc.value("phase_mode", "fixed_phase"));
        sys.frequency_units = units_from(doc.value("frequency_units", "absolute"));
        sys.reference_frequency = doc.value("reference_frequency", 0.0);
        return sys;
    });
}

std::string solve_result_to_json(const SolveResult& result, int indent)
{
    json doc;
    doc["outgoing_rightward"] = json::array();
    for (complex z : result.outgoing_rightward)
        doc["outgoing_rightward"].push_back(complex_to_json(z));
    doc["outgoing_leftward"] = json::array();
    for (complex z : result.outgoing_leftward)
        doc["outgoing_leftward"].push_back(complex_to_json(z));
    doc["emitter_amplitudes"] = json::array();
    for (complex z : result.emitter_amplitudes)
        doc["emitter_amplitudes"].push_back(complex_to_json(z));
    doc["segments"] = json::array();
    for (const auto& field : result.segment_amplitudes) {
        json wf;
        wf["junction_positions"] = field.junction_positions;
        wf["right"] = json::array();
        wf["left"] = json::array();
        for (const auto& s : field.segments) {
            wf["right"].push_back(complex_to_json(s.right));
            wf["left"].push_back(complex_to_json(s.left));
        }
        doc["segments"].push_back(std::move(wf));
    }
    return doc.dump(indent);
}

std::string sweep_spec_to_json(const SweepSpec& spec, int indent)
{
    json doc;
    doc["engine"] = engine_name(spec.engine);
    doc["base"] = {{"theta", spec.base.theta},   {"phi", spec.base.phi},
                   {"gamma", spec.base.gamma},   {"j", spec.base.j},
                   {"kappa", spec.base.kappa},   {"detuning", spec.base.detuning}};
    if (spec.fig5)
        doc["fig5"] = {{"delta2", spec.fig5->delta2},   {"delta3", spec.fig5->delta3},
                       {"kappa", spec.fig5->kappa},     {"gamma", spec.fig5->gamma},
                       {"carrier", spec.fig5->carrier}, {"detuning", spec.fig5->detuning}};
    doc["axes"] = json::array();
    for (const auto& axis : spec.axes)
        doc["axes"].push_back({{"axis", axis_name(axis.axis)},
                               {"start", axis.start},
                               {"stop", axis.stop},
                               {"count", axis.count}});
    doc["outputs"] = {{"t", spec.outputs.t},
                      {"r", spec.outputs.r},
                      {"t_f", spec.outputs.t_f},
                      {"t_b", spec.outputs.t_b},
                      {"loss", spec.outputs.loss},
                      {"amplitudes", spec.outputs.amplitudes},
                      {"collective", spec.outputs.collective}};
    doc["enforce_degeneracy"] = spec.enforce_degeneracy;
    doc["phase_mode"] = phase_mode_name(spec.phase_mode);
    doc["carrier"] = spec.carrier;
    return doc.dump(indent);
}

SweepSpec sweep_spec_from_json(const std::string& text)
{
    const json doc = parse(text);
    return reading("SweepSpec", [&] {
        SweepSpec spec;
        spec.engine = engine_from(doc.value("engine", "closed_form"));
        if (doc.contains("base")) {
            const json& b = doc["base"];
            spec.base.theta = b.value("theta", 0.0);
            spec.base.phi = b.value("phi", 0.0);
            spec.base.gamma = b.value("gamma", 1.0);
            spec.base.j = b.value("j", 0.0);
            spec.base.kappa = b.value("kappa", 0.0);
            spec.base.detuning = b.value("detuning", 0.0);
        }
        if (doc.contains("fig5")) {
            const json& f = doc["fig5"];
            Fig5Base fig5;
            fig5.delta2 = f.value("delta2", 0.0);
            fig5.delta3 = f.value("delta3", 0.0);
            fig5.kappa = f.value("kappa", 0.0);
            fig5.gamma = f.value("gamma", 1.0);
            fig5.carrier = f.value("carrier", 0.0);
            fig5.detuning = f.value("detuning", 0.0);
            spec.fig5 = fig5;
        }
        for (const auto& a : doc.value("axes", json::array()))
            spec.axes.push_back({axis_from(a.at("axis").get<std::string>()),
                                 a.at("start").get<double>(), a.at("stop").get<double>(),
                                 a.at("count").get<int>()});
        if (doc.contains("outputs")) {
            const json& o = doc["outputs"];
            spec.outputs.t = o.value("t", true);
            spec.outputs.r = o.value("r", true);
            spec.outputs.t_f = o.value("t_f", true);
            spec.outputs.t_b = o.value("t_b", true);
            spec.outputs.loss = o.value("loss", true);
            spec.outputs.amplitudes = o.value("amplitudes", false);
            spec.outputs.collective = o.value("collective", false);
        }
        spec.enforce_degeneracy = doc.value("enforce_degeneracy", false);
        spec.phase_mode = phase_mode_from(doc.value("phase_mode", "fixed_phase"));
        spec.carrier = doc.value("carrier", 0.0);
        return spec;
    });
}

}  // namespace wgqed
