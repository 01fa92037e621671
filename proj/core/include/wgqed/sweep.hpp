#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wgqed/model.hpp"

namespace wgqed {

enum class SweepEngine { ClosedForm, RealSpace };

enum class SweepAxis { Detuning, Theta, Phi, Kappa, Delta2, Delta3 };

struct AxisSpec {
    SweepAxis axis = SweepAxis::Detuning;
    double start = 0.0;
    double stop = 0.0;
    int count = 2;
};

struct SweepOutputs {
    bool t = true;
    bool r = true;
    bool t_f = true;
    bool t_b = true;
    bool loss = true;
    bool amplitudes = false;
    bool collective = false;  // ClosedForm engine only
};

// Base point for the three-qubit transfer scheme (RealSpace engine).
struct Fig5Base {
    double delta2 = 0.0;
    double delta3 = 0.0;
    double kappa = 0.0;
    double gamma = 1.0;
    double carrier = 0.0;  // 0 selects the preset default
    double detuning = 0.0;
};

struct SweepSpec {
    SweepEngine engine = SweepEngine::ClosedForm;
    TwoAtomParams base;             // ignored when fig5 is set
    std::optional<Fig5Base> fig5;   // requires RealSpace engine
    std::vector<AxisSpec> axes;     // 1 or 2, disjoint, count >= 2 each
    SweepOutputs outputs;
    // Recompute j = -gamma (sin theta + sin phi) at every grid point, keeping
    // the collective shifted levels degenerate as theta/phi vary.
    bool enforce_degeneracy = false;
    PhaseMode phase_mode = PhaseMode::FixedPhase;  // RealSpace two-atom runs
    double carrier = 0.0;  // RealSpace two-atom runs; 0 -> 1e6 * gamma
};

struct SweepRecord {
    std::vector<double> values;  // aligned with SweepTable::columns minus status
    std::string status;          // "ok" or an error marker
};

struct SweepTable {
    std::vector<std::string> columns;  // last column is "status"
    std::vector<SweepRecord> rows;
};

// Evaluates the grid row-major over the axes in declared order. Rows where
// the engine throws become error-marker rows (NaN values, status set) rather
// than aborting. Deterministic: same spec, same table.
SweepTable run_sweep(const SweepSpec& spec);

// Named figure presets: fig2, fig3a, fig3b, fig4a..fig4f, fig5b, fig5c,
// fig5d. Throws ValidationError for unknown names.
SweepSpec figure_preset(const std::string& name);

std::vector<std::string> figure_preset_names();

// 17-significant-digit CSV with an LF-terminated header row.
void write_csv(const SweepTable& table, std::ostream& out);

}  // namespace wgqed
