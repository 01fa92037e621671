#pragma once

#include <string>

#include "wgqed/model.hpp"
#include "wgqed/realspace.hpp"
#include "wgqed/sweep.hpp"

// String-based JSON bridge so the installed library carries no third-party
// headers. Malformed or invalid documents raise ValidationError.
namespace wgqed {

std::string system_to_json(const SystemSpec& sys, int indent = 2);
SystemSpec system_from_json(const std::string& text);

std::string solve_result_to_json(const SolveResult& result, int indent = 2);

std::string sweep_spec_to_json(const SweepSpec& spec, int indent = 2);
SweepSpec sweep_spec_from_json(const std::string& text);

}  // namespace wgqed
