#pragma once

#include <string>

#include "uwr/core.hpp"

namespace uwr {

// Scenario document: top-level sections `nodes`, `links`, `channel`,
// `energy`, `run`. Unknown keys are rejected; doubles round-trip bit-exactly.
std::string scenario_to_json(const Scenario& s);
Scenario scenario_from_json(const std::string& text);

void write_scenario_file(const Scenario& s, const std::string& path);
Scenario read_scenario_file(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

} // namespace uwr
