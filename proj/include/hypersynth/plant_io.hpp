#pragma once

#include <json.hpp>
#include <string>

#include "hypersynth/plant.hpp"

namespace hypersynth {

Plant plant_from_json(const nlohmann::json& j);
nlohmann::json plant_to_json(const Plant& p);

Plant read_plant_file(const std::string& path);
void write_plant_file(const Plant& p, const std::string& path);

// FNV-1a over the canonical JSON dump, as 16 hex digits.
std::string plant_hash(const Plant& p);

std::string to_dot(const Plant& p);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace hypersynth
