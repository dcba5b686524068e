#pragma once

#include <string>

#include "json.hpp"
#include "mosp/model.hpp"

namespace mosp {

inline constexpr int kSchemaVersion = 1;

nlohmann::json instance_to_json(const Instance& instance);
Instance instance_from_json(const nlohmann::json& j);

nlohmann::json schedule_to_json(const Schedule& schedule);
Schedule schedule_from_json(const nlohmann::json& j);

void save_instance(const std::string& path, const Instance& instance);
Instance load_instance(const std::string& path);

void save_schedule(const std::string& path, const Schedule& schedule);
Schedule load_schedule(const std::string& path);

}  // namespace mosp
