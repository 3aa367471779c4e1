#pragma once

#include "lk/homology.hpp"
#include "lk/verify.hpp"

#include <json.hpp>

#include <string>

namespace lk {

nlohmann::json to_json(const SuiteReport& report);
std::string to_text(const SuiteReport& report);

nlohmann::json to_json(const HomologyTable& table);
std::string to_text(const HomologyTable& table);

nlohmann::json to_json(const FiltrationTable& table);
std::string to_text(const FiltrationTable& table);

}  // namespace lk
