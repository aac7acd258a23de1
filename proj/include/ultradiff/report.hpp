#pragma once

#include <string>

#include "json.hpp"
#include "ultradiff/checks.hpp"
#include "ultradiff/regularity.hpp"

namespace ultradiff {

using Json = nlohmann::ordered_json;

std::string outcome_name(Outcome o);

Json to_json(const CheckReport& r);
Json to_json(const HolderReport& r);
Json to_json(const BoundednessTable& t);
Json to_json(const BlowupTable& t);
Json to_json(const CounterexampleReport& r);

// CSV: a header row, then one row per sample, pair, level or n.
std::string to_csv(const CheckReport& r);
std::string to_csv(const HolderReport& r);
std::string to_csv(const BoundednessTable& t);
std::string to_csv(const BlowupTable& t);
std::string to_csv(const CounterexampleReport& r);

std::string to_text(const CheckReport& r);
std::string to_text(const HolderReport& r);
std::string to_text(const BoundednessTable& t);
std::string to_text(const BlowupTable& t);
std::string to_text(const CounterexampleReport& r);

} // namespace ultradiff
