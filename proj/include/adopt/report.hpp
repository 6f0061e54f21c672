#pragma once

#include "json.hpp"

#include "adopt/backtest.hpp"
#include "adopt/calibrate.hpp"
#include "adopt/pricing.hpp"
#include "adopt/stats.hpp"

// JSON report building. Reports use insertion-ordered keys and contain no
// timestamps, so a seeded run serializes to identical bytes every time.

namespace adopt {

using Json = nlohmann::ordered_json;

Json to_json(const PricingResult& result);
Json to_json(const SensitivityEntry& entry);
Json to_json(const StylizedFactsReport& report);
Json to_json(const CalibrationReport& report);
Json to_json(const BacktestTable& table);
Json to_json(const JumpDiffusionParams& params);
Json to_json(const OptionSpec& spec);

}  // namespace adopt
