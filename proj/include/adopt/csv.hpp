#pragma once

#include <filesystem>
#include <iosfwd>

#include "adopt/backtest.hpp"
#include "adopt/core.hpp"

namespace adopt {

// Reads a "timestamp,price" CSV into a validated PriceSeries. Timestamps are
// ISO-8601 dates/datetimes or epoch seconds; spacing must be uniform. Time is
// annualized with one year = 365 days, so daily data gives dt = 1/365 and
// hourly data dt = 1/(365*24).
PriceSeries ingest_csv(const std::filesystem::path& path);

void write_backtest_csv(std::ostream& out, const BacktestTable& table);

}  // namespace adopt
