#include "adopt/csv.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>

namespace adopt {

namespace {

constexpr double kSecondsPerYear = 365.0 * 24.0 * 3600.0;

[[noreturn]] void parse_fail(const std::filesystem::path& path, long line, const std::string& what) {
    throw DataError(path.string() + ":" + std::to_string(line) + ": " + what);
}

// Days since the Unix epoch for a civil date (Howard Hinnant's algorithm).
long long days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const long long era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u +
                         static_cast<unsigned>(d) - 1u;
    const unsigned doe = yoe * 365u + yoe / 4u - yoe / 100u + doy;
    return era * 146097LL + static_cast<long long>(doe) - 719468LL;
}

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (std::isdigit(static_cast<unsigned char>(c)) == 0) return false;
    return true;
}

// Accepts epoch seconds, "YYYY-MM-DD" or "YYYY-MM-DD[T ]HH:MM:SS[Z]"; returns
// seconds since the epoch.
double parse_timestamp(const std::filesystem::path& path, long line, std::string text) {
    if (!text.empty() && text.back() == 'Z') text.pop_back();
    if (all_digits(text) || (!text.empty() && text[0] == '-' && all_digits(text.substr(1))))
        return std::stod(text);

    int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
    const int date_only = std::sscanf(text.c_str(), "%d-%d-%d", &y, &mo, &d);
    if (date_only != 3) parse_fail(path, line, "unparseable timestamp \"" + text + "\"");
    if (text.size() > 10) {
        const char sep = text[10];
        if ((sep != 'T' && sep != ' ') ||
            std::sscanf(text.c_str() + 11, "%d:%d:%d", &h, &mi, &s) != 3)
            parse_fail(path, line, "unparseable timestamp \"" + text + "\"");
    }
    if (mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || mi > 59 || s > 60)
        parse_fail(path, line, "timestamp field out of range in \"" + text + "\"");
    return static_cast<double>(days_from_civil(y, mo, d)) * 86400.0 +
           static_cast<double>(h * 3600 + mi * 60 + s);
}

}  // namespace

PriceSeries ingest_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());

    std::string line;
    long line_no = 0;
    if (!std::getline(in, line)) throw DataError(path.string() + ": empty file");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "timestamp,price")
        parse_fail(path, line_no, "expected header \"timestamp,price\", got \"" + line + "\"");

    std::vector<double> seconds;
    std::vector<double> prices;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos) parse_fail(path, line_no, "missing comma");
        const std::string ts = line.substr(0, comma);
        const std::string price_text = line.substr(comma + 1);

        double price = 0.0;
        const auto* begin = price_text.data();
        const auto* end = begin + price_text.size();
        const auto [ptr, ec] = std::from_chars(begin, end, price);
        if (ec != std::errc() || ptr != end)
            parse_fail(path, line_no, "unparseable price \"" + price_text + "\"");
        if (!(price > 0.0))
            parse_fail(path, line_no, "nonpositive price " + price_text);

        seconds.push_back(parse_timestamp(path, line_no, ts));
        prices.push_back(price);
    }
    if (seconds.size() < 2)
        throw DataError(path.string() + ": need at least 2 data rows");

    const double first_gap = seconds[1] - seconds[0];
    if (!(first_gap > 0.0))
        throw DataError(path.string() + ":3: timestamps must be strictly increasing");
    for (std::size_t i = 1; i < seconds.size(); ++i) {
        const double gap = seconds[i] - seconds[i - 1];
        if (std::abs(gap - first_gap) > 1e-9 * std::max(first_gap, 1.0)) {
            char buf[160];
            std::snprintf(buf, sizeof(buf),
                          "non-uniform spacing: gap of %g s before data row %zu (expected %g s)",
                          gap, i + 1, first_gap);
            throw DataError(path.string() + ": " + buf);
        }
    }

    std::vector<double> years(seconds.size());
    for (std::size_t i = 0; i < seconds.size(); ++i) years[i] = seconds[i] / kSecondsPerYear;
    return make_price_series(std::move(years), std::move(prices));
}

void write_backtest_csv(std::ostream& out, const BacktestTable& table) {
    out << "slot,regime,moneyness,method,exercised,pi0,revenue_change\n";
    char buf[96];
    for (const BacktestRow& row : table.rows) {
        std::snprintf(buf, sizeof(buf), ",%d,%.17g,%.17g\n", row.exercised ? 1 : 0, row.pi0,
                      row.revenue_change);
        out << row.slot << ',' << regime_name(row.regime) << ',' << moneyness_name(row.moneyness)
            << ',' << method_name(row.method) << buf;
    }
}

}  // namespace adopt
