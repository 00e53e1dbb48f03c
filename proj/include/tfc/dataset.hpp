#pragma once

#include "tfc/series.hpp"
#include "tfc/synth.hpp"

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace tfc::bench {

enum class Aggregation { none, sum, mean };

std::string_view to_string(Aggregation aggregation) noexcept;
std::optional<Aggregation> parse_aggregation(std::string_view name) noexcept;

struct DatasetSpec {
    std::string name;
    std::variant<std::filesystem::path, SynthSpec> source;
    std::string timestamp_column = "timestamp";
    std::string value_column = "value";
    /// Target sampling interval in seconds; 0 keeps the source's own.
    std::int64_t interval = 0;
    Aggregation aggregation = Aggregation::none;
    /// Aggregation bucket width in seconds, buckets aligned to the epoch.
    std::int64_t window = 0;
    /// Samples per seasonal cycle for Holt-Winters; 0 means one day.
    std::size_t seasonal_period = 0;
    /// Requested holdout -> holdout actually used.
    std::map<std::size_t, std::size_t> holdout_overrides;
};

/// Parses "YYYY-MM-DD HH:MM:SS" (UTC; 'T' separator, trailing 'Z' and a
/// bare date are accepted) or integer epoch seconds.
std::optional<Timestamp> parse_timestamp(std::string_view text) noexcept;

/// "YYYY-MM-DD HH:MM:SS" in UTC.
std::string format_timestamp(Timestamp t);

/// Raw records of a comma-separated file with a header row, sorted by time.
struct Records {
    std::vector<Timestamp> timestamps;
    std::vector<double> values;
};

/// Throws ParseError (with the 1-based line) on malformed records or a
/// missing column, EmptyDatasetError when there are no data rows.
Records read_records(std::istream& in, std::string_view timestamp_column = "timestamp",
                     std::string_view value_column = "value");

/// Sums or averages records into epoch-aligned buckets of `window` seconds,
/// each stamped with its bucket start.
TimeSeries aggregate(const Records& records, Aggregation aggregation, std::int64_t window);

/// Writes a header row and one `timestamp,value` record per point; values
/// are printed with enough digits to round-trip exactly.
void write_series_csv(std::ostream& out, const TimeSeries& series,
                      std::string_view value_column = "value");

/// Reads, aggregates and regularizes (linear interpolation) a dataset.
TimeSeries load_dataset(const DatasetSpec& spec);

/// Samples per day at the series' interval, or the spec's explicit period.
std::size_t seasonal_period_of(const DatasetSpec& spec, const TimeSeries& series);

} // namespace tfc::bench
