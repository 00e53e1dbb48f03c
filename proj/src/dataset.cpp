#include "tfc/dataset.hpp"

#include "tfc/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <vector>

namespace tfc::bench {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
        s = s.substr(1, s.size() - 2);
    }
    return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        fields.push_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return fields;
}

template <typename T>
bool parse_number(std::string_view text, T& out) {
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, out);
    return ec == std::errc() && ptr == end;
}

// Fixed-width unsigned field.
bool digits(std::string_view s, std::size_t pos, std::size_t len, int& out) {
    if (pos + len > s.size()) {
        return false;
    }
    out = 0;
    for (std::size_t i = pos; i < pos + len; ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
            return false;
        }
        out = out * 10 + (s[i] - '0');
    }
    return true;
}

constexpr std::int64_t kSecondsPerDay = 86400;

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) {
        --q;
    }
    return q;
}

} // namespace

std::string_view to_string(Aggregation aggregation) noexcept {
    switch (aggregation) {
    case Aggregation::none:
        return "none";
    case Aggregation::sum:
        return "sum";
    case Aggregation::mean:
        return "mean";
    }
    return "none";
}

std::optional<Aggregation> parse_aggregation(std::string_view name) noexcept {
    if (name == "none") {
        return Aggregation::none;
    }
    if (name == "sum") {
        return Aggregation::sum;
    }
    if (name == "mean") {
        return Aggregation::mean;
    }
    return std::nullopt;
}

std::optional<Timestamp> parse_timestamp(std::string_view text) noexcept {
    text = trim(text);
    if (text.empty()) {
        return std::nullopt;
    }
    if (Timestamp epoch = 0; parse_number(text, epoch)) {
        return epoch;
    }
    if (!text.empty() && text.back() == 'Z') {
        text.remove_suffix(1);
    }
    int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
    if (!digits(text, 0, 4, y) || text.size() < 10 || text[4] != '-' || !digits(text, 5, 2, mo) ||
        text[7] != '-' || !digits(text, 8, 2, d)) {
        return std::nullopt;
    }
    if (text.size() != 10) {
        if (text.size() != 19 || (text[10] != ' ' && text[10] != 'T') || !digits(text, 11, 2, h) ||
            text[13] != ':' || !digits(text, 14, 2, mi) || text[16] != ':' || !digits(text, 17, 2, s)) {
            return std::nullopt;
        }
    }
    using namespace std::chrono;
    const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok() || h > 23 || mi > 59 || s > 59) {
        return std::nullopt;
    }
    const auto days_since_epoch = sys_days{ymd}.time_since_epoch().count();
    return static_cast<Timestamp>(days_since_epoch) * kSecondsPerDay + h * 3600 + mi * 60 + s;
}

std::string format_timestamp(Timestamp t) {
    using namespace std::chrono;
    const std::int64_t day_index = floor_div(t, kSecondsPerDay);
    const std::int64_t sec = t - day_index * kSecondsPerDay;
    const year_month_day ymd{sys_days{days{day_index}}};
    char buf[64];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u %02lld:%02lld:%02lld", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                  static_cast<long long>(sec / 3600), static_cast<long long>((sec / 60) % 60),
                  static_cast<long long>(sec % 60));
    return buf;
}

Records read_records(std::istream& in, std::string_view timestamp_column,
                     std::string_view value_column) {
    std::string line;
    std::size_t line_no = 0;
    std::optional<std::size_t> ts_col;
    std::optional<std::size_t> val_col;
    std::size_t n_fields = 0;

    struct Row {
        Timestamp t;
        double v;
        std::size_t line;
    };
    std::vector<Row> rows;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (trim(line).empty()) {
            continue;
        }
        const auto fields = split_fields(line);
        if (!ts_col) {
            n_fields = fields.size();
            for (std::size_t i = 0; i < fields.size(); ++i) {
                if (fields[i] == timestamp_column) {
                    ts_col = i;
                }
                if (fields[i] == value_column) {
                    val_col = i;
                }
            }
            if (!ts_col || !val_col) {
                throw ParseError("header on line " + std::to_string(line_no) + " lacks column '" +
                                     std::string(ts_col ? value_column : timestamp_column) + "'",
                                 line_no);
            }
            continue;
        }
        if (fields.size() != n_fields) {
            throw ParseError("line " + std::to_string(line_no) + ": expected " +
                                 std::to_string(n_fields) + " fields, got " +
                                 std::to_string(fields.size()),
                             line_no);
        }
        const auto t = parse_timestamp(fields[*ts_col]);
        if (!t) {
            throw ParseError("line " + std::to_string(line_no) + ": bad timestamp '" +
                                 std::string(fields[*ts_col]) + "'",
                             line_no);
        }
        double v = 0.0;
        if (!parse_number(fields[*val_col], v) || !std::isfinite(v)) {
            throw ParseError("line " + std::to_string(line_no) + ": bad value '" +
                                 std::string(fields[*val_col]) + "'",
                             line_no);
        }
        rows.push_back({*t, v, line_no});
    }
    if (rows.empty()) {
        throw EmptyDatasetError(ts_col ? "dataset has a header but no records" : "dataset is empty");
    }
    std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.t < b.t; });
    Records out;
    out.timestamps.reserve(rows.size());
    out.values.reserve(rows.size());
    for (const auto& r : rows) {
        out.timestamps.push_back(r.t);
        out.values.push_back(r.v);
    }
    return out;
}

TimeSeries aggregate(const Records& records, Aggregation aggregation, std::int64_t window) {
    if (aggregation == Aggregation::none) {
        for (std::size_t i = 1; i < records.timestamps.size(); ++i) {
            if (records.timestamps[i] == records.timestamps[i - 1]) {
                throw ParseError("duplicate timestamp " + format_timestamp(records.timestamps[i]) +
                                     " without aggregation",
                                 0);
            }
        }
        return TimeSeries(records.timestamps, records.values);
    }
    if (window <= 0) {
        throw SpecError("aggregation window must be positive");
    }
    std::vector<Timestamp> ts;
    std::vector<double> vs;
    std::size_t count = 0;
    for (std::size_t i = 0; i < records.timestamps.size(); ++i) {
        const Timestamp bucket = floor_div(records.timestamps[i], window) * window;
        if (ts.empty() || ts.back() != bucket) {
            if (aggregation == Aggregation::mean && count > 0) {
                vs.back() /= static_cast<double>(count);
            }
            ts.push_back(bucket);
            vs.push_back(0.0);
            count = 0;
        }
        vs.back() += records.values[i];
        ++count;
    }
    if (aggregation == Aggregation::mean) {
        vs.back() /= static_cast<double>(count);
    }
    return TimeSeries(std::move(ts), std::move(vs), window);
}

void write_series_csv(std::ostream& out, const TimeSeries& series, std::string_view value_column) {
    out << "timestamp," << value_column << '\n';
    const auto ts = series.timestamps();
    const auto vs = series.values();
    char buf[40];
    for (std::size_t i = 0; i < series.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", vs[i]);
        out << format_timestamp(ts[i]) << ',' << buf << '\n';
    }
}

TimeSeries load_dataset(const DatasetSpec& spec) {
    TimeSeries raw = std::visit(
        [&](const auto& source) -> TimeSeries {
            using S = std::decay_t<decltype(source)>;
            if constexpr (std::is_same_v<S, SynthSpec>) {
                const TimeSeries s = synth(source);
                if (spec.aggregation == Aggregation::none) {
                    return s;
                }
                Records r{{s.timestamps().begin(), s.timestamps().end()},
                          {s.values().begin(), s.values().end()}};
                return aggregate(r, spec.aggregation, spec.window);
            } else {
                std::ifstream in(source);
                if (!in) {
                    throw Error("cannot open dataset file '" + source.string() + "'");
                }
                return aggregate(read_records(in, spec.timestamp_column, spec.value_column),
                                 spec.aggregation, spec.window);
            }
        },
        spec.source);
    const std::int64_t interval = spec.interval > 0 ? spec.interval : raw.interval();
    return regularize(raw, interval, GapPolicy::linear_interpolate);
}

std::size_t seasonal_period_of(const DatasetSpec& spec, const TimeSeries& series) {
    if (spec.seasonal_period > 0) {
        return spec.seasonal_period;
    }
    return static_cast<std::size_t>(kSecondsPerDay / series.interval());
}

} // namespace tfc::bench
