#include "tfc/report.hpp"

#include "tfc/error.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace tfc::bench {

using nlohmann::json;

namespace {

std::string fixed2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string pad(std::string s, std::size_t width) {
    if (s.size() < width) {
        s.insert(0, width - s.size(), ' ');
    }
    return s;
}

std::string pad_right(std::string s, std::size_t width) {
    if (s.size() < width) {
        s.append(width - s.size(), ' ');
    }
    return s;
}

constexpr std::size_t kModelWidth = 8;
constexpr std::size_t kCellWidth = 8;

using Pick = const std::optional<Outcome> ReportRow::*;

// One table: rows per model, column groups per holdout.
void render_table(std::ostringstream& out, const std::vector<const ReportRow*>& rows, Pick pick) {
    std::vector<std::size_t> holdouts;
    std::vector<std::string> models;
    for (const ReportRow* r : rows) {
        if (std::find(holdouts.begin(), holdouts.end(), r->holdout) == holdouts.end()) {
            holdouts.push_back(r->holdout);
        }
        if (std::find(models.begin(), models.end(), r->model) == models.end()) {
            models.push_back(r->model);
        }
    }
    auto find = [&](const std::string& model, std::size_t holdout) -> const Outcome* {
        for (const ReportRow* r : rows) {
            if (r->model == model && r->holdout == holdout && (r->*pick)) {
                return &*(r->*pick);
            }
        }
        return nullptr;
    };

    // Cells widen to fit the longest value (plus marker and a gap).
    std::size_t model_width = kModelWidth;
    std::size_t cell_width = kCellWidth;
    for (const ReportRow* r : rows) {
        model_width = std::max(model_width, r->model.size());
        if (const auto& o = r->*pick) {
            for (double v : {o->record.runtime_seconds, o->record.r2, o->record.lr2}) {
                cell_width = std::max(cell_width, fixed2(v).size() + 2);
            }
        }
    }

    std::string group_line = pad_right("", model_width);
    std::string header = pad_right("Model", model_width);
    for (std::size_t h : holdouts) {
        group_line += " | " + pad_right(std::to_string(h) + " datapoints", 3 * cell_width);
        header += " | " + pad("RT(s) ", cell_width) + pad("R^2 ", cell_width) + pad("lR^2 ", cell_width);
    }
    out << group_line << '\n' << header << '\n' << std::string(header.size(), '-') << '\n';

    // Best per column: lowest runtime, highest R^2 and lR^2.
    struct Best {
        double rt = 0, r2 = 0, lr2 = 0;
        bool any = false;
    };
    std::vector<Best> best(holdouts.size());
    for (std::size_t g = 0; g < holdouts.size(); ++g) {
        for (const auto& m : models) {
            if (const Outcome* o = find(m, holdouts[g])) {
                Best& b = best[g];
                if (!b.any) {
                    b = {o->record.runtime_seconds, o->record.r2, o->record.lr2, true};
                } else {
                    b.rt = std::min(b.rt, o->record.runtime_seconds);
                    b.r2 = std::max(b.r2, o->record.r2);
                    b.lr2 = std::max(b.lr2, o->record.lr2);
                }
            }
        }
    }
    auto cell = [&](double v, double best_value) {
        std::string s = fixed2(v);
        if (fixed2(best_value) == s) {
            s += '*';
        } else {
            s += ' ';
        }
        return pad(s, cell_width);
    };
    for (const auto& m : models) {
        std::string line = pad_right(m, model_width);
        for (std::size_t g = 0; g < holdouts.size(); ++g) {
            line += " | ";
            if (const Outcome* o = find(m, holdouts[g])) {
                line += cell(o->record.runtime_seconds, best[g].rt) + cell(o->record.r2, best[g].r2) +
                        cell(o->record.lr2, best[g].lr2);
            } else {
                line += pad("n/a ", cell_width) + pad("n/a ", cell_width) + pad("n/a ", cell_width);
            }
        }
        out << line << '\n';
    }
}

std::string render_aligned(const BenchmarkReport& report) {
    std::ostringstream out;
    if (report.rows.empty()) {
        out << pad_right("Model", kModelWidth) << " | " << pad("RT(s) ", kCellWidth)
            << pad("R^2 ", kCellWidth) << pad("lR^2 ", kCellWidth) << '\n';
        return out.str();
    }
    std::vector<std::string> datasets;
    for (const auto& r : report.rows) {
        if (std::find(datasets.begin(), datasets.end(), r.dataset) == datasets.end()) {
            datasets.push_back(r.dataset);
        }
    }
    bool first = true;
    for (const auto& name : datasets) {
        std::vector<const ReportRow*> rows;
        for (const auto& r : report.rows) {
            if (r.dataset == name) {
                rows.push_back(&r);
            }
        }
        if (!first) {
            out << '\n';
        }
        first = false;
        out << "== " << name << " : best achieved (selected on test lR^2) ==\n";
        render_table(out, rows, &ReportRow::best);
        out << "\n== " << name << " : validation-selected (last part of train) ==\n";
        render_table(out, rows, &ReportRow::validated);
        for (const ReportRow* r : rows) {
            if (!r->error.empty()) {
                out << "! " << r->model << " @ " << r->holdout << ": " << r->error << '\n';
            }
        }
    }
    return out.str();
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') {
            q += '"';
        }
        q += c;
    }
    return q + '"';
}

std::string number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string render_csv(const BenchmarkReport& report) {
    std::ostringstream out;
    out << "model,dataset,holdout,rt_s,r2,lr2,params,val_rt_s,val_r2,val_lr2,val_params,error\n";
    auto outcome = [](const std::optional<Outcome>& o) {
        if (!o) {
            return std::string(",,,");
        }
        return number(o->record.runtime_seconds) + ',' + number(o->record.r2) + ',' +
               number(o->record.lr2) + ',' + csv_field(o->params.dump());
    };
    for (const auto& r : report.rows) {
        out << csv_field(r.model) << ',' << csv_field(r.dataset) << ',' << r.holdout << ','
            << outcome(r.best) << ',' << outcome(r.validated) << ',' << csv_field(r.error) << '\n';
    }
    return out.str();
}

json outcome_json(const Outcome& o) {
    return {{"rt_s", o.record.runtime_seconds}, {"r2", o.record.r2}, {"lr2", o.record.lr2}, {"params", o.params}};
}

std::string render_json_lines(const BenchmarkReport& report) {
    std::ostringstream out;
    for (const auto& r : report.rows) {
        json j = {{"model", r.model}, {"dataset", r.dataset}, {"holdout", r.holdout}};
        if (r.best) {
            j.update(outcome_json(*r.best));
        } else {
            j["rt_s"] = nullptr;
            j["r2"] = nullptr;
            j["lr2"] = nullptr;
            j["params"] = nullptr;
        }
        j["validated"] = r.validated ? outcome_json(*r.validated) : json(nullptr);
        if (!r.error.empty()) {
            j["error"] = r.error;
        }
        out << j.dump() << '\n';
    }
    return out.str();
}

std::optional<Outcome> outcome_from(const json& j) {
    if (j.is_null() || (j.contains("lr2") && j.at("lr2").is_null())) {
        return std::nullopt;
    }
    return Outcome{{j.at("rt_s").get<double>(), j.at("r2").get<double>(), j.at("lr2").get<double>()},
                   j.at("params")};
}

} // namespace

std::optional<ReportFormat> parse_report_format(std::string_view name) noexcept {
    if (name == "table" || name == "aligned-table") {
        return ReportFormat::aligned_table;
    }
    if (name == "csv" || name == "comma-separated") {
        return ReportFormat::comma_separated;
    }
    if (name == "jsonl" || name == "json-lines") {
        return ReportFormat::json_lines;
    }
    return std::nullopt;
}

std::string render_report(const BenchmarkReport& report, ReportFormat format) {
    switch (format) {
    case ReportFormat::aligned_table:
        return render_aligned(report);
    case ReportFormat::comma_separated:
        return render_csv(report);
    case ReportFormat::json_lines:
        return render_json_lines(report);
    }
    return {};
}

BenchmarkReport parse_report_json_lines(std::string_view text) {
    BenchmarkReport report;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = std::min(text.find('\n', start), text.size());
        const std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string_view::npos) {
            continue;
        }
        try {
            const json j = json::parse(line);
            ReportRow row;
            row.model = j.at("model").get<std::string>();
            row.dataset = j.at("dataset").get<std::string>();
            row.holdout = j.at("holdout").get<std::size_t>();
            row.best = outcome_from(j);
            row.validated = outcome_from(j.value("validated", json(nullptr)));
            row.error = j.value("error", std::string());
            report.rows.push_back(std::move(row));
        } catch (const json::exception& e) {
            throw ParseError("report line " + std::to_string(line_no) + ": " + e.what(), line_no);
        }
    }
    return report;
}

} // namespace tfc::bench
