#include "gdei/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <json.hpp>

namespace gdei {

namespace {

constexpr const char* kTraceHeader = "iteration,loss,learning_rate,p_k,delta_k,efficiency";

// A fixed qualitative palette; series cycle through it in label order.
constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt_coord(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string fmt_tick(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string xml_escape(const std::string& text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Series {
    std::vector<double> x;
    std::vector<double> y;
    std::string color;
    std::string label;
};

struct PanelSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    double x_lo = 0.0, x_hi = 1.0;
    double y_lo = 0.0, y_hi = 1.0;
    bool y_ticks_are_log10 = false;  // tick labels show 10^value
    std::vector<Series> series;
    std::vector<std::string> legend;  // one entry per series when non-empty
};

constexpr double kPanelW = 480.0;
constexpr double kPanelH = 320.0;
constexpr double kMarginL = 70.0;
constexpr double kMarginR = 18.0;
constexpr double kMarginT = 40.0;
constexpr double kMarginB = 48.0;

void render_panel(std::string& out, const PanelSpec& panel, double ox) {
    const double plot_x = ox + kMarginL;
    const double plot_y = kMarginT;
    const double plot_w = kPanelW - kMarginL - kMarginR;
    const double plot_h = kPanelH - kMarginT - kMarginB;

    auto map_x = [&](double v) {
        if (panel.x_hi == panel.x_lo) return plot_x + plot_w / 2.0;
        return plot_x + (v - panel.x_lo) / (panel.x_hi - panel.x_lo) * plot_w;
    };
    auto map_y = [&](double v) {
        if (panel.y_hi == panel.y_lo) return plot_y + plot_h / 2.0;
        return plot_y + plot_h - (v - panel.y_lo) / (panel.y_hi - panel.y_lo) * plot_h;
    };

    out += "<rect x=\"" + fmt_coord(plot_x) + "\" y=\"" + fmt_coord(plot_y) + "\" width=\"" +
           fmt_coord(plot_w) + "\" height=\"" + fmt_coord(plot_h) +
           "\" fill=\"none\" stroke=\"#444444\"/>\n";
    out += "<text x=\"" + fmt_coord(ox + kPanelW / 2.0) +
           "\" y=\"22.00\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"13\">" +
           xml_escape(panel.title) + "</text>\n";

    for (int i = 0; i < 5; ++i) {
        const double frac = static_cast<double>(i) / 4.0;
        const double xv = panel.x_lo + frac * (panel.x_hi - panel.x_lo);
        const double yv = panel.y_lo + frac * (panel.y_hi - panel.y_lo);
        const double xp = map_x(xv);
        const double yp = map_y(yv);
        out += "<line x1=\"" + fmt_coord(xp) + "\" y1=\"" + fmt_coord(plot_y + plot_h) +
               "\" x2=\"" + fmt_coord(xp) + "\" y2=\"" + fmt_coord(plot_y + plot_h + 4.0) +
               "\" stroke=\"#444444\"/>\n";
        out += "<text x=\"" + fmt_coord(xp) + "\" y=\"" + fmt_coord(plot_y + plot_h + 18.0) +
               "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"11\">" +
               fmt_tick(xv) + "</text>\n";
        out += "<line x1=\"" + fmt_coord(plot_x - 4.0) + "\" y1=\"" + fmt_coord(yp) + "\" x2=\"" +
               fmt_coord(plot_x) + "\" y2=\"" + fmt_coord(yp) + "\" stroke=\"#444444\"/>\n";
        const double tick_value = panel.y_ticks_are_log10 ? std::pow(10.0, yv) : yv;
        out += "<text x=\"" + fmt_coord(plot_x - 7.0) + "\" y=\"" + fmt_coord(yp + 4.0) +
               "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"11\">" +
               fmt_tick(tick_value) + "</text>\n";
    }

    out += "<text x=\"" + fmt_coord(plot_x + plot_w / 2.0) + "\" y=\"" +
           fmt_coord(kPanelH - 10.0) +
           "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"12\">" +
           xml_escape(panel.x_label) + "</text>\n";
    out += "<text transform=\"rotate(-90 " + fmt_coord(ox + 18.0) + " " +
           fmt_coord(plot_y + plot_h / 2.0) + ")\" x=\"" + fmt_coord(ox + 18.0) + "\" y=\"" +
           fmt_coord(plot_y + plot_h / 2.0) +
           "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"12\">" +
           xml_escape(panel.y_label) + "</text>\n";

    for (const Series& s : panel.series) {
        out += "<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"1.2\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (i != 0) out += ' ';
            out += fmt_coord(map_x(s.x[i]));
            out += ',';
            out += fmt_coord(map_y(s.y[i]));
        }
        out += "\"/>\n";
    }

    for (std::size_t i = 0; i < panel.legend.size(); ++i) {
        const double ly = plot_y + 14.0 + 16.0 * static_cast<double>(i);
        out += "<line x1=\"" + fmt_coord(plot_x + plot_w - 150.0) + "\" y1=\"" +
               fmt_coord(ly - 4.0) + "\" x2=\"" + fmt_coord(plot_x + plot_w - 132.0) +
               "\" y2=\"" + fmt_coord(ly - 4.0) + "\" stroke=\"" + panel.series[i].color +
               "\" stroke-width=\"2\"/>\n";
        out += "<text x=\"" + fmt_coord(plot_x + plot_w - 127.0) + "\" y=\"" + fmt_coord(ly) +
               "\" font-family=\"monospace\" font-size=\"11\">" + xml_escape(panel.legend[i]) +
               "</text>\n";
    }
}

std::string render_svg(const std::vector<PanelSpec>& panels) {
    const double width = kPanelW * static_cast<double>(panels.size());
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt_coord(width) +
           "\" height=\"" + fmt_coord(kPanelH) + "\" viewBox=\"0 0 " + fmt_coord(width) + " " +
           fmt_coord(kPanelH) + "\">\n";
    out += "<rect width=\"" + fmt_coord(width) + "\" height=\"" + fmt_coord(kPanelH) +
           "\" fill=\"#ffffff\"/>\n";
    for (std::size_t i = 0; i < panels.size(); ++i) {
        render_panel(out, panels[i], kPanelW * static_cast<double>(i));
    }
    out += "</svg>\n";
    return out;
}

// Pad a degenerate value range so flat curves still render mid-panel.
void pad_range(double& lo, double& hi) {
    if (lo == hi) {
        const double pad = std::max(std::abs(lo) * 0.1, 1e-9);
        lo -= pad;
        hi += pad;
    }
}

double parse_double_field(const std::string& field, std::size_t line_no) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size() || !std::isfinite(value)) {
        throw std::runtime_error("trace CSV line " + std::to_string(line_no) +
                                 ": bad numeric field \"" + field + "\"");
    }
    return value;
}

std::uint64_t parse_index_field(const std::string& field, std::size_t line_no) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        throw std::runtime_error("trace CSV line " + std::to_string(line_no) +
                                 ": bad iteration index \"" + field + "\"");
    }
    return value;
}

}  // namespace

std::string format_double(double value) {
    char buf[48];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

std::string trace_to_csv(const RunTrace& trace) {
    std::string out = kTraceHeader;
    out += '\n';
    for (const IterationRecord& record : trace.records) {
        out += std::to_string(record.k);
        out += ',';
        out += format_double(record.loss);
        out += ',';
        out += format_double(record.learning_rate_used);
        out += ',';
        if (record.efficiency) {
            out += format_double(record.efficiency->p_k);
            out += ',';
            out += format_double(record.efficiency->delta_k);
            out += ',';
            out += format_double(record.efficiency->e_k);
        } else {
            out += ",,";
        }
        out += '\n';
    }
    return out;
}

RunTrace trace_from_csv(const std::string& text) {
    std::vector<std::string> lines;
    std::string line;
    for (char c : text) {
        if (c == '\n') {
            lines.push_back(std::move(line));
            line.clear();
        } else if (c != '\r') {
            line.push_back(c);
        }
    }
    if (!line.empty()) lines.push_back(std::move(line));

    if (lines.empty() || lines[0] != kTraceHeader) {
        throw std::runtime_error("trace CSV line 1: expected header \"" +
                                 std::string(kTraceHeader) + "\"");
    }

    RunTrace trace;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        if (lines[i].empty()) {
            throw std::runtime_error("trace CSV line " + std::to_string(line_no) + ": empty line");
        }
        std::vector<std::string> fields;
        std::string field;
        for (char c : lines[i]) {
            if (c == ',') {
                fields.push_back(std::move(field));
                field.clear();
            } else {
                field.push_back(c);
            }
        }
        fields.push_back(std::move(field));
        if (fields.size() != 6) {
            throw std::runtime_error("trace CSV line " + std::to_string(line_no) + ": expected 6 fields, got " +
                                     std::to_string(fields.size()));
        }

        IterationRecord record;
        record.k = parse_index_field(fields[0], line_no);
        if (record.k != i) {
            throw std::runtime_error("trace CSV line " + std::to_string(line_no) +
                                     ": iterations must be consecutive from 1");
        }
        record.loss = parse_double_field(fields[1], line_no);
        record.learning_rate_used = parse_double_field(fields[2], line_no);

        const bool has_efficiency = !fields[3].empty() || !fields[4].empty() || !fields[5].empty();
        if (record.k == 1 && has_efficiency) {
            throw std::runtime_error("trace CSV line " + std::to_string(line_no) +
                                     ": iteration 1 must have empty efficiency fields");
        }
        if (record.k > 1 && !has_efficiency) {
            throw std::runtime_error("trace CSV line " + std::to_string(line_no) +
                                     ": missing efficiency fields");
        }
        if (has_efficiency) {
            EfficiencyRecord eff;
            eff.k = record.k;
            eff.p_k = parse_double_field(fields[3], line_no);
            eff.delta_k = parse_double_field(fields[4], line_no);
            eff.e_k = parse_double_field(fields[5], line_no);
            record.efficiency = eff;
        }
        trace.records.push_back(std::move(record));
    }
    if (trace.records.empty()) {
        throw std::runtime_error("trace CSV line 2: no data rows");
    }
    trace.loss_initial = trace.records[0].loss;
    return trace;
}

std::string plot_loss_curve(const RunTrace& trace, const std::vector<std::uint64_t>& iteration_limits,
                            bool log_y) {
    if (iteration_limits.empty()) {
        throw std::invalid_argument("plot_loss_curve: need at least one iteration limit");
    }
    std::vector<PanelSpec> panels;
    for (std::uint64_t limit : iteration_limits) {
        if (limit == 0 || limit > trace.records.size()) {
            throw std::invalid_argument("plot_loss_curve: limit " + std::to_string(limit) +
                                        " outside the trace's 1.." +
                                        std::to_string(trace.records.size()) + " range");
        }
        PanelSpec panel;
        panel.title = "iterations 1-" + std::to_string(limit);
        panel.x_label = "iteration";
        panel.y_label = "loss";
        panel.y_ticks_are_log10 = log_y;

        Series series;
        series.color = kPalette[0];
        double y_lo = 0.0, y_hi = 0.0;
        for (std::uint64_t k = 1; k <= limit; ++k) {
            const IterationRecord& record = trace.records[k - 1];
            double y = record.loss;
            if (log_y) {
                y = std::log10(std::max(y, 1e-300));
            }
            series.x.push_back(static_cast<double>(record.k));
            series.y.push_back(y);
            if (k == 1 || y < y_lo) y_lo = y;
            if (k == 1 || y > y_hi) y_hi = y;
        }
        pad_range(y_lo, y_hi);
        panel.x_lo = 1.0;
        panel.x_hi = static_cast<double>(limit);
        if (limit == 1) panel.x_hi = 2.0;
        panel.y_lo = y_lo;
        panel.y_hi = y_hi;
        panel.series.push_back(std::move(series));
        panels.push_back(std::move(panel));
    }
    return render_svg(panels);
}

std::string plot_efficiency_curve(const RunTrace& trace) {
    if (trace.records.size() < 2) {
        throw std::invalid_argument("plot_efficiency_curve: trace needs at least 2 iterations");
    }
    PanelSpec panel;
    panel.title = "efficiency by iteration";
    panel.x_label = "iteration";
    panel.y_label = "efficiency";
    panel.x_lo = 2.0;
    panel.x_hi = static_cast<double>(trace.records.size());
    if (panel.x_hi <= panel.x_lo) panel.x_hi = panel.x_lo + 1.0;
    panel.y_lo = 0.0;
    panel.y_hi = 100.0;

    Series series;
    series.color = kPalette[0];
    for (const IterationRecord& record : trace.records) {
        if (!record.efficiency) continue;
        series.x.push_back(static_cast<double>(record.k));
        series.y.push_back(record.efficiency->e_k);
    }
    panel.series.push_back(std::move(series));
    return render_svg({panel});
}

std::string plot_efficiency_overlay(const ComparisonReport& report) {
    PanelSpec panel;
    panel.title = "efficiency by iteration";
    panel.x_label = "iteration";
    panel.y_label = "efficiency";
    panel.y_lo = 0.0;
    panel.y_hi = 100.0;

    double x_hi = 3.0;
    std::size_t color_index = 0;
    for (const auto& [label, entry] : report.entries) {
        if (!entry.trace) {
            ++color_index;
            continue;
        }
        Series series;
        series.color = kPalette[color_index % (sizeof(kPalette) / sizeof(kPalette[0]))];
        ++color_index;
        for (const IterationRecord& record : entry.trace->records) {
            if (!record.efficiency) continue;
            series.x.push_back(static_cast<double>(record.k));
            series.y.push_back(record.efficiency->e_k);
        }
        if (!series.x.empty()) {
            x_hi = std::max(x_hi, series.x.back());
            panel.series.push_back(series);
            panel.legend.push_back(label);
        }
    }
    panel.x_lo = 2.0;
    panel.x_hi = x_hi;
    return render_svg({panel});
}

std::string comparison_to_json(const ComparisonReport& report) {
    nlohmann::json root = nlohmann::json::object();
    for (const auto& [label, entry] : report.entries) {
        nlohmann::json node = nlohmann::json::object();
        if (entry.error) {
            node["error"] = *entry.error;
        } else if (entry.trace && entry.summary) {
            nlohmann::json summary = nlohmann::json::object();
            summary["final_loss"] = entry.summary->final_loss;
            if (entry.summary->final_efficiency) {
                summary["final_efficiency"] = *entry.summary->final_efficiency;
            } else {
                summary["final_efficiency"] = nullptr;
            }
            if (entry.summary->stopped_at) {
                summary["stopped_at"] = *entry.summary->stopped_at;
            } else {
                summary["stopped_at"] = nullptr;
            }
            node["summary"] = std::move(summary);

            nlohmann::json iterations = nlohmann::json::array();
            for (const IterationRecord& record : entry.trace->records) {
                nlohmann::json row = nlohmann::json::object();
                row["k"] = record.k;
                row["loss"] = record.loss;
                row["learning_rate"] = record.learning_rate_used;
                if (record.efficiency) {
                    row["p_k"] = record.efficiency->p_k;
                    row["delta_k"] = record.efficiency->delta_k;
                    row["efficiency"] = record.efficiency->e_k;
                } else {
                    row["p_k"] = nullptr;
                    row["delta_k"] = nullptr;
                    row["efficiency"] = nullptr;
                }
                iterations.push_back(std::move(row));
            }
            node["iterations"] = std::move(iterations);
        }
        root[label] = std::move(node);
    }
    return root.dump(2) + "\n";
}

}  // namespace gdei
