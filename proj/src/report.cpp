#include "dpp/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include <json.hpp>

namespace dpp {

bool Cell::pass() const {
    if (!paper) return true;
    if (std::isnan(computed)) return false;
    // A hair of slack so a value printed at exactly the tolerance edge is not
    // rejected by binary rounding.
    switch (check) {
    case Check::at_most: return computed <= *paper + tol + 1e-12;
    case Check::at_least: return computed >= *paper - tol - 1e-12;
    default: return std::abs(computed - *paper) <= tol + 1e-12;
    }
}

void Report::add(std::string id, std::optional<double> paper, double computed, double tol, Cell::Check check) {
    cells.push_back(Cell{std::move(id), paper, computed, tol, check});
}

void Report::add_order(std::string id, std::vector<std::string> paper, std::vector<std::string> computed) {
    orders.push_back(OrderCheck{std::move(id), std::move(paper), std::move(computed)});
}

void Report::append(const Report& other) {
    notes.insert(notes.end(), other.notes.begin(), other.notes.end());
    cells.insert(cells.end(), other.cells.begin(), other.cells.end());
    orders.insert(orders.end(), other.orders.begin(), other.orders.end());
    seeds.insert(seeds.end(), other.seeds.begin(), other.seeds.end());
}

std::size_t Report::failures() const {
    std::size_t f = 0;
    for (const auto& c : cells) f += !c.pass();
    for (const auto& o : orders) f += !o.pass();
    return f;
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    const double a = std::abs(v);
    if (a != 0.0 && (a < 1e-4 || a >= 1e7)) std::snprintf(buf, sizeof buf, "%.6e", v);
    else std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

namespace {

std::string join(const std::vector<std::string>& v, const char* sep) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
    return s;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
}

} // namespace

const char* check_name(Cell::Check c) {
    switch (c) {
    case Cell::Check::at_most: return "at_most";
    case Cell::Check::at_least: return "at_least";
    default: return "within";
    }
}

void write_json(const Report& r, std::ostream& out) {
    using nlohmann::ordered_json;
    ordered_json j;
    j["subcommand"] = r.subcommand;
    j["config"] = ordered_json::object();
    for (const auto& [k, v] : r.config) j["config"][k] = v;
    j["notes"] = r.notes;
    j["cells"] = ordered_json::array();
    for (const auto& c : r.cells) {
        ordered_json cj;
        cj["id"] = c.id;
        cj["paper"] = c.paper ? ordered_json(*c.paper) : ordered_json(nullptr);
        cj["computed"] = c.computed;
        cj["delta"] = c.paper ? ordered_json(c.delta()) : ordered_json(nullptr);
        cj["tol"] = c.tol;
        cj["check"] = check_name(c.check);
        cj["pass"] = c.pass();
        j["cells"].push_back(cj);
    }
    j["orders"] = ordered_json::array();
    for (const auto& o : r.orders)
        j["orders"].push_back({{"id", o.id}, {"paper", o.paper}, {"computed", o.computed}, {"pass", o.pass()}});
    j["seeds"] = r.seeds;
    j["pass"] = r.pass();
    out << j.dump(2) << '\n';
}

namespace {

// Round-trippable text for machine-readable output.
std::string exact_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

void write_csv(const Report& r, std::ostream& out) {
    out << "id,paper,computed,delta,tol,check,pass\n";
    for (const auto& c : r.cells)
        out << csv_field(c.id) << ',' << (c.paper ? exact_number(*c.paper) : "") << ',' << exact_number(c.computed)
            << ',' << (c.paper ? exact_number(c.delta()) : "") << ',' << exact_number(c.tol) << ','
            << check_name(c.check) << ',' << (c.pass() ? "true" : "false") << '\n';
    for (const auto& o : r.orders)
        out << csv_field(o.id) << ',' << csv_field(join(o.paper, " < ")) << ',' << csv_field(join(o.computed, " < "))
            << ",,,order," << (o.pass() ? "true" : "false") << '\n';
}

namespace {

std::string tol_text(const Cell& c) {
    switch (c.check) {
    case Cell::Check::at_most: return "<= paper";
    case Cell::Check::at_least: return ">= paper";
    default: return format_number(c.tol);
    }
}

} // namespace

void write_markdown(const Report& r, std::ostream& out) {
    out << "# " << r.subcommand << "\n\n";
    if (!r.config.empty()) {
        for (const auto& [k, v] : r.config) out << "- " << k << ": " << v << '\n';
        out << '\n';
    }
    for (const auto& n : r.notes) out << "> " << n << "\n";
    if (!r.notes.empty()) out << '\n';
    if (!r.cells.empty()) {
        out << "| id | paper | computed | delta | tol | pass |\n|---|---:|---:|---:|---:|---|\n";
        for (const auto& c : r.cells)
            out << "| " << c.id << " | " << (c.paper ? format_number(*c.paper) : "") << " | "
                << format_number(c.computed) << " | " << (c.paper ? format_number(c.delta()) : "") << " | "
                << (c.paper ? tol_text(c) : "") << " | " << (c.pass() ? "yes" : "**no**") << " |\n";
        out << '\n';
    }
    if (!r.orders.empty()) {
        out << "| order | paper | computed | pass |\n|---|---|---|---|\n";
        for (const auto& o : r.orders)
            out << "| " << o.id << " | " << join(o.paper, " < ") << " | " << join(o.computed, " < ") << " | "
                << (o.pass() ? "yes" : "**no**") << " |\n";
        out << '\n';
    }
    out << "failures: " << r.failures() << " of " << r.cells.size() + r.orders.size() << " checks\n";
}

namespace {

std::string xml_escape(const std::string& s) {
    std::string o;
    for (char ch : s) {
        switch (ch) {
        case '&': o += "&amp;"; break;
        case '<': o += "&lt;"; break;
        case '>': o += "&gt;"; break;
        case '"': o += "&quot;"; break;
        default: o += ch;
        }
    }
    return o;
}

} // namespace

void write_svg(const Report& r, std::ostream& out) {
    constexpr int label_w = 300, plot_w = 420, value_w = 110, row_h = 18, top = 40;
    const int width = label_w + plot_w + value_w, height = top + row_h * static_cast<int>(r.cells.size()) + 20;
    double lo = 0.0, hi = 0.0;
    for (const auto& c : r.cells)
        if (std::isfinite(c.computed)) {
            lo = std::min(lo, c.computed);
            hi = std::max(hi, c.computed);
        }
    const double span = hi - lo > 0.0 ? hi - lo : 1.0;
    auto xpos = [&](double v) { return label_w + plot_w * (v - lo) / span; };
    char buf[256];
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" font-family=\"monospace\" font-size=\"11\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"8\" y=\"20\" font-size=\"14\">" << xml_escape(r.subcommand) << "</text>\n";
    const double axis = xpos(0.0);
    std::snprintf(buf, sizeof buf, "<line x1=\"%.2f\" y1=\"%d\" x2=\"%.2f\" y2=\"%d\" stroke=\"black\"/>\n", axis,
                  top - 4, axis, height - 16);
    out << buf;
    for (std::size_t i = 0; i < r.cells.size(); ++i) {
        const auto& c = r.cells[i];
        const int y = top + row_h * static_cast<int>(i);
        const double v = std::isfinite(c.computed) ? c.computed : 0.0;
        const double x0 = std::min(axis, xpos(v)), w = std::abs(xpos(v) - axis);
        const char* fill = !c.paper ? "#7f9fbf" : c.pass() ? "#5fa55f" : "#c85050";
        out << "<text x=\"4\" y=\"" << y + 12 << "\">" << xml_escape(c.id) << "</text>\n";
        std::snprintf(buf, sizeof buf, "<rect x=\"%.2f\" y=\"%d\" width=\"%.2f\" height=\"%d\" fill=\"%s\"/>\n", x0,
                      y + 2, w, row_h - 4, fill);
        out << buf;
        out << "<text x=\"" << label_w + plot_w + 6 << "\" y=\"" << y + 12 << "\">" << format_number(c.computed)
            << "</text>\n";
    }
    out << "</svg>\n";
}

} // namespace dpp
