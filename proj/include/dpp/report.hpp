#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dpp {

/// One checked value: the printed reference, what we compute, and whether
/// they agree within `tol`. Cells without a reference are informational.
struct Cell {
    /// within: |computed - paper| <= tol; at_most: computed <= paper + tol;
    /// at_least: computed >= paper - tol.
    enum class Check { within, at_most, at_least };

    std::string id;
    std::optional<double> paper;
    double computed = 0.0;
    double tol = 0.0;
    Check check = Check::within;

    double delta() const { return paper ? computed - *paper : 0.0; }
    bool pass() const;
};

/// A non-numeric comparison, e.g. a rank order.
struct OrderCheck {
    std::string id;
    std::vector<std::string> paper;
    std::vector<std::string> computed;
    bool pass() const { return paper == computed; }
};

struct Report {
    std::string subcommand;
    std::map<std::string, std::string> config;
    std::vector<std::string> notes;
    std::vector<Cell> cells;
    std::vector<OrderCheck> orders;
    std::vector<std::uint64_t> seeds;

    void add(std::string id, std::optional<double> paper, double computed, double tol,
             Cell::Check check = Cell::Check::within);
    void add_at_most(std::string id, double limit, double computed) {
        add(std::move(id), limit, computed, 0.0, Cell::Check::at_most);
    }
    void add_at_least(std::string id, double limit, double computed) {
        add(std::move(id), limit, computed, 0.0, Cell::Check::at_least);
    }
    void add_info(std::string id, double computed) { add(std::move(id), std::nullopt, computed, 0.0); }
    void add_order(std::string id, std::vector<std::string> paper, std::vector<std::string> computed);
    void append(const Report& other);

    std::size_t failures() const;
    bool pass() const { return failures() == 0; }
};

void write_json(const Report& r, std::ostream& out);
void write_csv(const Report& r, std::ostream& out);
void write_markdown(const Report& r, std::ostream& out);
/// Horizontal bar chart of the computed values, one bar per cell, fixed layout.
void write_svg(const Report& r, std::ostream& out);

const char* check_name(Cell::Check c);

/// Fixed-precision formatting shared by every emitter, so output is byte-stable.
std::string format_number(double v);

} // namespace dpp
