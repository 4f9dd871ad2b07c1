#include "dpp/plato.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "dpp/error.hpp"
#include "dpp/pursuit.hpp"

namespace dpp {

namespace {

struct TableRow {
    const char* pattern;
    double percent[6];
};

const char* const table_books[6] = {"Rep", "Laws", "Phil", "Pol", "Soph", "Tim"};
const std::uint64_t table_sentences[6] = {3778, 3783, 958, 770, 919, 762};

// Sentence-ending percentages, rows in the printed order.
const TableRow table_rows[pattern_count] = {
    {"UUUUU", {1.1, 2.4, 2.5, 1.7, 2.8, 2.4}},
    {"-UUUU", {1.6, 3.8, 2.8, 2.5, 3.6, 3.9}},
    {"U-UUU", {1.7, 1.9, 2.1, 3.1, 3.4, 6.0}},
    {"UU-UU", {1.9, 2.6, 2.6, 2.6, 2.6, 1.8}},
    {"UUU-U", {2.1, 3.0, 4.0, 3.3, 2.4, 3.4}},
    {"UUUU-", {2.0, 3.8, 4.8, 2.9, 2.5, 3.5}},
    {"--UUU", {2.1, 2.7, 4.3, 3.3, 3.3, 3.4}},
    {"-U-UU", {2.1, 1.8, 1.5, 2.3, 4.0, 3.4}},
    {"-UU-U", {2.8, 0.6, 0.7, 0.4, 2.1, 1.7}},
    {"-UUU-", {4.6, 8.8, 6.5, 4.0, 2.3, 3.3}},
    {"U--UU", {3.3, 3.4, 6.7, 5.3, 3.3, 3.4}},
    {"U-U-U", {2.6, 1.0, 0.6, 0.9, 1.6, 3.2}},
    {"U-UU-", {4.6, 1.1, 0.7, 1.0, 3.0, 2.7}},
    {"UU--U", {2.6, 1.5, 3.1, 3.1, 3.0, 3.0}},
    {"UU-U-", {4.4, 3.0, 1.9, 3.0, 3.0, 2.2}},
    {"UUU--", {2.5, 5.7, 5.4, 4.4, 5.1, 3.9}},
    {"---UU", {2.9, 4.2, 5.5, 6.9, 5.2, 3.0}},
    {"--U-U", {3.0, 1.4, 0.7, 2.7, 2.6, 3.3}},
    {"--UU-", {3.4, 1.0, 0.4, 0.7, 2.3, 3.3}},
    {"-U--U", {2.0, 2.3, 1.2, 3.4, 3.7, 3.3}},
    {"-U-U-", {6.4, 2.4, 2.8, 1.8, 2.1, 3.0}},
    {"-UU--", {4.2, 0.6, 0.7, 0.8, 3.0, 2.8}},
    {"UU---", {2.8, 2.9, 2.6, 4.6, 3.4, 3.0}},
    {"U-U--", {4.2, 1.2, 1.3, 1.0, 1.3, 3.3}},
    {"U--U-", {4.8, 8.2, 5.3, 4.5, 4.6, 3.0}},
    {"U---U", {2.4, 1.9, 5.3, 2.5, 2.5, 2.2}},
    {"U----", {3.5, 4.1, 3.3, 3.8, 2.9, 2.4}},
    {"-U---", {4.0, 3.7, 3.3, 4.9, 3.5, 3.0}},
    {"--U--", {4.1, 2.1, 2.3, 2.1, 4.1, 6.4}},
    {"---U-", {4.1, 8.8, 9.0, 6.8, 4.7, 3.8}},
    {"----U", {2.0, 3.0, 2.9, 2.9, 2.6, 2.2}},
    {"-----", {4.2, 5.2, 4.0, 4.9, 3.4, 1.8}},
};

constexpr std::uint64_t pinned_checksum = 0x0953b4cd55729f53ULL;

std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

std::vector<std::string> split_commas(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double parse_number(const std::string& s, std::size_t line_no) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used == s.size() && std::isfinite(v)) return v;
    } catch (const std::exception&) {
    }
    throw ParseError("line " + std::to_string(line_no) + ": '" + s + "' is not a number");
}

} // namespace

std::string pattern_syllables(std::uint32_t x) {
    std::string s(syllables, '-');
    for (unsigned i = 0; i < syllables; ++i)
        if ((x >> (syllables - 1 - i)) & 1u) s[i] = 'U';
    return s;
}

std::optional<std::uint32_t> parse_pattern(const std::string& s) {
    if (s.size() != syllables) return std::nullopt;
    const bool syll = s.find_first_not_of("U-") == std::string::npos;
    const bool bits = s.find_first_not_of("01") == std::string::npos;
    if (!syll && !bits) return std::nullopt;
    std::uint32_t x = 0;
    for (char ch : s) x = (x << 1) | (ch == 'U' || ch == '1' ? 1u : 0u);
    return x;
}

const Book& Corpus::book(const std::string& name) const {
    for (const auto& b : books)
        if (b.name == name) return b;
    throw InvalidArgument("no book named '" + name + "'");
}

std::vector<std::string> Corpus::names() const {
    std::vector<std::string> out;
    for (const auto& b : books) out.push_back(b.name);
    return out;
}

std::vector<std::string> Corpus::sum_warnings(double tol) const {
    std::vector<std::string> out;
    for (const auto& b : books) {
        const double s = std::accumulate(b.values.begin(), b.values.end(), 0.0);
        if (std::abs(s - 100.0) > tol) {
            std::ostringstream msg;
            msg << b.name << " column sums to " << format_number(s) << ", not 100 +- " << tol;
            out.push_back(msg.str());
        }
    }
    return out;
}

MassFunction book_mass(const Book& b, Scaling scaling) {
    if (b.values.size() != pattern_count) throw InvalidArgument("book '" + b.name + "' does not have 32 patterns");
    double div = 100.0;
    if (scaling == Scaling::unit_sum) {
        div = std::accumulate(b.values.begin(), b.values.end(), 0.0);
        if (div <= 0.0) throw InvalidArgument("book '" + b.name + "' has zero total");
    }
    std::vector<double> v(b.values);
    for (double& x : v) x /= div;
    return MassFunction(DiscreteSpace::binary_cube(syllables), std::move(v));
}

Corpus load_table1() {
    Corpus c;
    for (int b = 0; b < 6; ++b) {
        Book book{table_books[b], std::vector<double>(pattern_count, 0.0), table_sentences[b]};
        for (const auto& row : table_rows) book.values[*parse_pattern(row.pattern)] = row.percent[b];
        c.books.push_back(std::move(book));
    }
    return c;
}

std::uint64_t table_checksum(const Corpus& c) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](std::int64_t v) {
        auto u = static_cast<std::uint64_t>(v);
        for (int i = 0; i < 8; ++i) {
            h ^= (u >> (8 * i)) & 0xffu;
            h *= 0x100000001b3ULL;
        }
    };
    for (const auto& b : c.books)
        for (double v : b.values) mix(std::llround(v * 10.0));
    for (const auto& b : c.books) mix(static_cast<std::int64_t>(b.sentences.value_or(0)));
    return h;
}

std::uint64_t table1_pinned_checksum() { return pinned_checksum; }

Corpus ingest_csv(std::istream& in, IngestMode mode) {
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> order;
    std::map<std::string, std::vector<std::optional<double>>> cells;
    std::map<std::string, std::uint64_t> counts;

    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto f = split_commas(line);
        if (line_no == 1 && f.size() >= 2 && f[0] == "book" && f[1] == "pattern") continue;
        if (f.size() != 3) throw ParseError("line " + std::to_string(line_no) + ": expected book,pattern,value");
        const std::string& book = f[0];
        if (book.empty()) throw ParseError("line " + std::to_string(line_no) + ": empty book name");
        if (!cells.count(book)) {
            order.push_back(book);
            cells[book].assign(pattern_count, std::nullopt);
        }
        if (f[1] == "_count") {
            const double n = parse_number(f[2], line_no);
            if (n < 0 || n != std::floor(n)) throw ParseError("line " + std::to_string(line_no) + ": bad sentence count");
            if (!counts.emplace(book, static_cast<std::uint64_t>(n)).second)
                throw ParseError("line " + std::to_string(line_no) + ": duplicate count for " + book);
            continue;
        }
        const auto x = parse_pattern(f[1]);
        if (!x) throw ParseError("line " + std::to_string(line_no) + ": malformed pattern '" + f[1] + "'");
        const double v = parse_number(f[2], line_no);
        if (v < 0) throw ParseError("line " + std::to_string(line_no) + ": negative value");
        auto& slot = cells[book][*x];
        if (slot) throw ParseError("line " + std::to_string(line_no) + ": duplicate (" + book + ", " + f[1] + ")");
        slot = v;
    }
    if (order.empty()) throw ParseError("no data rows");

    Corpus c;
    for (const auto& name : order) {
        Book b{name, std::vector<double>(pattern_count), std::nullopt};
        for (std::uint32_t x = 0; x < pattern_count; ++x) {
            if (!cells[name][x]) throw MissingPattern(name, pattern_syllables(x));
            b.values[x] = *cells[name][x];
        }
        if (auto it = counts.find(name); it != counts.end()) b.sentences = it->second;
        if (mode == IngestMode::counts) {
            const double total = std::accumulate(b.values.begin(), b.values.end(), 0.0);
            if (total <= 0) throw ParseError("book '" + name + "' has zero total count");
            if (!b.sentences) b.sentences = static_cast<std::uint64_t>(std::llround(total));
            for (double& v : b.values) v = 100.0 * v / total;
        }
        c.books.push_back(std::move(b));
    }
    return c;
}

Corpus ingest_csv_file(const std::string& path, IngestMode mode) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open '" + path + "'");
    return ingest_csv(in, mode);
}

void export_csv(const Corpus& c, std::ostream& out) {
    out << "book,pattern,value\n";
    for (const auto& b : c.books) {
        for (std::uint32_t x = pattern_count; x-- > 0;) {
            std::ostringstream v;
            v.precision(17);
            v << b.values[x];
            out << b.name << ',' << pattern_syllables(x) << ',' << v.str() << '\n';
        }
        if (b.sentences) out << b.name << ",_count," << *b.sentences << '\n';
    }
}

namespace printed {

const std::vector<FirstOrder>& first_order_tables() {
    static const std::vector<FirstOrder> t = {
        {"Rep", 2, {0.465, 0.471, 0.466, 0.511, 0.362}},  {"Laws", 5, {0.477, 0.489, 0.411, 0.599, 0.375}},
        {"Phil", 7, {0.522, 0.464, 0.398, 0.594, 0.465}}, {"Pol", 9, {0.477, 0.457, 0.348, 0.524, 0.469}},
        {"Soph", 11, {0.474, 0.491, 0.454, 0.527, 0.487}}, {"Tim", 13, {0.494, 0.476, 0.565, 0.521, 0.496}},
    };
    return t;
}

const std::vector<UUVector>& uu_tables() {
    static const std::vector<UUVector> t = {
        {"Laws", 6, {1.07, 1.03, 0.92, 0.99, 1.43, 0.97, 0.98, 1.04, 1.09, 1.02}},
        {"Phil", 8, {1.11, 1.03, 0.85, 1.11, 1.48, 0.92, 0.85, 1.02, 0.95, 1.01}},
        {"Pol", 10, {1.17, 1.10, 0.96, 1.01, 1.26, 0.86, 0.90, 1.05, 1.10, 1.13}},
        {"Soph", 12, {1.07, 1.03, 1.01, 0.93, 1.07, 0.88, 1.01, 0.97, 0.98, 1.10}},
        {"Tim", 14, {0.98, 1.02, 0.97, 1.04, 0.92, 0.94, 0.97, 0.96, 0.97, 1.06}},
    };
    return t;
}

const std::vector<std::vector<double>>& republic_pairs() {
    static const std::vector<std::vector<double>> t = {
        {0.194, 0.271, 0.277, 0.258}, {0.208, 0.257, 0.258, 0.277}, {0.238, 0.227, 0.272, 0.263},
        {0.177, 0.288, 0.185, 0.350}, {0.209, 0.262, 0.257, 0.272}, {0.241, 0.230, 0.269, 0.260},
        {0.162, 0.309, 0.200, 0.329}, {0.211, 0.255, 0.299, 0.235}, {0.170, 0.296, 0.192, 0.342},
        {0.167, 0.343, 0.195, 0.295},
    };
    return t;
}

const std::vector<std::vector<double>>& republic_adjusted() {
    static const std::vector<std::vector<double>> t = {
        {0.89, 1.10, 1.10, 0.91}, {0.96, 1.00, 1.00, 0.97}, {1.00, 1.00, 1.00, 1.00}, {1.10, 0.97, 0.96, 1.00},
        {0.95, 1.00, 1.00, 0.96}, {1.00, 1.00, 1.00, 1.00}, {0.95, 1.00, 1.00, 0.97}, {0.89, 1.10, 1.10, 0.90},
        {1.00, 1.00, 0.99, 1.00}, {0.90, 1.10, 1.10, 0.94},
    };
    return t;
}

const std::vector<L1Figure>& l1_figures() {
    static const std::vector<L1Figure> t = {
        {"Laws", "Phil", 0.64}, {"Laws", "Pol", 0.83}, {"Rep", "Tim", 0.6},
        {"Laws", "Soph", 0.87}, {"Laws", "Tim", 0.94},
    };
    return t;
}

const std::vector<RankColumn>& rank_columns() {
    static const std::vector<RankColumn> t = {
        {"Rep", Metric::hellinger, {"Soph", "Tim", "Phil", "Laws", "Pol"}},
        {"Rep", Metric::tv, {"Soph", "Tim", "Phil", "Pol", "Laws"}},
        {"Rep", Metric::wasserstein, {"Soph", "Tim", "Phil", "Laws", "Pol"}},
        {"Laws", Metric::hellinger, {"Pol", "Phil", "Soph", "Tim"}},
        {"Laws", Metric::tv, {"Pol", "Phil", "Soph", "Tim"}},
        {"Laws", Metric::wasserstein, {"Pol", "Phil", "Soph", "Tim"}},
    };
    return t;
}

const std::vector<std::string>& top_scan_z() {
    static const std::vector<std::string> t = {"00010", "01100", "11000"};
    return t;
}

const std::vector<ScanColumn>& scan_columns() {
    static const std::vector<ScanColumn> t = {
        {"00010", {"Rep", "Tim", "Soph", "Pol", "Laws", "Phil"}},
        {"01100", {"Rep", "Tim", "Soph", "Pol", "Phil", "Laws"}},
        {"11000", {"Rep", "Tim", "Phil", "Soph", "Laws", "Pol"}},
    };
    return t;
}

const std::vector<double>& poisson_table() {
    static const std::vector<double> t = {0.74, 0.54, 0.44, 0.40, 0.36, 0.32, 0.30, 0.28, 0.26, 0.24};
    return t;
}

} // namespace printed

namespace {

constexpr double margin_tol = 0.005, ratio_tol = 0.01, l1_tol = 0.03;
const char* const cell_names[4] = {"UU", "U-", "-U", "--"};

std::string pair_label(unsigned i, unsigned j) { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; }

std::string scaling_name(Scaling s) { return s == Scaling::percent ? "percent/100" : "unit-sum"; }

} // namespace

Report reproduce_margin_tables(const Corpus& c, Scaling scaling) {
    Report r;
    r.subcommand = "margins";
    r.config["scaling"] = scaling_name(scaling);
    for (const auto& w : c.sum_warnings()) r.notes.push_back(w);

    std::map<std::string, AdjustedMargins> adjusted;
    for (const auto& b : c.books) adjusted.emplace(b.name, adjusted_second_order(book_mass(b, scaling)));

    for (const auto& t : printed::first_order_tables()) {
        if (!adjusted.count(t.book)) continue;
        const auto& m = adjusted.at(t.book).first;
        for (unsigned i = 0; i < syllables; ++i)
            r.add("T" + std::to_string(t.table) + "/" + t.book + "/first/" + std::to_string(i + 1), t.margin[i], m[i],
                  margin_tol);
    }

    if (adjusted.count("Rep")) {
        const auto& rep = adjusted.at("Rep");
        for (std::size_t p = 0; p < rep.pairs.size(); ++p) {
            const auto& pm = rep.pairs[p];
            for (int cell = 0; cell < pattern_cells; ++cell)
                r.add("T3/Rep/" + pair_label(pm.i, pm.j) + "/" + cell_names[cell], printed::republic_pairs()[p][cell],
                      pm.raw[cell], margin_tol);
        }
        for (std::size_t p = 0; p < rep.pairs.size(); ++p) {
            const auto& pm = rep.pairs[p];
            for (int cell = 0; cell < pattern_cells; ++cell)
                r.add("T4/Rep/" + pair_label(pm.i, pm.j) + "/" + cell_names[cell],
                      printed::republic_adjusted()[p][cell], pm.ratio[cell].value_or(std::nan("")), ratio_tol);
        }
    }

    for (const auto& t : printed::uu_tables()) {
        if (!adjusted.count(t.book)) continue;
        const auto uu = adjusted.at(t.book).uu_vector();
        const auto& pairs = adjusted.at(t.book).pairs;
        for (std::size_t p = 0; p < uu.size(); ++p)
            r.add("T" + std::to_string(t.table) + "/" + t.book + "/" + pair_label(pairs[p].i, pairs[p].j) + "/UU",
                  t.ratio[p], uu[p], ratio_tol);
    }

    for (const auto& f : printed::l1_figures())
        if (adjusted.count(f.a) && adjusted.count(f.b))
            r.add(std::string("L1/") + f.a + "-" + f.b, f.value,
                  l1_between_adjusted(adjusted.at(f.a), adjusted.at(f.b)), l1_tol);
    return r;
}

Report reproduce_rankings(const Corpus& c, Scaling scaling) {
    Report r;
    r.subcommand = "rankings";
    r.config["scaling"] = scaling_name(scaling);
    r.config["penalty"] = "abs";
    r.notes.push_back("Criticus is not in the sentence-ending table; printed rank columns are compared with its row "
                      "deleted, as relative orders.");

    std::vector<NamedProfile> profiles;
    for (const auto& b : c.books) profiles.push_back({b.name, adjusted_second_order(book_mass(b, scaling)).uu_vector()});

    for (const auto& col : printed::rank_columns()) {
        const auto ranked = rank_profiles(profiles, col.reference, col.metric, Penalty::abs_mass);
        std::vector<const RankEntry*> order;
        for (const auto& e : ranked)
            if (e.rank > 0) order.push_back(&e);
        std::sort(order.begin(), order.end(), [](const RankEntry* a, const RankEntry* b) { return a->rank < b->rank; });
        std::vector<std::string> names;
        for (const auto* e : order) {
            // The printed column may leave books unranked (no Republic row against Laws).
            if (std::find(col.order.begin(), col.order.end(), e->name) == col.order.end()) continue;
            names.push_back(e->name);
            r.add_info("T16/" + std::string(col.reference) + "/" + to_string(col.metric) + "/" + e->name,
                       e->distance.total);
        }
        r.add_order("T16/d_" + to_string(col.metric) + "(" + col.reference + ",.)", col.order, names);
    }

    const auto early = book_mass(c.book("Rep"), scaling), late = book_mass(c.book("Laws"), scaling);
    const auto scan = affine_scan(early, &late);
    std::vector<std::string> top;
    for (std::size_t i = 0; i < 3 && i < scan.ranked.size(); ++i) {
        top.push_back(scan.ranked[i].z_label);
        r.add_info("A3/Rep-Laws/z=" + scan.ranked[i].z_label, scan.ranked[i].statistic);
    }
    std::vector<std::string> top_sorted = top, paper_sorted = printed::top_scan_z();
    std::sort(top_sorted.begin(), top_sorted.end());
    std::sort(paper_sorted.begin(), paper_sorted.end());
    r.add_order("A3/top-3 z (as a set)", paper_sorted, top_sorted);

    for (const auto& col : printed::scan_columns()) {
        const auto z = *parse_cube_label(col.z);
        std::vector<std::pair<std::string, double>> vals;
        for (const auto& b : c.books) {
            const double d = affine_contrast(book_mass(b, scaling), z);
            vals.emplace_back(b.name, d);
            r.add_info("T18/z=" + std::string(col.z) + "/" + b.name, d);
        }
        std::stable_sort(vals.begin(), vals.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
        std::vector<std::string> names;
        for (const auto& v : vals) names.push_back(v.first);
        r.add_order("T18/z=" + std::string(col.z), col.order, names);
    }
    return r;
}

} // namespace dpp
