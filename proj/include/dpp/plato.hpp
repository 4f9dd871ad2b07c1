#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dpp/metrics.hpp"
#include "dpp/radon.hpp"
#include "dpp/report.hpp"

namespace dpp {

inline constexpr unsigned syllables = 5;
inline constexpr std::size_t pattern_count = 32;

/// "UU-U-" for a Z_2^5 element, short syllable (U) = 1.
std::string pattern_syllables(std::uint32_t x);
/// Accepts five characters over {U, -} or over {1, 0}.
std::optional<std::uint32_t> parse_pattern(const std::string& s);

struct Book {
    std::string name;
    std::vector<double> values; // 32 entries indexed by the Z_2^5 element; percents unless noted
    std::optional<std::uint64_t> sentences;
};

struct Corpus {
    std::vector<Book> books;

    const Book& book(const std::string& name) const;
    std::vector<std::string> names() const;
    /// One message per book whose values sum further than `tol` from 100.
    std::vector<std::string> sum_warnings(double tol = 0.5) const;
};

enum class Scaling {
    percent,  // value / 100, so rounding leaves the total slightly off 1
    unit_sum, // value / column total, an exact probability
};

MassFunction book_mass(const Book& b, Scaling scaling);

/// The six books of the sentence-ending table with their sentence counts.
Corpus load_table1();

/// FNV-1a over the 192 table values (in tenths) and the 6 sentence counts.
std::uint64_t table_checksum(const Corpus& c);
/// The checksum of the embedded table as transcribed.
std::uint64_t table1_pinned_checksum();

enum class IngestMode { percents, counts };

/// Long-format CSV: header "book,pattern,value", then one row per cell and an
/// optional "book,_count,N" row per book. Counts are converted to percents.
Corpus ingest_csv(std::istream& in, IngestMode mode = IngestMode::percents);
Corpus ingest_csv_file(const std::string& path, IngestMode mode = IngestMode::percents);
void export_csv(const Corpus& c, std::ostream& out);

/// First order and adjusted second order margins of every book against the
/// printed tables, plus the L1 seriation sums.
Report reproduce_margin_tables(const Corpus& c, Scaling scaling = Scaling::percent);

/// Metric rankings against the two anchor books and the all-affine scan,
/// compared as relative orders with the book missing from the table removed.
Report reproduce_rankings(const Corpus& c, Scaling scaling = Scaling::percent);

/// Printed reference values used by the reproduction reports.
namespace printed {

struct FirstOrder {
    const char* book;
    int table;
    double margin[5];
};
struct UUVector {
    const char* book;
    int table;
    double ratio[10];
};
struct L1Figure {
    const char* a;
    const char* b;
    double value;
};
struct RankColumn {
    const char* reference;
    Metric metric;
    std::vector<std::string> order; // ascending distance
};
struct ScanColumn {
    const char* z;
    std::vector<std::string> order; // descending contrast
};

const std::vector<FirstOrder>& first_order_tables();
const std::vector<UUVector>& uu_tables();
/// Republic pair table (raw proportions) and its adjusted version, rows
/// (1,2)..(4,5), cells 11, 10, 01, 00.
const std::vector<std::vector<double>>& republic_pairs();
const std::vector<std::vector<double>>& republic_adjusted();
const std::vector<L1Figure>& l1_figures();
const std::vector<RankColumn>& rank_columns();
const std::vector<std::string>& top_scan_z();
const std::vector<ScanColumn>& scan_columns();
/// Limiting half-split discrepancy for lambda = 1..10.
const std::vector<double>& poisson_table();

} // namespace printed

} // namespace dpp
