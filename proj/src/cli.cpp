#include "dpp/cli.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "dpp/error.hpp"
#include "dpp/plato.hpp"
#include "dpp/pursuit.hpp"
#include "dpp/verify.hpp"

namespace dpp::cli {

namespace {

struct Options {
    bool builtin = false;
    std::string input;
    bool counts = false;
    std::string scaling = "percent";
    std::string format = "md";
    unsigned threads = 1;
    bool allow_mismatch = false;

    std::string book;
    std::string against;
    std::string base = "affine-hyperplanes";
    std::string index = "discrepancy";
    std::string ground;
    std::string transform_file;
    std::string reference = "Rep";
    std::string metric = "tv";
    std::string penalty = "abs";
    std::string target;
    std::optional<std::uint64_t> seed;
    std::size_t trials = 0;
};

Corpus load_corpus(const Options& o) {
    if (o.builtin == !o.input.empty()) throw InvalidArgument("give exactly one of --builtin or --input");
    if (o.builtin) return load_table1();
    return ingest_csv_file(o.input, o.counts ? IngestMode::counts : IngestMode::percents);
}

Scaling scaling_of(const Options& o) {
    if (o.scaling == "percent") return Scaling::percent;
    if (o.scaling == "unit-sum") return Scaling::unit_sum;
    throw InvalidArgument("unknown scaling '" + o.scaling + "'");
}

ProjectionBase base_of(const std::string& spec, unsigned k) {
    if (spec == "marginal") return base_marginal_z2k(k);
    if (spec == "pairs") return base_pairs_z2k(k);
    if (spec == "affine-hyperplanes") return base_affine_hyperplanes(k);
    if (spec.rfind("affine:", 0) == 0) {
        const auto tail = spec.substr(7);
        if (tail.empty() || tail.find_first_not_of("0123456789") != std::string::npos)
            throw InvalidArgument("affine:<codim> needs a positive integer");
        return base_affine(k, static_cast<unsigned>(std::stoul(tail)));
    }
    throw InvalidArgument("unknown base '" + spec + "' (marginal, pairs, affine-hyperplanes, affine:<codim>)");
}

std::vector<const Book*> selected_books(const Corpus& c, const std::string& name) {
    std::vector<const Book*> out;
    if (name.empty())
        for (const auto& b : c.books) out.push_back(&b);
    else
        out.push_back(&c.book(name));
    return out;
}

void common_config(Report& r, const Options& o) {
    r.config["input"] = o.builtin ? "builtin" : o.input;
    r.config["scaling"] = o.scaling;
    // --threads is not echoed: reports must be byte-identical across worker counts.
}

const printed::FirstOrder* printed_first(const std::string& book) {
    for (const auto& t : printed::first_order_tables())
        if (book == t.book) return &t;
    return nullptr;
}

const printed::UUVector* printed_uu(const std::string& book) {
    for (const auto& t : printed::uu_tables())
        if (book == t.book) return &t;
    return nullptr;
}

Report cmd_margins(const Options& o) {
    const auto corpus = load_corpus(o);
    Report r;
    r.subcommand = "margins";
    common_config(r, o);
    for (const auto& w : corpus.sum_warnings()) r.notes.push_back(w);
    for (const Book* b : selected_books(corpus, o.book)) {
        const auto m = first_order(book_mass(*b, scaling_of(o)));
        const auto* t = o.builtin ? printed_first(b->name) : nullptr;
        for (unsigned i = 0; i < m.size(); ++i) {
            const std::string id = b->name + "/first/" + std::to_string(i + 1);
            if (t) r.add("T" + std::to_string(t->table) + "/" + id, t->margin[i], m[i], 0.005);
            else r.add_info(id, m[i]);
        }
    }
    return r;
}

Report cmd_adjust(const Options& o) {
    static const char* const cells[4] = {"UU", "U-", "-U", "--"};
    const auto corpus = load_corpus(o);
    Report r;
    r.subcommand = "adjust";
    common_config(r, o);
    for (const Book* b : selected_books(corpus, o.book)) {
        const auto a = adjusted_second_order(book_mass(*b, scaling_of(o)));
        const auto* uu = o.builtin ? printed_uu(b->name) : nullptr;
        const bool rep = o.builtin && b->name == "Rep";
        for (std::size_t p = 0; p < a.pairs.size(); ++p) {
            const auto& pm = a.pairs[p];
            const std::string pair = "(" + std::to_string(pm.i) + "," + std::to_string(pm.j) + ")";
            for (int cell = 0; cell < pattern_cells; ++cell) {
                const std::string id = b->name + "/" + pair + "/" + cells[cell];
                const double v = pm.ratio[cell].value_or(std::nan(""));
                if (rep) r.add("T4/" + id, printed::republic_adjusted()[p][cell], v, 0.01);
                else if (uu && cell == 0) r.add("T" + std::to_string(uu->table) + "/" + id, uu->ratio[p], v, 0.01);
                else r.add_info(id, v);
            }
        }
    }
    if (o.book.empty() && o.builtin) {
        std::map<std::string, AdjustedMargins> all;
        for (const auto& b : corpus.books) all.emplace(b.name, adjusted_second_order(book_mass(b, scaling_of(o))));
        for (const auto& f : printed::l1_figures())
            r.add(std::string("L1/") + f.a + "-" + f.b, f.value, l1_between_adjusted(all.at(f.a), all.at(f.b)), 0.03);
    }
    return r;
}

Report cmd_transform(const Options& o) {
    const auto corpus = load_corpus(o);
    if (o.book.empty()) throw InvalidArgument("transform needs --book");
    const auto f = book_mass(corpus.book(o.book), scaling_of(o));
    const auto base = base_of(o.base, syllables);
    const auto fbar = transform(f, base, Execution{o.threads});
    Report r;
    r.subcommand = "transform";
    common_config(r, o);
    r.config["book"] = o.book;
    r.config["base"] = o.base;
    for (std::size_t i = 0; i < base.num_blocks(); ++i) r.add_info(base.block(i).id, fbar[i]);
    return r;
}

// Splits one CSV line, honouring double-quoted fields.
std::vector<std::string> csv_fields(const std::string& line) {
    std::vector<std::string> out(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') out.back() += '"', ++i;
            else if (ch == '"') quoted = false;
            else out.back() += ch;
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            out.emplace_back();
        } else if (ch != '\r') {
            out.back() += ch;
        }
    }
    return out;
}

// Accepts "block,value" rows or the CSV report written by `transform --format csv`.
TransformValues read_transform_csv(const std::string& path, const ProjectionBase& base) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open '" + path + "'");
    std::vector<std::optional<double>> vals(base.num_blocks());
    std::string line;
    std::size_t line_no = 0, value_col = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const auto f = csv_fields(line);
        if (line_no == 1 && (f[0] == "block" || f[0] == "id")) {
            if (f.size() > 2 && f[2] == "computed") value_col = 2;
            continue;
        }
        if (f.size() <= value_col) throw ParseError("line " + std::to_string(line_no) + ": too few fields");
        const auto b = base.block_index(f[0]);
        if (!b) throw ParseError("line " + std::to_string(line_no) + ": unknown block '" + f[0] + "'");
        if (vals[*b]) throw ParseError("line " + std::to_string(line_no) + ": duplicate block '" + f[0] + "'");
        try {
            std::size_t used = 0;
            vals[*b] = std::stod(f[value_col], &used);
            if (used != f[value_col].size()) throw ParseError("");
        } catch (const std::exception&) {
            throw ParseError("line " + std::to_string(line_no) + ": bad value '" + f[value_col] + "'");
        }
    }
    TransformValues t;
    for (std::size_t i = 0; i < vals.size(); ++i) {
        if (!vals[i]) throw ParseError("no value for block '" + base.block(i).id + "'");
        t.values.push_back(*vals[i]);
    }
    return t;
}

Report cmd_invert(const Options& o) {
    const auto base = base_of(o.base, syllables);
    Report r;
    r.subcommand = "invert";
    r.config["base"] = o.base;
    if (!o.transform_file.empty()) {
        const auto f = invert(read_transform_csv(o.transform_file, base), base);
        for (std::size_t x = 0; x < f.size(); ++x) r.add_info(pattern_syllables(static_cast<std::uint32_t>(x)), f[x]);
        return r;
    }
    const auto corpus = load_corpus(o);
    if (o.book.empty()) throw InvalidArgument("invert needs --transform-file or --book");
    common_config(r, o);
    const auto f = book_mass(corpus.book(o.book), scaling_of(o));
    const auto back = invert(transform(f, base, Execution{o.threads}), base);
    double worst = 0.0;
    for (std::size_t x = 0; x < f.size(); ++x) {
        r.add_info(pattern_syllables(static_cast<std::uint32_t>(x)), back[x]);
        worst = std::max(worst, std::abs(back[x] - f[x]));
    }
    r.add_at_most("round-trip max abs error", 1e-9, worst);
    return r;
}

Report cmd_pursue(const Options& o) {
    const auto corpus = load_corpus(o);
    if (o.book.empty()) throw InvalidArgument("pursue needs --book");
    const auto f = book_mass(corpus.book(o.book), scaling_of(o));
    const auto base = base_of(o.base, syllables);
    auto index = UniformityIndex::parse(o.index);
    if (index.kind == UniformityIndex::Kind::wasserstein) {
        if (!o.ground.empty()) {
            std::ifstream in(o.ground);
            if (!in) throw InvalidArgument("cannot open '" + o.ground + "'");
            index.ground = GroundMetric::read_csv(in);
        } else {
            // Without a ground file, blocks of a partition are equidistant.
            const std::size_t width = base.partitions().front().blocks.size();
            std::vector<std::string> labels;
            for (std::size_t i = 0; i < width; ++i) labels.push_back(std::to_string(i));
            index.ground = GroundMetric::discrete(labels);
        }
    }
    const auto best = least_uniform(f, base, index, Execution{o.threads});
    Report r;
    r.subcommand = "pursue";
    common_config(r, o);
    r.config["book"] = o.book;
    r.config["base"] = o.base;
    r.config["index"] = o.index;
    r.config["argmax"] = best.projection.partition_id;
    r.add_info("score", best.score);
    for (std::size_t i = 0; i < best.projection.values.size(); ++i)
        r.add_info("projection/" + best.projection.block_ids[i], best.projection.values[i]);
    for (std::size_t p = 0; p < best.scores.size(); ++p)
        r.add_info("partition/" + base.partitions()[p].id, best.scores[p]);
    return r;
}

Report cmd_scan(const Options& o) {
    const auto corpus = load_corpus(o);
    if (o.book.empty()) throw InvalidArgument("scan-affine needs --book");
    const auto f = book_mass(corpus.book(o.book), scaling_of(o));
    std::optional<MassFunction> g;
    if (!o.against.empty()) g = book_mass(corpus.book(o.against), scaling_of(o));
    const auto scan = affine_scan(f, g ? &*g : nullptr, Execution{o.threads});
    Report r;
    r.subcommand = "scan-affine";
    common_config(r, o);
    r.config["book"] = o.book;
    if (g) r.config["against"] = o.against;
    std::string argmax;
    for (auto z : scan.argmax) argmax += (argmax.empty() ? "" : " ") + cube_label(z, syllables);
    r.config["argmax"] = argmax;
    for (const auto& e : scan.ranked) r.add_info("z=" + e.z_label, e.statistic);
    return r;
}

Report cmd_rank(const Options& o) {
    const auto corpus = load_corpus(o);
    std::vector<NamedProfile> profiles;
    for (const auto& b : corpus.books)
        profiles.push_back({b.name, adjusted_second_order(book_mass(b, scaling_of(o))).uu_vector()});
    const auto ranked = rank_profiles(profiles, o.reference, parse_metric(o.metric), parse_penalty(o.penalty));
    Report r;
    r.subcommand = "rank";
    common_config(r, o);
    r.config["reference"] = o.reference;
    r.config["metric"] = o.metric;
    r.config["penalty"] = o.penalty;
    for (const auto& e : ranked) {
        r.add_info(e.name + "/rank", e.rank);
        r.add_info(e.name + "/distance", e.distance.normalized_distance);
        r.add_info(e.name + "/mass-penalty", e.distance.mass_penalty);
        r.add_info(e.name + "/total", e.distance.total);
    }
    return r;
}

Report cmd_verify(const Options& o) {
    const bool monte_carlo = o.target == "thm4.5" || o.target == "thm4.6" || o.target == "thm5.2" || o.target == "thm5.4";
    if (monte_carlo && !o.seed) throw InvalidArgument("verify " + o.target + " is Monte Carlo and needs --seed");
    VerifyOptions v;
    v.seed = o.seed.value_or(0);
    v.trials = o.trials;
    v.exec = Execution{o.threads};
    auto r = verify(o.target, v);
    if (o.seed) r.config["seed"] = std::to_string(*o.seed);
    if (o.trials) r.config["trials"] = std::to_string(o.trials);
    return r;
}

Report cmd_plato_report(const Options& o) {
    const auto corpus = load_corpus(o);
    Report r;
    r.subcommand = "plato-report";
    common_config(r, o);
    const auto margins = reproduce_margin_tables(corpus, scaling_of(o));
    const auto ranks = reproduce_rankings(corpus, scaling_of(o));
    r.append(margins);
    r.append(ranks);
    if (o.builtin) {
        r.add("remark/Rep/centered-square(unit-sum)", 0.0021, republic_centered_square(), 0.0002);
        r.append(verify_table15());
    }
    std::ostringstream sum;
    sum << std::hex << table_checksum(corpus);
    r.config["table-checksum"] = sum.str();
    return r;
}

void emit(const Report& r, const std::string& format, std::ostream& out) {
    if (format == "json") write_json(r, out);
    else if (format == "csv") write_csv(r, out);
    else if (format == "md") write_markdown(r, out);
    else if (format == "svg") write_svg(r, out);
    else throw InvalidArgument("unknown format '" + format + "'");
}

void list_failures(const Report& r, std::ostream& err) {
    for (const auto& c : r.cells)
        if (!c.pass())
            err << "mismatch " << c.id << ": paper " << format_number(*c.paper) << " computed "
                << format_number(c.computed) << " delta " << format_number(c.delta()) << '\n';
    for (const auto& o : r.orders)
        if (!o.pass()) {
            err << "mismatch " << o.id << ": paper";
            for (const auto& s : o.paper) err << ' ' << s;
            err << " computed";
            for (const auto& s : o.computed) err << ' ' << s;
            err << '\n';
        }
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Discrete projection pursuit: Radon transforms, uniformity metrics and the Plato analysis", "dpp"};
    app.require_subcommand(1);
    Options o;

    auto data_flags = [&o](CLI::App* s) {
        auto* builtin = s->add_flag("--builtin", o.builtin, "Use the embedded sentence-ending table");
        auto* input = s->add_option("--input", o.input, "Long-format CSV: book,pattern,value");
        builtin->excludes(input);
        s->add_flag("--counts", o.counts, "Input values are counts, not percents");
        s->add_option("--scaling", o.scaling, "percent (value/100) or unit-sum")
            ->check(CLI::IsMember({"percent", "unit-sum"}));
    };
    auto output_flags = [&o](CLI::App* s) {
        s->add_option("--format", o.format, "csv, json, md or svg")->check(CLI::IsMember({"csv", "json", "md", "svg"}));
        s->add_option("--threads", o.threads, "Worker threads")->check(CLI::Range(1u, 1024u));
        s->add_flag("--allow-mismatch", o.allow_mismatch, "Exit 0 even when a reproduction check fails");
    };

    std::map<CLI::App*, Report (*)(const Options&)> handlers;
    auto sub = [&](const char* name, const char* help, Report (*fn)(const Options&)) {
        auto* s = app.add_subcommand(name, help);
        output_flags(s);
        handlers[s] = fn;
        return s;
    };

    auto* margins = sub("margins", "First order margins per book", cmd_margins);
    data_flags(margins);
    margins->add_option("--book", o.book, "Single book (default: all)");

    auto* adjust = sub("adjust", "Adjusted second order margins per book", cmd_adjust);
    data_flags(adjust);
    adjust->add_option("--book", o.book, "Single book (default: all, with L1 sums)");

    auto* tr = sub("transform", "Radon transform of a book over a base", cmd_transform);
    data_flags(tr);
    tr->add_option("--book", o.book, "Book")->required();
    tr->add_option("--base", o.base, "marginal, pairs, affine-hyperplanes or affine:<codim>");

    auto* inv = sub("invert", "Invert a transform (from a file, or a round trip of a book)", cmd_invert);
    data_flags(inv);
    inv->add_option("--book", o.book, "Book for a round trip");
    inv->add_option("--transform-file", o.transform_file, "CSV block,value");
    inv->add_option("--base", o.base, "marginal, pairs, affine-hyperplanes or affine:<codim>");

    auto* pursue = sub("pursue", "Least uniform partition of a base", cmd_pursue);
    data_flags(pursue);
    pursue->add_option("--book", o.book, "Book")->required();
    pursue->add_option("--base", o.base, "marginal, pairs, affine-hyperplanes or affine:<codim>");
    pursue->add_option("--index", o.index, "discrepancy, tv, hellinger or wasserstein")
        ->check(CLI::IsMember({"discrepancy", "tv", "hellinger", "wasserstein"}));
    pursue->add_option("--ground", o.ground, "Ground metric CSV over block positions (wasserstein)");

    auto* scan = sub("scan-affine", "Rank every nonzero z by the hyperplane contrast", cmd_scan);
    data_flags(scan);
    scan->add_option("--book", o.book, "Book")->required();
    scan->add_option("--against", o.against, "Subtract this book's contrast");

    auto* rank = sub("rank", "Rank books by distance of adjusted margin profiles", cmd_rank);
    data_flags(rank);
    rank->add_option("--reference", o.reference, "Reference book");
    rank->add_option("--metric", o.metric, "tv, hellinger or wasserstein");
    rank->add_option("--penalty", o.penalty, "abs or sqrt (sqrt with hellinger only)");

    auto* ver = sub("verify", "Check a published result numerically", cmd_verify);
    ver->add_option("target", o.target, "thm4.1 thm4.5 thm4.6 thm5.1 thm5.2 thm5.4 table15")
        ->required()
        ->check(CLI::IsMember(verify_targets()));
    ver->add_option("--seed", o.seed, "Seed (required for Monte Carlo targets)");
    ver->add_option("--trials", o.trials, "Sample count override");

    auto* report = sub("plato-report", "Full reproduction of the Plato tables", cmd_plato_report);
    data_flags(report);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_invalid;
    }

    try {
        for (auto& [s, fn] : handlers)
            if (s->parsed()) {
                const Report r = fn(o);
                emit(r, o.format, out);
                if (!r.pass()) {
                    list_failures(r, err);
                    return o.allow_mismatch ? exit_ok : exit_mismatch;
                }
                return exit_ok;
            }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_invalid;
    }
    return exit_invalid;
}

} // namespace dpp::cli
