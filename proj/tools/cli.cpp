#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mcss/builders.hpp"
#include "mcss/mcx_format.hpp"
#include "mcss/oracle.hpp"
#include "mcss/pages.hpp"

namespace mcss::cli {

namespace {

using json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exit early from a command with a mathematical failure already reported.
struct Failure {};

Ring parse_ring(std::string s)
{
    s.erase(std::remove_if(s.begin(), s.end(), [](char ch) { return ch == ' ' || ch == '_'; }), s.end());
    if (s == "Q")
        return Ring::rationals();
    if (s == "Z")
        return Ring::integers();
    if (s.size() > 1 && s[0] == 'F' && std::all_of(s.begin() + 1, s.end(), ::isdigit)) {
        try {
            return Ring::prime_field(std::stoll(s.substr(1)));
        } catch (const std::exception& e) {
            throw UsageError(e.what());
        }
    }
    throw UsageError("unknown ring '" + s + "' (expected Q, Z or 'F <p>')");
}

std::string read_input(const std::string& path, std::istream& in)
{
    std::ostringstream ss;
    if (path == "-") {
        ss << in.rdbuf();
        return ss.str();
    }
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw UsageError("cannot open '" + path + "'");
    ss << f.rdbuf();
    return ss.str();
}

Multicomplex load(const std::string& path, const std::string& ring, std::istream& in)
{
    Multicomplex c = parse_mcx(read_input(path, in));
    if (ring.empty())
        return c;
    try {
        return change_ring(c, parse_ring(ring));
    } catch (const Error& e) {
        throw UsageError(std::string("cannot rebase: ") + e.what());
    }
}

void write_output(const std::string& path, const std::string& text, std::ostream& out)
{
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw UsageError("cannot write '" + path + "'");
    f << text;
}

// Prints violations; true if there were any.
bool report_violations(const Multicomplex& c, std::ostream& out)
{
    auto v = validate(c);
    for (const auto& x : v)
        out << "violation n=" << x.n << " at " << x.source.str() << ": sum d_i d_j = " << x.composite.str() << "\n";
    return !v.empty();
}

void require_valid(const Multicomplex& c, std::ostream& out)
{
    if (report_violations(c, out))
        throw Failure{};
}

json number(const mpz_class& v)
{
    if (v.fits_slong_p())
        return v.get_si();
    return v.get_str();
}

json orders_json(const std::vector<mpz_class>& orders)
{
    json a = json::array();
    for (const auto& o : orders)
        a.push_back(number(o));
    return a;
}

json entry_json(const Quotient& q)
{
    return json{{"size", q.size()}, {"orders", orders_json(q.orders())}, {"group", q.describe()}};
}

json vec_json(const Vec& v)
{
    json a = json::array();
    for (const auto& x : v)
        a.push_back(x.str());
    return a;
}

json matrix_json(const Mat& m)
{
    json a = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
        a.push_back(vec_json(m.row(i)));
    return a;
}

json cell_json(Bidegree b) { return json::array({b.a, b.b}); }

std::size_t display_width(const std::string& s)
{
    return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char ch) { return (ch & 0xC0) != 0x80; }));
}

std::string pad_left(const std::string& s, std::size_t w)
{
    const std::size_t n = display_width(s);
    return std::string(w > n ? w - n : 0, ' ') + s;
}

// Grid of one page: rows q descending, columns p ascending, "." for zero.
void print_page(const Multicomplex& c, const Page& page, std::ostream& out)
{
    out << "E_" << page.r << "\n";
    if (c.empty()) {
        out << "  (empty)\n";
        return;
    }
    auto label = [&](int p, int q) {
        const PageEntry* e = page.find({p, q});
        return e && !e->quot.trivial() ? e->quot.describe() : std::string(".");
    };
    std::size_t w = 3;
    for (int p = c.min_a(); p <= c.max_a(); ++p) {
        w = std::max(w, std::to_string(p).size());
        for (int q = c.min_b(); q <= c.max_b(); ++q)
            w = std::max(w, display_width(label(p, q)));
    }
    out << "  " << pad_left("q\\p", 4);
    for (int p = c.min_a(); p <= c.max_a(); ++p)
        out << "  " << pad_left(std::to_string(p), w);
    out << "\n";
    for (int q = c.max_b(); q >= c.min_b(); --q) {
        out << "  " << pad_left(std::to_string(q), 4);
        for (int p = c.min_a(); p <= c.max_a(); ++p)
            out << "  " << pad_left(label(p, q), w);
        out << "\n";
    }
}

void print_differentials(const Page& page, std::ostream& out)
{
    for (const auto& d : page.differentials)
        if (!d.matrix.is_zero())
            out << "  delta_" << d.r << " " << d.source.str() << " -> " << d.target.str() << ": " << d.matrix.str()
                << "\n";
}

int max_r_or_bound(const Multicomplex& c, int max_r)
{
    if (max_r < 0)
        return stabilization_bound(c);
    return max_r;
}

int cmd_validate(const Multicomplex& c, std::ostream& out)
{
    if (report_violations(c, out))
        return kMathFailure;
    out << "OK\n";
    return kOk;
}

int cmd_pages(const Multicomplex& c, int max_r, bool as_json, std::ostream& out)
{
    require_valid(c, out);
    const int rmax = max_r_or_bound(c, max_r);
    std::vector<Page> pages;
    for (int r = 0; r <= rmax; ++r)
        pages.push_back(full_page(c, r));

    if (as_json) {
        json doc{{"ring", c.ring().name()}, {"max_r", rmax}};
        json jp = json::object(), jd = json::object();
        for (const auto& page : pages) {
            json byp = json::object();
            for (const auto& [cell, e] : page.entries)
                byp[std::to_string(cell.a)][std::to_string(cell.b)] = entry_json(e.quot);
            jp[std::to_string(page.r)] = std::move(byp);
            json list = json::array();
            for (const auto& d : page.differentials)
                if (!d.matrix.is_zero())
                    list.push_back(json{{"source", cell_json(d.source)},
                                        {"target", cell_json(d.target)},
                                        {"matrix", matrix_json(d.matrix)}});
            jd[std::to_string(page.r)] = std::move(list);
        }
        doc["pages"] = std::move(jp);
        doc["differentials"] = std::move(jd);
        out << doc.dump(2) << "\n";
        return kOk;
    }

    out << "ring " << c.ring().name() << "\n";
    for (const auto& page : pages) {
        print_page(c, page, out);
        print_differentials(page, out);
    }
    return kOk;
}

int cmd_diff(const Multicomplex& c, int r, int p, int q, bool as_json, std::ostream& out)
{
    require_valid(c, out);
    if (r < 0)
        throw UsageError("-r must be non-negative");
    const Bidegree src{p, q}, tgt{p - r, q + r - 1};
    const PageEntry es = page_entry(c, r, src);
    const PageEntry et = page_entry(c, r, tgt);
    const PageDifferential d = delta_r(c, es, et);

    auto gens = [](const PageEntry& e) {
        std::vector<Vec> g;
        for (std::size_t j = 0; j < e.quot.size(); ++j)
            g.push_back(e.quot.lift(j));
        return g;
    };

    if (as_json) {
        auto side = [&](const PageEntry& e) {
            json j = entry_json(e.quot);
            j["cell"] = cell_json(e.cell);
            json g = json::array();
            for (const auto& v : gens(e))
                g.push_back(vec_json(v));
            j["generators"] = std::move(g);
            return j;
        };
        json doc{{"ring", c.ring().name()}, {"r", r}, {"source", side(es)}, {"target", side(et)},
                 {"matrix", matrix_json(d.matrix)}};
        out << doc.dump(2) << "\n";
        return kOk;
    }

    auto show = [&](const char* role, const PageEntry& e) {
        out << role << " E_" << r << "^" << e.cell.str() << " = " << (e.quot.trivial() ? "0" : e.quot.describe())
            << "\n";
        auto g = gens(e);
        for (std::size_t j = 0; j < g.size(); ++j)
            out << "  x_" << j << " = " << vec_str(g[j]) << "\n";
    };
    show("source", es);
    show("target", et);
    out << "delta_" << r << " = " << d.matrix.str() << "\n";
    return kOk;
}

int cmd_compare(const Multicomplex& c, int max_r, bool as_json, std::ostream& out)
{
    require_valid(c, out);
    CompareOptions opt;
    opt.max_r = max_r;
    const CompareReport rep = compare(c, opt);
    if (as_json) {
        json fails = json::array();
        for (const auto& f : rep.failures)
            fails.push_back(json{{"r", f.r}, {"p", f.cell.a}, {"q", f.cell.b}, {"what", f.what}});
        json doc{{"ring", c.ring().name()},
                 {"compare",
                  {{"ok", rep.ok()},
                   {"max_r", rep.max_r},
                   {"cells_checked", rep.cells_checked},
                   {"failures", std::move(fails)}}}};
        out << doc.dump(2) << "\n";
    } else {
        for (const auto& f : rep.failures)
            out << "FAIL r=" << f.r << " " << f.cell.str() << ": " << f.what << "\n";
        if (rep.ok())
            out << "OK: " << rep.cells_checked << " cells agree on pages 0.." << rep.max_r << "\n";
        else
            out << rep.failures.size() << " failing cells\n";
    }
    return rep.ok() ? kOk : kMathFailure;
}

int cmd_homology(const Multicomplex& c, bool as_json, std::ostream& out)
{
    require_valid(c, out);
    const TotalComplex t = totalize(c);
    std::vector<HomologyGroup> hs;
    for (int n = t.min_degree(); n <= t.max_degree(); ++n)
        hs.push_back(homology(t, n));
    if (as_json) {
        json h = json::object();
        for (const auto& g : hs)
            h[std::to_string(g.n)] = json{{"size", g.orders.size()}, {"orders", orders_json(g.orders)},
                                          {"group", g.describe()}};
        out << json{{"ring", c.ring().name()}, {"homology", std::move(h)}}.dump(2) << "\n";
        return kOk;
    }
    out << "ring " << c.ring().name() << "\n";
    for (const auto& g : hs)
        out << "H_" << g.n << " = " << g.describe() << "\n";
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Spectral sequences of multicomplexes, computed directly and via the total complex", "mcss"};
    app.require_subcommand(1);

    std::string file, ring, output;
    int max_r = -1, r = 0, p = 0, q = 0;
    bool as_json = false;

    auto* validate_cmd = app.add_subcommand("validate", "Check the multicomplex relations");
    validate_cmd->add_option("file", file, "MCX file, '-' for stdin")->required();
    validate_cmd->add_option("--ring", ring, "Reinterpret entries over Q, Z or 'F <p>'");

    auto* pages_cmd = app.add_subcommand("pages", "Print E_0..E_R and every nonzero differential");
    pages_cmd->add_option("file", file, "MCX file, '-' for stdin")->required();
    pages_cmd->add_option("--ring", ring, "Reinterpret entries over Q, Z or 'F <p>'");
    pages_cmd->add_option("--max-r", max_r, "Last page (default: stabilization bound)")->check(CLI::NonNegativeNumber);
    pages_cmd->add_flag("--json", as_json, "Structured output");

    auto* diff_cmd = app.add_subcommand("diff", "Show one page differential with its generators");
    diff_cmd->add_option("file", file, "MCX file, '-' for stdin")->required();
    diff_cmd->add_option("--ring", ring, "Reinterpret entries over Q, Z or 'F <p>'");
    diff_cmd->add_option("-r", r, "Page")->required()->check(CLI::NonNegativeNumber);
    diff_cmd->add_option("-p", p, "First index of the source cell")->required();
    diff_cmd->add_option("-q", q, "Second index of the source cell")->required();
    diff_cmd->add_flag("--json", as_json, "Structured output");

    auto* compare_cmd = app.add_subcommand("compare", "Cross-check the direct pages against the total complex");
    compare_cmd->add_option("file", file, "MCX file, '-' for stdin")->required();
    compare_cmd->add_option("--ring", ring, "Reinterpret entries over Q, Z or 'F <p>'");
    compare_cmd->add_option("--max-r", max_r, "Last page (default: stabilization bound)")
        ->check(CLI::NonNegativeNumber);
    compare_cmd->add_flag("--json", as_json, "Structured output");

    auto* homology_cmd = app.add_subcommand("homology", "Homology of the total complex");
    homology_cmd->add_option("file", file, "MCX file, '-' for stdin")->required();
    homology_cmd->add_option("--ring", ring, "Reinterpret entries over Q, Z or 'F <p>'");
    homology_cmd->add_flag("--json", as_json, "Structured output");

    std::string name;
    int ex_n = 1, ex_len = 3;
    WallParams wp;
    auto* example_cmd = app.add_subcommand("example", "Write a built-in example as MCX");
    example_cmd->add_option("name", name, "staircase | hurtubise | wall")->required();
    auto* opt_n = example_cmd->add_option("--n", ex_n, "Hurtubise example number (1-4)");
    auto* opt_len = example_cmd->add_option("--len", ex_len, "Staircase length (>= 2)");
    auto* opt_wr = example_cmd->add_option("--r", wp.rK, "Wall: order of x");
    auto* opt_ws = example_cmd->add_option("--s", wp.s, "Wall: order of y");
    auto* opt_wt = example_cmd->add_option("--t", wp.t, "Wall: y^-1 x y = x^t");
    auto* opt_wa = example_cmd->add_option("--amax", wp.amax, "Wall: last column");
    auto* opt_ering = example_cmd->add_option("--ring", ring, "Q, Z or 'F <p>' (not for wall)");
    example_cmd->add_option("-o,--output", output, "Output file (default stdout)");

    RandomSpec rs;
    std::string rring = "Q";
    bool no_conjugate = false;
    auto* random_cmd = app.add_subcommand("random", "Write a random valid multicomplex as MCX");
    random_cmd->add_option("--seed", rs.seed, "PRNG seed");
    random_cmd->add_option("--width", rs.width, "Columns 0..width-1")->check(CLI::Range(1, 64));
    random_cmd->add_option("--height", rs.height, "Rows 0..height-1")->check(CLI::Range(1, 64));
    random_cmd->add_option("--maxrank", rs.maxrank, "Rank bound per cell")->check(CLI::Range(1, 64));
    random_cmd->add_option("--maxd", rs.maxd, "Largest nonzero d_i")->check(CLI::Range(0, 64));
    random_cmd->add_option("--ring", rring, "Q, Z or 'F <p>'");
    random_cmd->add_flag("--no-conjugate", no_conjugate, "Skip the random change of basis");
    random_cmd->add_option("-o,--output", output, "Output file (default stdout)");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsageError;
    }

    try {
        if (validate_cmd->parsed())
            return cmd_validate(load(file, ring, in), out);
        if (pages_cmd->parsed())
            return cmd_pages(load(file, ring, in), max_r, as_json, out);
        if (diff_cmd->parsed())
            return cmd_diff(load(file, ring, in), r, p, q, as_json, out);
        if (compare_cmd->parsed())
            return cmd_compare(load(file, ring, in), max_r, as_json, out);
        if (homology_cmd->parsed())
            return cmd_homology(load(file, ring, in), as_json, out);
        if (example_cmd->parsed()) {
            auto reject = [&](std::initializer_list<CLI::Option*> opts) {
                for (auto* o : opts)
                    if (o->count())
                        throw UsageError("option " + o->get_name() + " does not apply to '" + name + "'");
            };
            Multicomplex c;
            std::string header;
            try {
                if (name == "staircase") {
                    reject({opt_n, opt_wr, opt_ws, opt_wt, opt_wa});
                    c = staircase(opt_len->count() ? ex_len : 2, ring.empty() ? Ring::rationals() : parse_ring(ring));
                } else if (name == "hurtubise") {
                    reject({opt_wr, opt_ws, opt_wt, opt_wa});
                    c = hurtubise(ex_n, ring.empty() ? Ring::rationals() : parse_ring(ring), ex_len);
                } else if (name == "wall") {
                    reject({opt_n, opt_len, opt_ering});
                    c = wall(wp);
                    // Cells nearer the window edge may lack the rooms their witnesses need.
                    header = "# wall r=" + std::to_string(wp.rK) + " s=" + std::to_string(wp.s) +
                             " t=" + std::to_string(wp.t) + " amax=" + std::to_string(wp.amax) +
                             "\n# truncation-safe interior for Delta_r: p <= " + std::to_string(wp.amax) + " - 2r\n";
                } else {
                    throw UsageError("unknown example '" + name + "' (staircase, hurtubise, wall)");
                }
            } catch (const Error& e) {
                throw UsageError(e.what());
            }
            write_output(output, header + emit_mcx(c), out);
            return kOk;
        }
        if (random_cmd->parsed()) {
            rs.ring = parse_ring(rring);
            rs.conjugate = !no_conjugate;
            Multicomplex c;
            try {
                c = random_mcx(rs);
            } catch (const Error& e) {
                throw UsageError(e.what());
            }
            write_output(output, emit_mcx(c), out);
            return kOk;
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kParseError;
    } catch (const Failure&) {
        return kMathFailure;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kMathFailure;
    }
    return kUsageError;
}

}  // namespace mcss::cli
