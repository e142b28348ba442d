#include "mcss/mcx_format.hpp"

#include <cctype>
#include <charconv>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

namespace mcss {

namespace {

std::vector<std::string> split_ws(std::string_view s)
{
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i])))
            ++i;
        std::size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])))
            ++j;
        if (j > i)
            out.emplace_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

std::optional<long long> parse_int(const std::string& s)
{
    long long v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        return std::nullopt;
    return v;
}

bool is_integer_literal(const std::string& s)
{
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size())
        return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            return false;
    return true;
}

mpz_class big_int(const std::string& s)
{
    return mpz_class(s[0] == '+' ? s.substr(1) : s, 10);
}

struct PendingMap {
    int line;
    int i;
    Bidegree src;
    std::vector<std::vector<Scalar>> rows;
};

}  // namespace

Multicomplex parse_mcx(std::string_view text)
{
    std::istringstream in{std::string(text)};
    std::string raw;
    int lineno = 0;
    bool header = false;
    std::optional<Ring> ring;
    std::map<Bidegree, std::pair<int, int>> modules;  // bd -> (rank, line)
    std::vector<PendingMap> maps;
    std::map<MapKey, int> map_lines;

    while (std::getline(in, raw)) {
        ++lineno;
        std::string_view line(raw);
        if (auto h = line.find('#'); h != std::string_view::npos)
            line = line.substr(0, h);
        auto tok = split_ws(line);
        if (tok.empty())
            continue;

        if (!header) {
            if (tok.size() != 2 || tok[0] != "mcx" || tok[1] != "1")
                throw ParseError(lineno, "expected header 'mcx 1'");
            header = true;
            continue;
        }
        if (!ring) {
            if (tok[0] != "ring")
                throw ParseError(lineno, "expected ring declaration");
            if (tok.size() == 2 && tok[1] == "Q")
                ring = Ring::rationals();
            else if (tok.size() == 2 && tok[1] == "Z")
                ring = Ring::integers();
            else if (tok.size() == 3 && tok[1] == "F") {
                auto p = parse_int(tok[2]);
                if (!p)
                    throw ParseError(lineno, "malformed characteristic '" + tok[2] + "'");
                try {
                    ring = Ring::prime_field(*p);
                } catch (const Error& e) {
                    throw ParseError(lineno, e.what());
                }
            } else
                throw ParseError(lineno, "unknown ring");
            continue;
        }

        if (tok[0] == "module") {
            if (tok.size() != 4)
                throw ParseError(lineno, "module line needs <a> <b> <rank>");
            auto a = parse_int(tok[1]), b = parse_int(tok[2]), r = parse_int(tok[3]);
            if (!a || !b || !r)
                throw ParseError(lineno, "malformed integer in module line");
            if (*r < 1)
                throw ParseError(lineno, "module rank must be at least 1");
            Bidegree bd{static_cast<int>(*a), static_cast<int>(*b)};
            if (!modules.emplace(bd, std::pair{static_cast<int>(*r), lineno}).second)
                throw ParseError(lineno, "duplicate module " + bd.str());
            continue;
        }

        if (tok[0] == "map") {
            if (tok.size() < 5 || tok[4] != ":")
                throw ParseError(lineno, "map line needs '<i> <a> <b> :' followed by entries");
            auto i = parse_int(tok[1]), a = parse_int(tok[2]), b = parse_int(tok[3]);
            if (!i || !a || !b)
                throw ParseError(lineno, "malformed integer in map line");
            if (*i < 0)
                throw ParseError(lineno, "structure map index must be non-negative");
            PendingMap pm{lineno, static_cast<int>(*i), {static_cast<int>(*a), static_cast<int>(*b)}, {{}}};
            for (std::size_t k = 5; k < tok.size(); ++k) {
                const std::string& t = tok[k];
                if (t == ";") {
                    pm.rows.emplace_back();
                    continue;
                }
                Scalar v;
                if (auto slash = t.find('/'); slash != std::string::npos) {
                    std::string num = t.substr(0, slash), den = t.substr(slash + 1);
                    if (!is_integer_literal(num) || !is_integer_literal(den))
                        throw ParseError(lineno, "malformed entry '" + t + "'");
                    if (ring->kind() != RingKind::Rationals)
                        throw ParseError(lineno, "rational entry '" + t + "' is only allowed over Q");
                    mpz_class d = big_int(den);
                    if (d == 0)
                        throw ParseError(lineno, "zero denominator in '" + t + "'");
                    v = Scalar(mpq_class(big_int(num), d));
                } else {
                    if (!is_integer_literal(t))
                        throw ParseError(lineno, "malformed entry '" + t + "'");
                    v = Scalar(big_int(t));
                }
                pm.rows.back().push_back(ring->normalize(v));
            }
            MapKey key{pm.i, pm.src};
            if (!map_lines.emplace(key, lineno).second)
                throw ParseError(lineno, "duplicate map d_" + std::to_string(pm.i) + " on " + pm.src.str());
            maps.push_back(std::move(pm));
            continue;
        }

        throw ParseError(lineno, "unknown directive '" + tok[0] + "'");
    }
    if (!header)
        throw ParseError(lineno + 1, "missing header 'mcx 1'");
    if (!ring)
        throw ParseError(lineno + 1, "missing ring declaration");

    Multicomplex c(*ring);
    for (const auto& [bd, rl] : modules)
        c.add_module(bd, rl.first);
    for (const auto& pm : maps) {
        const std::size_t cols = pm.rows.front().size();
        for (const auto& r : pm.rows)
            if (r.size() != cols || cols == 0)
                throw ParseError(pm.line, "ragged or empty matrix rows");
        Mat m(*ring, pm.rows.size(), cols);
        for (std::size_t r = 0; r < pm.rows.size(); ++r)
            for (std::size_t k = 0; k < cols; ++k)
                m.set(r, k, pm.rows[r][k]);
        const Bidegree tgt = structure_target(pm.i, pm.src);
        if (!c.has_module(pm.src))
            throw ParseError(pm.line, "map from undeclared module " + pm.src.str());
        if (!c.has_module(tgt)) {
            if (!m.is_zero())
                throw ParseError(pm.line, "nonzero map into rank-0 module " + tgt.str());
            continue;
        }
        if (m.rows() != static_cast<std::size_t>(c.rank(tgt)) || m.cols() != static_cast<std::size_t>(c.rank(pm.src)))
            throw ParseError(pm.line, "dimension mismatch: d_" + std::to_string(pm.i) + " on " + pm.src.str() +
                                          " must be " + std::to_string(c.rank(tgt)) + "x" +
                                          std::to_string(c.rank(pm.src)));
        c.set_map(pm.i, pm.src, m);
    }
    return c;
}

std::string emit_mcx(const Multicomplex& c)
{
    std::ostringstream os;
    os << "mcx 1\nring " << c.ring().name() << '\n';
    for (const auto& [bd, r] : c.ranks())
        os << "module " << bd.a << ' ' << bd.b << ' ' << r << '\n';
    for (const auto& [k, m] : c.maps()) {
        os << "map " << k.i << ' ' << k.source.a << ' ' << k.source.b << " :";
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i)
                os << " ;";
            for (std::size_t j = 0; j < m.cols(); ++j)
                os << ' ' << to_string(m(i, j));
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace mcss
