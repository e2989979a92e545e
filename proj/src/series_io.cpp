#include "lls/series_io.hpp"

#include <charconv>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <vector>

namespace lls {

namespace {

    using nlohmann::json;

    char direction_char(Direction d) { return to_string(d)[0]; }

    std::optional<Direction> direction_from(std::string_view s)
    {
        if (s == "1")
            return Direction::First;
        if (s == "2")
            return Direction::Second;
        if (s == "m")
            return Direction::Marked;
        return std::nullopt;
    }

    // ---- text ----------------------------------------------------------------

    std::string to_text(const LimitSeries& s)
    {
        std::ostringstream out;
        out << "lls-series " << series_format_version << '\n';
        out << "genus " << s.chain.genus() << '\n';
        out << "rank " << s.rank << '\n';
        out << "dimension " << s.dimension << '\n';
        out << "degree " << s.degree << '\n';
        out << "twist " << s.twist << '\n';
        for (std::size_t i = 0; i < s.components.size(); ++i) {
            const auto& c = s.components[i];
            out << "component " << i + 1 << ' ';
            if (const auto* line = std::get_if<SplitLineBundle>(&c.bundle))
                out << "line " << line->p << ' ' << line->q;
            else if (const auto* split = std::get_if<SplitBundle>(&c.bundle))
                out << "split " << split->first.p << ' ' << split->first.q << ' ' << split->second.p << ' '
                    << split->second.q << " moduli " << c.moduli_freedom();
            else {
                const auto& ind = std::get<IndecomposableBundle>(c.bundle);
                out << "indecomposable " << ind.degree << " marked " << ind.marked_u << ' ' << ind.marked_v;
            }
            out << "\nrows";
            for (auto r : c.table)
                out << ' ' << r.u << ':' << r.v;
            out << '\n';
        }
        for (std::size_t i = 0; i < s.nodes.size(); ++i) {
            const auto& n = s.nodes[i];
            out << "node " << i + 1 << " match";
            for (int m : n.matching)
                out << ' ' << m + 1;
            out << " forced";
            if (n.forced_pairs.empty())
                out << " none";
            for (const auto& fp : n.forced_pairs)
                out << ' ' << direction_char(fp.left) << '>' << direction_char(fp.right);
            out << '\n';
        }
        out << "end\n";
        return out.str();
    }

    class TextParser {
    public:
        explicit TextParser(std::string_view input) : input_(input) {}

        LimitSeries run()
        {
            expect_header();
            const int genus = keyed_int("genus");
            LimitSeries s;
            try {
                s.chain = ChainCurve(genus);
            }
            catch (const Error& e) {
                fail("genus", e.what());
            }
            s.rank = keyed_int("rank");
            s.dimension = keyed_int("dimension");
            s.degree = keyed_int("degree");
            s.twist = keyed_int("twist");
            if (s.rank != 1 && s.rank != 2)
                fail("rank", "must be 1 or 2");
            if (s.dimension < 1)
                fail("dimension", "must be positive");

            for (int i = 1; i <= genus; ++i) {
                auto tok = record("component");
                index(tok, 1, i, "component");
                s.components.push_back(component(tok, s.rank));
                auto rows = record("rows");
                s.components.back().table = table(rows, s.dimension);
            }
            for (int i = 1; i < genus; ++i) {
                auto tok = record("node");
                index(tok, 1, i, "node");
                s.nodes.push_back(node(tok, s.dimension));
            }
            auto tok = record("end");
            if (tok.size() != 1)
                fail("end", "unexpected trailing fields");
            if (next_line())
                fail("end", "content after end");
            return s;
        }

    private:
        std::string_view input_;
        std::size_t pos_ = 0;
        int line_no_ = 0;
        std::string line_;

        [[noreturn]] void fail(const std::string& field, const std::string& msg) const
        {
            throw ParseError(line_no_, field, msg);
        }

        bool next_line()
        {
            while (pos_ < input_.size()) {
                auto end = input_.find('\n', pos_);
                if (end == std::string_view::npos)
                    end = input_.size();
                line_ = std::string(input_.substr(pos_, end - pos_));
                pos_ = end + 1;
                ++line_no_;
                if (!line_.empty() && line_.back() == '\r')
                    line_.pop_back();
                if (line_.find_first_not_of(" \t") != std::string::npos && line_[line_.find_first_not_of(" \t")] != '#')
                    return true;
            }
            return false;
        }

        std::vector<std::string> record(const std::string& keyword)
        {
            if (!next_line())
                fail(keyword, "unexpected end of input");
            std::istringstream in(line_);
            std::vector<std::string> tok;
            for (std::string t; in >> t;)
                tok.push_back(t);
            if (tok.front() != keyword)
                fail(keyword, "expected '" + keyword + "' record, found '" + tok.front() + "'");
            return tok;
        }

        int to_int(const std::string& text, const std::string& field) const
        {
            int value = 0;
            auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
            if (ec != std::errc() || ptr != text.data() + text.size())
                fail(field, "'" + text + "' is not an integer");
            return value;
        }

        int field_int(const std::vector<std::string>& tok, std::size_t at, const std::string& field) const
        {
            if (at >= tok.size())
                fail(field, "missing value");
            return to_int(tok[at], field);
        }

        void expect_header()
        {
            auto tok = record("lls-series");
            if (tok.size() != 2)
                fail("lls-series", "expected a version number");
            const int version = to_int(tok[1], "version");
            if (version != series_format_version)
                fail("version", "unsupported version " + tok[1]);
        }

        int keyed_int(const std::string& key)
        {
            auto tok = record(key);
            if (tok.size() != 2)
                fail(key, "expected one value");
            return to_int(tok[1], key);
        }

        void index(const std::vector<std::string>& tok, std::size_t at, int expected, const std::string& what) const
        {
            if (field_int(tok, at, what + " index") != expected)
                fail(what + " index", "expected " + std::to_string(expected));
        }

        Component component(const std::vector<std::string>& tok, int rank) const
        {
            if (tok.size() < 3)
                fail("component", "missing bundle kind");
            const std::string& kind = tok[2];
            if (kind == "line") {
                if (rank != 1 || tok.size() != 5)
                    fail("bundle", "line bundles need 'line p q' in rank 1");
                return {SplitLineBundle{field_int(tok, 3, "p"), field_int(tok, 4, "q")}, {}};
            }
            if (kind == "split") {
                if (rank != 2 || tok.size() != 9 || tok[7] != "moduli")
                    fail("bundle", "split bundles need 'split p q p q moduli n' in rank 2");
                const int moduli = field_int(tok, 8, "moduli");
                if (moduli != 0 && moduli != 1)
                    fail("moduli", "must be 0 or 1");
                return {SplitBundle{{field_int(tok, 3, "p"), field_int(tok, 4, "q")},
                            {field_int(tok, 5, "p"), field_int(tok, 6, "q")}, moduli == 1},
                    {}};
            }
            if (kind == "indecomposable") {
                if (rank != 2 || tok.size() != 7 || tok[4] != "marked")
                    fail("bundle", "expected 'indecomposable degree marked u v' in rank 2");
                return {IndecomposableBundle{field_int(tok, 3, "degree"), field_int(tok, 5, "marked u"),
                            field_int(tok, 6, "marked v")},
                    {}};
            }
            fail("bundle", "unknown kind '" + kind + "'");
        }

        VanishingTable table(const std::vector<std::string>& tok, int k) const
        {
            if (static_cast<int>(tok.size()) != k + 1)
                fail("rows", "expected " + std::to_string(k) + " rows, found " + std::to_string(tok.size() - 1));
            VanishingTable t;
            for (std::size_t j = 1; j < tok.size(); ++j) {
                const auto colon = tok[j].find(':');
                if (colon == std::string::npos)
                    fail("rows", "row " + std::to_string(j) + " is not u:v");
                t.push_back({to_int(tok[j].substr(0, colon), "row " + std::to_string(j) + " u"),
                    to_int(tok[j].substr(colon + 1), "row " + std::to_string(j) + " v")});
            }
            return t;
        }

        NodeGluing node(const std::vector<std::string>& tok, int k) const
        {
            if (tok.size() < 3 || tok[2] != "match")
                fail("node", "expected 'match'");
            NodeGluing n;
            std::size_t at = 3;
            for (; at < tok.size() && tok[at] != "forced"; ++at)
                n.matching.push_back(to_int(tok[at], "match") - 1);
            if (static_cast<int>(n.matching.size()) != k)
                fail("match", "expected " + std::to_string(k) + " entries");
            if (at == tok.size())
                fail("forced", "missing forced list");
            ++at;
            if (at < tok.size() && tok[at] == "none") {
                if (at + 1 != tok.size())
                    fail("forced", "'none' must stand alone");
                return n;
            }
            if (at == tok.size())
                fail("forced", "empty list; write 'none'");
            for (; at < tok.size(); ++at) {
                const auto gt = tok[at].find('>');
                auto l = gt == std::string::npos ? std::nullopt : direction_from(std::string_view(tok[at]).substr(0, gt));
                auto r = gt == std::string::npos ? std::nullopt : direction_from(std::string_view(tok[at]).substr(gt + 1));
                if (!l || !r)
                    fail("forced", "'" + tok[at] + "' is not a direction pair like 1>2");
                n.forced_pairs.push_back({*l, *r});
            }
            return n;
        }
    };

    // ---- structured ------------------------------------------------------------

    std::string to_structured(const LimitSeries& s)
    {
        json doc;
        doc["format"] = "lls-series";
        doc["version"] = series_format_version;
        doc["genus"] = s.chain.genus();
        doc["rank"] = s.rank;
        doc["dimension"] = s.dimension;
        doc["degree"] = s.degree;
        doc["twist"] = s.twist;
        json comps = json::array();
        for (std::size_t i = 0; i < s.components.size(); ++i) {
            const auto& c = s.components[i];
            json b;
            if (const auto* line = std::get_if<SplitLineBundle>(&c.bundle)) {
                b = {{"kind", "line"}, {"class", {line->p, line->q}}};
            }
            else if (const auto* split = std::get_if<SplitBundle>(&c.bundle)) {
                b = {{"kind", "split"},
                    {"summands", {{split->first.p, split->first.q}, {split->second.p, split->second.q}}},
                    {"moduli", c.moduli_freedom()}};
            }
            else {
                const auto& ind = std::get<IndecomposableBundle>(c.bundle);
                b = {{"kind", "indecomposable"}, {"degree", ind.degree}, {"marked", {ind.marked_u, ind.marked_v}}};
            }
            json rows = json::array();
            for (auto r : c.table)
                rows.push_back({r.u, r.v});
            comps.push_back({{"index", i + 1}, {"bundle", b}, {"rows", rows}});
        }
        doc["components"] = comps;
        json nodes = json::array();
        for (std::size_t i = 0; i < s.nodes.size(); ++i) {
            json match = json::array();
            for (int m : s.nodes[i].matching)
                match.push_back(m + 1);
            json forced = json::array();
            for (const auto& fp : s.nodes[i].forced_pairs)
                forced.push_back({to_string(fp.left), to_string(fp.right)});
            nodes.push_back({{"index", i + 1}, {"matching", match}, {"forced", forced}});
        }
        doc["nodes"] = nodes;
        return doc.dump(2) + "\n";
    }

    LimitSeries from_structured(std::string_view input)
    {
        json doc;
        try {
            doc = json::parse(input);
        }
        catch (const json::parse_error& e) {
            throw ParseError(0, "json", e.what());
        }
        std::string where = "document";
        try {
            if (doc.at("format").get<std::string>() != "lls-series")
                throw ParseError(0, "format", "not an lls-series document");
            if (doc.at("version").get<int>() != series_format_version)
                throw ParseError(0, "version", "unsupported version " + doc.at("version").dump());
            LimitSeries s;
            s.chain = ChainCurve(doc.at("genus").get<int>());
            s.rank = doc.at("rank").get<int>();
            s.dimension = doc.at("dimension").get<int>();
            s.degree = doc.at("degree").get<int>();
            s.twist = doc.at("twist").get<int>();
            for (const auto& c : doc.at("components")) {
                where = "component " + c.at("index").dump();
                const auto& b = c.at("bundle");
                const auto kind = b.at("kind").get<std::string>();
                Component comp;
                if (kind == "line") {
                    comp.bundle = SplitLineBundle{b.at("class").at(0).get<int>(), b.at("class").at(1).get<int>()};
                }
                else if (kind == "split") {
                    const auto& sm = b.at("summands");
                    comp.bundle = SplitBundle{{sm.at(0).at(0).get<int>(), sm.at(0).at(1).get<int>()},
                        {sm.at(1).at(0).get<int>(), sm.at(1).at(1).get<int>()}, b.at("moduli").get<int>() == 1};
                }
                else if (kind == "indecomposable") {
                    comp.bundle = IndecomposableBundle{
                        b.at("degree").get<int>(), b.at("marked").at(0).get<int>(), b.at("marked").at(1).get<int>()};
                }
                else {
                    throw ParseError(0, where, "unknown bundle kind " + kind);
                }
                for (const auto& r : c.at("rows"))
                    comp.table.push_back({r.at(0).get<int>(), r.at(1).get<int>()});
                s.components.push_back(std::move(comp));
            }
            for (const auto& n : doc.at("nodes")) {
                where = "node " + n.at("index").dump();
                NodeGluing node;
                for (const auto& m : n.at("matching"))
                    node.matching.push_back(m.get<int>() - 1);
                for (const auto& fp : n.at("forced")) {
                    auto l = direction_from(fp.at(0).get<std::string>());
                    auto r = direction_from(fp.at(1).get<std::string>());
                    if (!l || !r)
                        throw ParseError(0, where, "bad direction pair " + fp.dump());
                    node.forced_pairs.push_back({*l, *r});
                }
                s.nodes.push_back(std::move(node));
            }
            return s;
        }
        catch (const json::exception& e) {
            throw ParseError(0, where, e.what());
        }
        catch (const ParseError&) {
            throw;
        }
        catch (const Error& e) {
            throw ParseError(0, where, e.what());
        }
    }

}  // namespace

std::string serialize(const LimitSeries& series, SeriesFormat format)
{
    return format == SeriesFormat::Text ? to_text(series) : to_structured(series);
}

LimitSeries parse_series(std::string_view input)
{
    const auto first = input.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && input[first] == '{')
        return from_structured(input);
    return TextParser(input).run();
}

}  // namespace lls
