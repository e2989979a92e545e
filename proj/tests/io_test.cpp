#include <doctest.h>

#include <json.hpp>

#include "lls/construct.hpp"
#include "lls/series_io.hpp"
#include "support.hpp"

using namespace lls;

namespace {

ParseError parse_failure(std::string_view text)
{
    try {
        parse_series(text);
    }
    catch (const ParseError& e) {
        return e;
    }
    FAIL("input parsed without error");
    return ParseError(-1, "", "");
}

}  // namespace

TEST_CASE("text format of a small series")
{
    const std::string text = serialize(construct_even(5, 4));
    CHECK(text.rfind("lls-series 1\ngenus 5\nrank 2\ndimension 4\ndegree 8\ntwist 4\n", 0) == 0);
    CHECK(text.find("component 1 split 0 4 0 4 moduli 0\nrows 0:4 0:4 1:2 1:2\n") != std::string::npos);
    CHECK(text.find("component 5 split 4 0 4 0 moduli 1\n") != std::string::npos);
    CHECK(text.find("node 2 match 1 2 3 4 forced 1>2 2>1\n") != std::string::npos);
    CHECK(text.size() >= 4);
    CHECK(text.substr(text.size() - 4) == "end\n");

    const std::string odd = serialize(construct_odd(7, 3));
    CHECK(odd.find("component 3 indecomposable 12 marked 2 4\n") != std::string::npos);
    const std::string line = serialize(canonical_limit_series(3));
    CHECK(line.find("component 2 line 2 2\nrows 0:3 2:2 3:0\n") != std::string::npos);
}

TEST_CASE("round trips are byte-identical")
{
    auto check = [](const LimitSeries& s) {
        for (auto format : {SeriesFormat::Text, SeriesFormat::Structured}) {
            const std::string once = serialize(s, format);
            const LimitSeries back = parse_series(once);
            CHECK(back == s);
            CHECK(serialize(back, format) == once);
            CHECK(validate_all(back).all_passed());
        }
    };
    for (auto [g, k] : testing::grid())
        check(construct(g, k));
    for (int g = 2; g <= 12; ++g)
        check(canonical_limit_series(g));
}

TEST_CASE("structured format carries a version")
{
    const auto doc = nlohmann::json::parse(serialize(construct_even(5, 4), SeriesFormat::Structured));
    CHECK(doc.at("format") == "lls-series");
    CHECK(doc.at("version") == series_format_version);

    auto bumped = doc;
    bumped["version"] = 2;
    CHECK(parse_failure(bumped.dump()).field() == "version");
    auto foreign = doc;
    foreign["format"] = "other";
    CHECK(parse_failure(foreign.dump()).field() == "format");
    CHECK(parse_failure("{ not json").field() == "json");
}

TEST_CASE("text parse errors name the line and field")
{
    const std::string good = serialize(construct_even(5, 4));

    const auto e1 = parse_failure("lls-series 1\ngenus x\n");
    CHECK(e1.line() == 2);
    CHECK(e1.field() == "genus");
    CHECK(e1.code() == "parse");

    CHECK(parse_failure("lls-series 2\n").line() == 1);
    CHECK(parse_failure("").line() >= 0);

    std::string bad_row = good;
    bad_row.replace(bad_row.find("rows 0:4 0:4 1:2 1:2"), 20, "rows 0:4 0;4 1:2 1:2");
    CHECK(parse_failure(bad_row).line() == 8);

    std::string unknown = good;
    unknown.replace(unknown.find("split 0 4 2 2"), 5, "twirl");
    CHECK(parse_failure(unknown).line() == 9);

    std::string truncated = good.substr(0, good.find("end\n"));
    parse_failure(truncated);

    std::string bad_direction = good;
    bad_direction.replace(bad_direction.find("1>2 2>1"), 3, "1>x");
    CHECK(parse_failure(bad_direction).field() != "");
}
