#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "doctest.h"
#include "hohlov/scan.hpp"
#include "support.hpp"

using namespace hohlov;
using namespace testsupport;

TEST_CASE("swept ranges enumerate start + i*step up to stop inclusive") {
    const SweptParam r{"c", 3.5, 8.0, 0.5};
    CHECK(r.count() == 10);
    CHECK(r.value(0) == 3.5);
    CHECK(r.value(9) == 8.0);
    const SweptParam s{"beta", 0.1, 0.5, 0.1};
    CHECK(s.count() == 5);  // accumulated addition would miss 0.5
    CHECK(s.value(4) == doctest::Approx(0.5).epsilon(1e-15));
    const SweptParam t{"a", 1.0, 2.0, 0.3};
    CHECK(t.count() == 4);  // 1.0 1.3 1.6 1.9
}

TEST_CASE("scan request validation rejects malformed grids") {
    ScanRequest req;
    req.theorem = TheoremId::T2_1;
    req.fixed = {{"a", 1.0}, {"b", 1.0}, {"lambda", 1.0}};
    req.swept = {{"c", 3.5, 8.0, 0.5}};
    CHECK_NOTHROW(req.validate());

    SUBCASE("unknown parameter") {
        req.fixed["gamma"] = 1.0;
        CHECK_THROWS_AS(req.validate(), ScanRequestError);
    }
    SUBCASE("parameter the theorem does not take") {
        req.fixed["beta"] = 0.1;
        CHECK_THROWS_AS(req.validate(), ScanRequestError);
    }
    SUBCASE("parameter both fixed and swept") {
        req.fixed["c"] = 5.0;
        CHECK_THROWS_AS(req.validate(), ScanRequestError);
    }
    SUBCASE("missing parameter") {
        req.fixed.erase("lambda");
        CHECK_THROWS_AS(req.validate(), ScanRequestError);
    }
    SUBCASE("bad step") {
        req.swept[0].step = 0.0;
        CHECK_THROWS_AS(req.validate(), ScanRequestError);
    }
    SUBCASE("start at or above stop") {
        req.swept[0] = {"c", 8.0, 3.5, 0.5};
        CHECK_THROWS_AS(req.validate(), ScanRequestError);
    }
    SUBCASE("nonfinite fixed value") {
        req.fixed["a"] = std::nan("");
        CHECK_THROWS_AS(req.validate(), ScanRequestError);
    }
    SUBCASE("more than three swept axes") {
        req.fixed.clear();
        req.swept = {{"a", 0.1, 1.0, 0.1},
                     {"b", 0.1, 1.0, 0.1},
                     {"c", 4.0, 8.0, 0.5},
                     {"lambda", 0.1, 1.0, 0.1}};
        CHECK_THROWS_AS(req.validate(), ScanRequestError);
    }
}

TEST_CASE("scan output is canonical and job-count independent") {
    ScanRequest req;
    req.theorem = TheoremId::T2_2;
    // User order deliberately scrambled: swept axes given as (beta, c).
    req.fixed = {{"a", 0.5}, {"b", 0.5}, {"lambda", 0.8}};
    req.swept = {{"beta", 0.0, 0.4, 0.2}, {"c", 3.0, 5.0, 1.0}};
    req.jobs = 1;
    const auto serial = run_scan(req);
    REQUIRE(serial.rows.size() == 9);

    // Canonical nesting is a,b,c outer, beta inner: c changes every 3 rows.
    CHECK(serial.rows[0].params.c == 3.0);
    CHECK(serial.rows[0].beta == 0.0);
    CHECK(serial.rows[1].beta == 0.2);
    CHECK(serial.rows[2].beta == doctest::Approx(0.4));
    CHECK(serial.rows[3].params.c == 4.0);
    CHECK(serial.rows[8].params.c == 5.0);

    req.jobs = 4;
    const auto parallel = run_scan(req);
    CHECK(render_csv(serial) == render_csv(parallel));
    CHECK(render_jsonl(serial) == render_jsonl(parallel));
}

TEST_CASE("csv rows carry the pinned header and empty inapplicable fields") {
    ScanRequest req;
    req.theorem = TheoremId::T2_1;
    req.fixed = {{"a", 1.0}, {"b", 1.0}, {"lambda", 1.0}};
    req.swept = {{"c", 3.5, 4.0, 0.5}};
    const auto result = run_scan(req);
    const std::string csv = render_csv(result);

    const auto first_nl = csv.find('\n');
    REQUIRE(first_nl != std::string::npos);
    CHECK(csv.substr(0, first_nl) == kCsvHeader);

    // Row shape: beta and oracle_T stay empty for this theorem and request.
    const auto second_nl = csv.find('\n', first_nl + 1);
    const std::string row = csv.substr(first_nl + 1, second_nl - first_nl - 1);
    CHECK(row.substr(0, 5) == "T2.1,");
    CHECK(row.find(",,") != std::string::npos);
    CHECK(row.back() == ',');  // trailing empty oracle column
    CHECK(row.find("Fails") != std::string::npos);

    // Exactly rows+1 newline-terminated lines.
    std::size_t lines = 0;
    for (char ch : csv)
        if (ch == '\n') ++lines;
    CHECK(lines == result.rows.size() + 1);
}

TEST_CASE("verdict columns become null fields on precondition violations") {
    ScanRequest req;
    req.theorem = TheoremId::T4_1;
    req.fixed = {{"a", 1.0}, {"b", 1.0}};
    req.swept = {{"c", 4.0, 4.5, 0.5}};  // c = 4 violates c > |a|+|b|+2
    const auto result = run_scan(req);
    REQUIRE(result.rows.size() == 2);
    CHECK(result.rows[0].verdict == Verdict::PreconditionViolated);

    const std::string jsonl = render_jsonl(result);
    const auto first_nl = jsonl.find('\n');
    const std::string line0 = jsonl.substr(0, first_nl);
    CHECK(line0.find("\"lhs\":null") != std::string::npos);
    CHECK(line0.find("\"lambda\":null") != std::string::npos);
    CHECK(line0.find("\"verdict\":\"PreconditionViolated\"") != std::string::npos);

    const std::string csv = render_csv(result);
    CHECK(csv.find("PreconditionViolated,") != std::string::npos);
}

TEST_CASE("corollary rows report the pinned lambda") {
    ScanRequest req;
    req.theorem = TheoremId::COR2;
    req.fixed = {{"a", 0.5}, {"b", 0.5}, {"beta", 0.0}};
    req.swept = {{"c", 3.0, 4.0, 1.0}};
    const auto result = run_scan(req);
    REQUIRE(result.rows.size() == 2);
    CHECK(result.rows[0].lambda == 1.0);
    const std::string csv = render_csv(result);
    CHECK(csv.find(",1,") != std::string::npos);  // lambda column rendered as 1
}

TEST_CASE("oracle column is populated when requested") {
    ScanRequest req;
    req.theorem = TheoremId::T2_1;
    req.fixed = {{"a", 0.5}, {"b", 0.5}, {"lambda", 1.0}};
    req.swept = {{"c", 4.0, 5.0, 1.0}};
    req.with_oracle = true;
    req.cfg = tight_config();
    const auto result = run_scan(req);
    REQUIRE(result.rows.size() == 2);
    for (const auto& row : result.rows) {
        REQUIRE(row.oracle_T.has_value());
        CHECK(row.oracle_T->converged);
    }
    const std::string csv = render_csv(result);
    CHECK(csv.back() == '\n');
    const auto last_row_start = csv.rfind('\n', csv.size() - 2);
    const std::string last_row = csv.substr(last_row_start + 1);
    CHECK(last_row.back() == '\n');
    CHECK(last_row[last_row.size() - 2] != ',');  // oracle field non-empty
}

TEST_CASE("float rendering round-trips and prints integral values compactly") {
    Sampler s(601);
    for (int i = 0; i < 200; ++i) {
        const double x = s.uniform(-10.0, 10.0) * std::pow(10.0, s.uniform(-12.0, 12.0));
        const std::string text = format_double(x);
        CHECK(std::strtod(text.c_str(), nullptr) == x);
    }
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(-2.0) == "-2");
}
