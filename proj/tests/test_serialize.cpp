#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <string>

#include "../src/serialize.hpp"

using namespace bilap;

TEST_CASE("fmt17 round-trips doubles exactly") {
    for (double x : {1.0 / 3.0, 0.1, 1e-300, -2.5e17, M_PI, 5.783185962946785,
                     -0.0, 4.9406564584124654e-324}) {
        std::string s = fmt17(x);
        char* end = nullptr;
        double back = std::strtod(s.c_str(), &end);
        CHECK(*end == '\0');
        CHECK(back == x);
    }
    CHECK(fmt17(2.0) == "2");
    CHECK(fmt17(0.5) == "0.5");
}

TEST_CASE("field dump round-trips values and mask shape") {
    ShapeSpec s;
    s.kind = ShapeKind::disk;
    s.p1 = 1.0;
    s.h = 0.25;
    GridDomain d = make_domain(s);
    ScalarField u(d);
    for (int k = 0; k < d.m(); ++k) u.v[k] = d.x(k) + 2.0 * d.y(k) + 1.0 / 3.0;

    std::string text = field_to_text(u);
    FieldData fd = parse_field_text(text);
    CHECK(fd.dim == 2);
    CHECK(fd.nx == d.nx);
    CHECK(fd.ny == d.ny);
    CHECK(fd.h == d.h);
    REQUIRE(static_cast<int>(fd.values.size()) == d.nx * d.ny);

    int finite = 0;
    for (double v : fd.values)
        if (std::isfinite(v)) ++finite;
    CHECK(finite == d.m());
    for (int k = 0; k < d.m(); ++k) {
        int flat = d.node_ij[k][0] * d.ny + d.node_ij[k][1];
        CHECK(fd.values[flat] == u.v[k]);  // exact, %.17g
    }
    // off-mask stays nan
    CHECK(std::isnan(fd.values[0]));
}

TEST_CASE("interval dump uses the 1D header") {
    ShapeSpec s;
    s.kind = ShapeKind::interval;
    s.p1 = 1.0;
    s.M = 4;
    GridDomain d = make_domain(s);
    ScalarField u(d, 7.0);
    std::string text = field_to_text(u);
    CHECK(text.substr(0, text.find('\n')) == "1 " + std::to_string(d.nx) + " 0.5");
    FieldData fd = parse_field_text(text);
    CHECK(fd.dim == 1);
    CHECK(fd.ny == 1);
    int finite = 0;
    for (double v : fd.values)
        if (std::isfinite(v)) {
            ++finite;
            CHECK(v == 7.0);
        }
    CHECK(finite == 3);
}

TEST_CASE("malformed field text is rejected with the io code") {
    auto code_of = [](const std::string& text) {
        try {
            parse_field_text(text);
        } catch (const BilapError& e) {
            return e.code;
        }
        return 0;
    };
    CHECK(code_of("") == 4);
    CHECK(code_of("3 4 4 0.1\n") == 4);          // bad dim
    CHECK(code_of("2 0 4 0.1\n") == 4);          // empty axis
    CHECK(code_of("2 2 2 -0.1\n1 2\n3 4\n") == 4);
    CHECK(code_of("2 2 2 0.1\n1 2\n3\n") == 4);  // short
    CHECK(code_of("2 2 2 0.1\n1 2\n3 4 5\n") == 4);
    CHECK(code_of("2 2 2 0.1\n1 2\n3 x\n") == 4);
    CHECK(code_of("1 3 0.5\n1 nan 3\n") == 0);   // nan is a value, not an error
}

TEST_CASE("csv lines join and split without quoting") {
    CHECK(csv_line({"a", "b", "c"}) == "a,b,c\n");
    CHECK(csv_line({"only"}) == "only\n");

    auto rows = parse_csv("h1,h2\n1,2\n\n3,4\n");
    REQUIRE(rows.size() == 3);
    CHECK(rows[0][0] == "h1");
    CHECK(rows[2][1] == "4");

    // missing trailing newline is tolerated
    auto rows2 = parse_csv("x,y\n5,6");
    REQUIRE(rows2.size() == 2);
    CHECK(rows2[1][0] == "5");
}

TEST_CASE("text files round-trip bytes") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "bilap_serialize_test";
    fs::create_directories(dir);
    std::string path = (dir / "t.txt").string();
    std::string body = "line one\nline two\n# 0.1,nan\n";
    write_text_file(path, body);
    CHECK(read_text_file(path) == body);

    try {
        read_text_file((dir / "absent.txt").string());
        CHECK(false);
    } catch (const BilapError& e) {
        CHECK(e.code == 4);
    }
    try {
        write_text_file((dir / "no_such_sub" / "t.txt").string(), "x");
        CHECK(false);
    } catch (const BilapError& e) {
        CHECK(e.code == 4);
    }
    fs::remove_all(dir);
}
