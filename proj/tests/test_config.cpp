#include <doctest.h>

#include <string>

#include "../src/config.hpp"

using namespace bilap;

namespace {

// parse and hand back the error text; empty string means it parsed fine
std::string err_of(const std::string& text) {
    try {
        parse_config(text);
    } catch (const BilapError& e) {
        CHECK(e.code == 2);
        return e.what();
    }
    return "";
}

bool has(const std::string& msg, const std::string& part) {
    return msg.find(part) != std::string::npos;
}

}  // namespace

TEST_CASE("minimal solve config fills the defaults") {
    RunConfig cfg = parse_config(
        "command = solve\n"
        "bc = hinged\n"
        "p = 2\n"
        "shape = disk\n");
    CHECK(cfg.command == Command::solve);
    CHECK(cfg.bc == BcKind::hinged);
    CHECK(cfg.p == 2.0);
    CHECK(cfg.tol == 1e-7);
    CHECK(cfg.eps_f == 1e-8);
    CHECK(cfg.seed == 0);
    CHECK(cfg.out == "out");
    REQUIRE(cfg.domains.size() == 1);
    CHECK(cfg.domains[0].spec.kind == ShapeKind::disk);
    CHECK(cfg.domains[0].spec.p1 == 1.0);
    CHECK(cfg.domains[0].spec.h == 0.02);
    CHECK(cfg.domains[0].label.empty());
}

TEST_CASE("comments, blank lines, and CR line endings are tolerated") {
    RunConfig cfg = parse_config(
        "# a run\r\n"
        "command = solve   # trailing\r\n"
        "\r\n"
        "bc = clamped\n"
        "p = 4 # p level\n"
        "shape = interval\n"
        "M = 128\n");
    CHECK(cfg.bc == BcKind::clamped);
    CHECK(cfg.p == 4.0);
    CHECK(cfg.domains[0].spec.M == 128);
    CHECK(cfg.domains[0].spec.kind == ShapeKind::interval);
}

TEST_CASE("interval defaults to 256 cells, two-parameter shapes to unit sides") {
    RunConfig a = parse_config("command = solve\nbc = hinged\np = 2\nshape = interval\n");
    CHECK(a.domains[0].spec.M == 256);
    CHECK(a.domains[0].spec.p1 == 1.0);

    RunConfig b = parse_config("command = solve\nbc = hinged\np = 2\nshape = ellipse\n");
    CHECK(b.domains[0].spec.p1 == 1.0);
    CHECK(b.domains[0].spec.p2 == 1.0);
    CHECK(b.domains[0].spec.h == 0.02);
}

TEST_CASE("continuation without an explicit schedule gets the doubling one") {
    RunConfig cfg = parse_config("command = continuation\nbc = hinged\nshape = disk\n");
    CHECK(cfg.p_schedule == default_p_schedule());
    CHECK(cfg.p_schedule.front() == 2.0);
    CHECK(cfg.p_schedule.back() == 128.0);
}

TEST_CASE("serialize then parse is the identity on every command") {
    std::vector<std::string> texts{
        "command = solve\nbc = clamped\np = 7.5\ntol = 1e-6\neps_f = 1e-9\n"
        "seed = 42\nout = run1\nshape = stadium\na = 0.5\nb = 2\nh = 0.04\n",

        "command = continuation\nbc = hinged\np_schedule = 2,4,8,16\ntol = 1e-8\n"
        "shape = disk\nR = 0.75\nh = 0.01\n",

        "command = faber-krahn\nbc = hinged\n"
        "[domain]\nshape = disk\nR = 1\nh = 0.05\nlabel = ball\n"
        "[domain]\nshape = rectangle\na = 1\nb = 2\nh = 0.05\n"
        "[domain]\nshape = lshape\nside = 1.5\nh = 0.05\nlabel = corner\n",

        "command = oracle\noracle = clamped_profile\nn = 3\nR = 2\nsamples = 100\n",

        "command = convergence\nbc = clamped\np = 2\nshape = interval\nM = 100\n"
        "resolutions = 100,200,400\n",

        "command = plot\nkind = heatmap\ninput = out/u.txt\n",
    };
    for (const auto& text : texts) {
        INFO(text);
        RunConfig cfg = parse_config(text);
        std::string canon = serialize_config(cfg);
        RunConfig again = parse_config(canon);
        CHECK(again == cfg);
        // canonical form is itself a fixed point
        CHECK(serialize_config(again) == canon);
    }
}

TEST_CASE("multi-domain sweep keeps section order and labels") {
    RunConfig cfg = parse_config(
        "command = faber-krahn\nbc = clamped\np_schedule = 2,4\n"
        "[domain]\nshape = ellipse\na = 2\nb = 0.5\nh = 0.02\nlabel = flat-one\n"
        "[domain]\nshape = interval\nM = 64\n");
    // mixing 1D and 2D is caught at run time, not parse time
    REQUIRE(cfg.domains.size() == 2);
    CHECK(cfg.domains[0].spec.kind == ShapeKind::ellipse);
    CHECK(cfg.domains[0].spec.p1 == 2.0);
    CHECK(cfg.domains[0].spec.p2 == 0.5);
    CHECK(cfg.domains[0].label == "flat-one");
    CHECK(cfg.domains[1].spec.kind == ShapeKind::interval);
    CHECK(cfg.domains[1].spec.M == 64);
}

TEST_CASE("command name lookup is a bijection") {
    for (Command c : {Command::solve, Command::continuation, Command::faber_krahn,
                      Command::oracle, Command::convergence, Command::plot})
        CHECK(command_from_name(command_name(c)) == c);
    CHECK_THROWS_AS(command_from_name("solve2"), BilapError);
}

TEST_CASE("wrong p flavor for the command points at the line") {
    std::string m1 = err_of("command = solve\nbc = hinged\np_schedule = 2,4\nshape = disk\n");
    INFO(m1);
    CHECK(has(m1, "solve takes scalar p, not p_schedule"));
    CHECK(has(m1, "(line 3)"));

    std::string m2 = err_of("command = continuation\nbc = hinged\np = 2\nshape = disk\n");
    INFO(m2);
    CHECK(has(m2, "continuation takes p_schedule, not scalar p"));

    std::string m3 = err_of("command = faber-krahn\nbc = hinged\np = 8\nshape = disk\n");
    CHECK(has(m3, "takes p_schedule"));
}

TEST_CASE("schedule shape is validated") {
    std::string base = "command = continuation\nbc = hinged\nshape = disk\n";
    CHECK(has(err_of(base + "p_schedule = 4,8\n"), "must start at 2"));
    CHECK(has(err_of(base + "p_schedule = 2,8,8\n"), "strictly increasing"));
    CHECK(has(err_of(base + "p_schedule = 2,512\n"), "exceeds p = 256"));
    CHECK(has(err_of(base + "p_schedule = 2,,8\n"), "empty entry"));
    CHECK(has(err_of(base + "p_schedule = 2,four\n"), "bad list entry 'four'"));
}

TEST_CASE("value validation carries the line number") {
    std::string m = err_of("command = solve\nbc = hinged\ntol = -1\np = 2\nshape = disk\n");
    INFO(m);
    CHECK(has(m, "tol must be positive"));
    CHECK(has(m, "(line 3)"));

    CHECK(has(err_of("command = solve\nbc = hinged\np = abc\nshape = disk\n"),
              "expects a number"));
    CHECK(has(err_of("command = solve\nbc = hinged\np = 2\nseed = -3\nshape = disk\n"),
              "seed must be non-negative"));
    CHECK(has(err_of("command = solve\nbc = hinged\np = 2\nout =\nshape = disk\n"),
              "out must not be empty"));
    CHECK(has(err_of("command = solve\nbc = north\np = 2\nshape = disk\n"),
              "(line 2)"));
}

TEST_CASE("structural errors carry the line number") {
    CHECK(has(err_of("command = solve\nbc = hinged\np = 2\nshape = disk\nwidgets = 9\n"),
              "unknown key 'widgets'"));
    CHECK(has(err_of("command = solve\nbc = hinged\np = 2\np = 3\nshape = disk\n"),
              "duplicate key 'p'"));
    CHECK(has(err_of("command = solve\nbc = hinged\np = 2\n[grid]\nshape = disk\n"),
              "unknown section '[grid]'"));
    CHECK(has(err_of("command = solve\nbc = hinged\np = 2\n[domain\nshape = disk\n"),
              "unterminated section header"));
    CHECK(has(err_of("command = solve\nbc = hinged\np 2\nshape = disk\n"),
              "expected 'key = value'"));
    CHECK(has(err_of("p = 2\nbc = hinged\nshape = disk\n"),
              "missing required key 'command'"));
}

TEST_CASE("shape keys are checked against the shape kind") {
    std::string head = "command = solve\nbc = hinged\np = 2\n";
    CHECK(has(err_of(head + "shape = disk\na = 1\n"),
              "only applies to rectangle, ellipse, stadium"));
    CHECK(has(err_of(head + "shape = interval\nh = 0.1\n"),
              "interval resolution is 'M', not 'h'"));
    CHECK(has(err_of(head + "shape = rectangle\nM = 10\n"),
              "'M' only applies to interval"));
    CHECK(has(err_of(head + "shape = rectangle\nside = 1\n"),
              "'side' only applies to lshape"));
    CHECK(has(err_of(head + "shape = hexagon\n"), "hexagon"));
    CHECK(has(err_of(head + "shape = disk\nR = -1\n"),
              "shape dimensions must be positive"));
    CHECK(has(err_of(head + "shape = interval\nM = 1\n"), "M must be at least 2"));
    CHECK(has(err_of(head + "shape = interval\nM = 2.5\n"), "expects an integer"));
    CHECK(has(err_of(head + "shape = disk\nh = 0\n"), "h must be positive"));
    CHECK(has(err_of(head + "shape = disk\nlabel = bad name\n"),
              "label may use only"));
}

TEST_CASE("global shape keys and sections do not mix") {
    std::string m = err_of(
        "command = faber-krahn\nbc = hinged\nR = 1\n"
        "[domain]\nshape = disk\n");
    INFO(m);
    CHECK(has(m, "shape keys must live inside [domain] sections"));
    CHECK(has(m, "(line 3)"));

    CHECK(has(err_of("command = oracle\noracle = torsion\nshape = disk\n"),
              "not valid for command oracle"));
    CHECK(has(err_of("command = faber-krahn\nbc = hinged\n"
                     "[domain]\nshape = disk\ntol = 1\n"),
              "not valid inside [domain]"));
}

TEST_CASE("per-command required keys are enforced") {
    CHECK(has(err_of("command = solve\nbc = hinged\np = 2\n"),
              "missing required key 'shape'"));
    CHECK(has(err_of("command = solve\nbc = hinged\nshape = disk\n"),
              "missing required key 'p'"));
    CHECK(has(err_of("command = solve\np = 2\nshape = disk\n"),
              "missing required key 'bc'"));
    CHECK(has(err_of("command = solve\nbc = hinged\np = 2\n"
                     "[domain]\nshape = disk\n[domain]\nshape = disk\n"),
              "exactly one domain"));
    CHECK(has(err_of("command = convergence\nbc = hinged\np = 2\nshape = disk\n"),
              "missing required key 'resolutions'"));
    CHECK(has(err_of("command = convergence\nbc = hinged\np = 2\nshape = disk\n"
                     "resolutions = 0.1,0.05\n"),
              "at least 3 entries"));
    CHECK(has(err_of("command = oracle\nn = 2\n"),
              "missing required key 'oracle'"));
    CHECK(has(err_of("command = oracle\noracle = fast\n"), "unknown oracle 'fast'"));
    CHECK(has(err_of("command = plot\nkind = heatmap\n"),
              "missing required key 'input'"));
    CHECK(has(err_of("command = plot\nkind = pie\ninput = a.txt\n"),
              "unknown plot kind 'pie'"));
    CHECK(has(err_of("command = orbit\n"), "unknown command 'orbit'"));
}

TEST_CASE("section shape is required") {
    std::string m = err_of(
        "command = faber-krahn\nbc = hinged\n[domain]\nR = 1\nh = 0.1\n");
    INFO(m);
    CHECK(has(m, "missing required key 'shape' in [domain]"));
    CHECK(has(m, "(line 3)"));
}
