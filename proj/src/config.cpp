#include "config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <set>

namespace bilap {

const char* command_name(Command c) {
    switch (c) {
        case Command::solve: return "solve";
        case Command::continuation: return "continuation";
        case Command::faber_krahn: return "faber-krahn";
        case Command::oracle: return "oracle";
        case Command::convergence: return "convergence";
        case Command::plot: return "plot";
    }
    return "?";
}

Command command_from_name(const std::string& s) {
    if (s == "solve") return Command::solve;
    if (s == "continuation") return Command::continuation;
    if (s == "faber-krahn") return Command::faber_krahn;
    if (s == "oracle") return Command::oracle;
    if (s == "convergence") return Command::convergence;
    if (s == "plot") return Command::plot;
    throw BilapError(2, "unknown command '" + s + "'");
}

std::vector<double> default_p_schedule() { return {2, 4, 8, 16, 32, 64, 128}; }

namespace {

struct Rec {
    int line = 0;
    std::string key, value;
};

[[noreturn]] void fail(int line, const std::string& msg) {
    throw BilapError(2, msg + " (line " + std::to_string(line) + ")");
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double num_of(const Rec& r) {
    const char* s = r.value.c_str();
    char* end = nullptr;
    double v = std::strtod(s, &end);
    if (end == s || *trim(end).c_str() != '\0' || !std::isfinite(v))
        fail(r.line, "key '" + r.key + "' expects a number, got '" + r.value + "'");
    return v;
}

long long int_of(const Rec& r) {
    double v = num_of(r);
    if (v != std::floor(v)) fail(r.line, "key '" + r.key + "' expects an integer");
    return static_cast<long long>(v);
}

std::vector<double> list_of(const Rec& r) {
    std::vector<double> out;
    std::string item;
    std::string src = r.value + ",";
    for (char c : src) {
        if (c != ',') {
            item += c;
            continue;
        }
        item = trim(item);
        if (item.empty()) fail(r.line, "empty entry in list for key '" + r.key + "'");
        char* end = nullptr;
        double v = std::strtod(item.c_str(), &end);
        if (end == item.c_str() || *end || !std::isfinite(v))
            fail(r.line, "bad list entry '" + item + "' for key '" + r.key + "'");
        out.push_back(v);
        item.clear();
    }
    return out;
}

bool is_domain_key(const std::string& k) {
    return k == "shape" || k == "R" || k == "a" || k == "b" || k == "side" || k == "h" ||
           k == "M" || k == "label";
}

bool takes_domains(Command c) { return c != Command::oracle && c != Command::plot; }

std::set<std::string> global_keys(Command c) {
    std::set<std::string> ks{"command", "out", "seed"};
    switch (c) {
        case Command::solve:
            ks.insert({"bc", "p", "tol", "eps_f"});
            break;
        case Command::continuation:
            ks.insert({"bc", "p_schedule", "tol", "eps_f"});
            break;
        case Command::faber_krahn:
            ks.insert({"bc", "p_schedule", "tol"});
            break;
        case Command::oracle:
            ks.insert({"oracle", "n", "R", "samples"});
            break;
        case Command::convergence:
            ks.insert({"bc", "p", "resolutions", "tol"});
            break;
        case Command::plot:
            ks.insert({"kind", "input"});
            break;
    }
    return ks;
}

DomainConfig build_domain(const std::vector<Rec>& recs, int section_line) {
    const Rec* shape = nullptr;
    for (auto& r : recs)
        if (r.key == "shape") shape = &r;
    if (!shape) {
        if (section_line > 0)
            fail(section_line, "missing required key 'shape' in [domain]");
        throw BilapError(2, "missing required key 'shape'");
    }
    DomainConfig dc;
    try {
        dc.spec.kind = shape_kind_from_name(shape->value);
    } catch (const BilapError& e) {
        fail(shape->line, e.what());
    }
    ShapeKind k = dc.spec.kind;
    bool is_1d = k == ShapeKind::interval;
    bool two_param =
        k == ShapeKind::rectangle || k == ShapeKind::ellipse || k == ShapeKind::stadium;

    // kind defaults, then overrides
    dc.spec.p1 = 1.0;
    dc.spec.p2 = two_param ? 1.0 : 0.0;
    dc.spec.h = is_1d ? 0.0 : 0.02;
    dc.spec.M = is_1d ? 256 : 0;

    for (auto& r : recs) {
        const std::string& key = r.key;
        if (key == "shape") continue;
        if (key == "label") {
            for (char c : r.value)
                if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-')
                    fail(r.line, "label may use only letters, digits, '_', '-'");
            dc.label = r.value;
        } else if (key == "R") {
            if (k != ShapeKind::disk && !is_1d)
                fail(r.line, "key 'R' only applies to disk and interval shapes");
            dc.spec.p1 = num_of(r);
        } else if (key == "a" || key == "b") {
            if (!two_param)
                fail(r.line, "key '" + key + "' only applies to rectangle, ellipse, stadium");
            (key == "a" ? dc.spec.p1 : dc.spec.p2) = num_of(r);
        } else if (key == "side") {
            if (k != ShapeKind::lshape) fail(r.line, "key 'side' only applies to lshape");
            dc.spec.p1 = num_of(r);
        } else if (key == "h") {
            if (is_1d) fail(r.line, "interval resolution is 'M', not 'h'");
            dc.spec.h = num_of(r);
            if (dc.spec.h <= 0) fail(r.line, "h must be positive");
        } else if (key == "M") {
            if (!is_1d) fail(r.line, "key 'M' only applies to interval shapes");
            long long m = int_of(r);
            if (m < 2) fail(r.line, "M must be at least 2");
            dc.spec.M = static_cast<int>(m);
        }
    }
    if (dc.spec.p1 <= 0 || (two_param && dc.spec.p2 <= 0))
        fail(shape->line, "shape dimensions must be positive");
    return dc;
}

std::string fmt_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_list(const std::vector<double>& xs) {
    std::string s;
    for (size_t i = 0; i < xs.size(); ++i) {
        if (i) s += ",";
        s += fmt_num(xs[i]);
    }
    return s;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    // scopes: globals, then one record list per [domain] section
    std::vector<Rec> global;
    std::vector<std::vector<Rec>> sections;
    std::vector<int> section_lines;
    int zone = -1;
    int lineno = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t nl = text.find('\n', pos);
        std::string raw = nl == std::string::npos ? text.substr(pos)
                                                  : text.substr(pos, nl - pos);
        pos = nl == std::string::npos ? text.size() + 1 : nl + 1;
        ++lineno;
        size_t hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        std::string line = trim(raw);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(lineno, "unterminated section header");
            std::string name = trim(line.substr(1, line.size() - 2));
            if (name != "domain") fail(lineno, "unknown section '[" + name + "]'");
            sections.emplace_back();
            section_lines.push_back(lineno);
            zone = static_cast<int>(sections.size()) - 1;
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string::npos) fail(lineno, "expected 'key = value'");
        Rec r{lineno, trim(line.substr(0, eq)), trim(line.substr(eq + 1))};
        if (r.key.empty()) fail(lineno, "empty key");
        (zone < 0 ? global : sections[zone]).push_back(std::move(r));
    }

    // duplicate keys within a scope
    auto check_dups = [](const std::vector<Rec>& recs) {
        std::set<std::string> seen;
        for (auto& r : recs)
            if (!seen.insert(r.key).second) fail(r.line, "duplicate key '" + r.key + "'");
    };
    check_dups(global);
    for (auto& s : sections) check_dups(s);

    const Rec* cmd_rec = nullptr;
    for (auto& r : global)
        if (r.key == "command") cmd_rec = &r;
    if (!cmd_rec) throw BilapError(2, "missing required key 'command'");
    RunConfig cfg;
    try {
        cfg.command = command_from_name(cmd_rec->value);
    } catch (const BilapError& e) {
        fail(cmd_rec->line, e.what());
    }

    std::set<std::string> allowed = global_keys(cfg.command);
    bool global_domain_zone = takes_domains(cfg.command) && sections.empty();
    std::vector<Rec> implicit_domain;
    std::set<std::string> have;
    for (auto& r : global) {
        if (is_domain_key(r.key) && allowed.count(r.key) == 0) {
            if (!takes_domains(cfg.command))
                fail(r.line, "key '" + r.key + "' not valid for command " +
                                 command_name(cfg.command));
            if (!global_domain_zone)
                fail(r.line,
                     "shape keys must live inside [domain] sections when any are present");
            implicit_domain.push_back(r);
            continue;
        }
        if (allowed.count(r.key) == 0) {
            if (r.key == "p_schedule" &&
                (cfg.command == Command::solve || cfg.command == Command::convergence))
                fail(r.line, std::string(command_name(cfg.command)) +
                                 " takes scalar p, not p_schedule");
            if (r.key == "p" && (cfg.command == Command::continuation ||
                                 cfg.command == Command::faber_krahn))
                fail(r.line, std::string(command_name(cfg.command)) +
                                 " takes p_schedule, not scalar p");
            fail(r.line, "unknown key '" + r.key + "' for command " +
                             command_name(cfg.command));
        }
        have.insert(r.key);
        if (r.key == "command") continue;
        if (r.key == "out") {
            if (r.value.empty()) fail(r.line, "out must not be empty");
            cfg.out = r.value;
        } else if (r.key == "seed") {
            long long v = int_of(r);
            if (v < 0) fail(r.line, "seed must be non-negative");
            cfg.seed = static_cast<unsigned long long>(v);
        } else if (r.key == "bc") {
            try {
                cfg.bc = bc_from_name(r.value);
            } catch (const BilapError& e) {
                fail(r.line, e.what());
            }
        } else if (r.key == "p") {
            cfg.p = num_of(r);
        } else if (r.key == "p_schedule") {
            cfg.p_schedule = list_of(r);
            if (cfg.p_schedule.empty() || cfg.p_schedule.front() != 2.0)
                fail(r.line, "p_schedule must start at 2");
            for (size_t i = 1; i < cfg.p_schedule.size(); ++i)
                if (cfg.p_schedule[i] <= cfg.p_schedule[i - 1])
                    fail(r.line, "p_schedule must be strictly increasing");
            if (cfg.p_schedule.back() > 256) fail(r.line, "p_schedule exceeds p = 256");
        } else if (r.key == "tol") {
            cfg.tol = num_of(r);
            if (cfg.tol <= 0) fail(r.line, "tol must be positive");
        } else if (r.key == "eps_f") {
            cfg.eps_f = num_of(r);
            if (cfg.eps_f < 0) fail(r.line, "eps_f must be non-negative");
        } else if (r.key == "oracle") {
            if (r.value != "torsion" && r.value != "hinged_lambda" &&
                r.value != "clamped_lambda" && r.value != "clamped_profile")
                fail(r.line, "unknown oracle '" + r.value + "'");
            cfg.oracle = r.value;
        } else if (r.key == "n") {
            long long v = int_of(r);
            if (v < 1) fail(r.line, "n must be at least 1");
            cfg.n = static_cast<int>(v);
        } else if (r.key == "R") {
            cfg.R = num_of(r);
            if (cfg.R <= 0) fail(r.line, "R must be positive");
        } else if (r.key == "samples") {
            long long v = int_of(r);
            if (v < 2) fail(r.line, "samples must be at least 2");
            cfg.samples = static_cast<int>(v);
        } else if (r.key == "resolutions") {
            cfg.resolutions = list_of(r);
            if (cfg.resolutions.size() < 3)
                fail(r.line, "resolutions needs at least 3 entries");
        } else if (r.key == "kind") {
            if (r.value != "heatmap" && r.value != "radial" && r.value != "trace")
                fail(r.line, "unknown plot kind '" + r.value + "'");
            cfg.plot_kind = r.value;
        } else if (r.key == "input") {
            if (r.value.empty()) fail(r.line, "input must not be empty");
            cfg.input = r.value;
        }
    }

    if (!implicit_domain.empty()) cfg.domains.push_back(build_domain(implicit_domain, 0));
    for (size_t i = 0; i < sections.size(); ++i) {
        for (auto& r : sections[i])
            if (!is_domain_key(r.key))
                fail(r.line, "key '" + r.key + "' not valid inside [domain]");
        cfg.domains.push_back(build_domain(sections[i], section_lines[i]));
    }

    auto require = [&](const char* key) {
        if (!have.count(key))
            throw BilapError(2, std::string("missing required key '") + key + "' for command " +
                                    command_name(cfg.command));
    };
    switch (cfg.command) {
        case Command::solve:
        case Command::convergence:
            require("bc");
            require("p");
            if (cfg.domains.empty()) throw BilapError(2, "missing required key 'shape'");
            if (cfg.domains.size() != 1)
                throw BilapError(2, std::string(command_name(cfg.command)) +
                                        " takes exactly one domain");
            if (cfg.command == Command::convergence) {
                require("resolutions");
            }
            break;
        case Command::continuation:
            require("bc");
            if (cfg.p_schedule.empty()) cfg.p_schedule = default_p_schedule();
            if (cfg.domains.empty()) throw BilapError(2, "missing required key 'shape'");
            if (cfg.domains.size() != 1)
                throw BilapError(2, "continuation takes exactly one domain");
            break;
        case Command::faber_krahn:
            require("bc");
            if (cfg.p_schedule.empty()) cfg.p_schedule = default_p_schedule();
            if (cfg.domains.empty())
                throw BilapError(2, "faber-krahn needs at least one [domain] section");
            break;
        case Command::oracle:
            require("oracle");
            break;
        case Command::plot:
            require("kind");
            require("input");
            break;
    }
    return cfg;
}

std::string serialize_config(const RunConfig& cfg) {
    std::string s;
    auto kv = [&s](const char* k, const std::string& v) {
        s += k;
        s += " = ";
        s += v;
        s += "\n";
    };
    kv("command", command_name(cfg.command));
    switch (cfg.command) {
        case Command::solve:
            kv("bc", bc_name(cfg.bc));
            kv("p", fmt_num(cfg.p));
            kv("tol", fmt_num(cfg.tol));
            kv("eps_f", fmt_num(cfg.eps_f));
            break;
        case Command::continuation:
            kv("bc", bc_name(cfg.bc));
            kv("p_schedule", fmt_list(cfg.p_schedule));
            kv("tol", fmt_num(cfg.tol));
            kv("eps_f", fmt_num(cfg.eps_f));
            break;
        case Command::faber_krahn:
            kv("bc", bc_name(cfg.bc));
            kv("p_schedule", fmt_list(cfg.p_schedule));
            kv("tol", fmt_num(cfg.tol));
            break;
        case Command::oracle:
            kv("oracle", cfg.oracle);
            kv("n", std::to_string(cfg.n));
            kv("R", fmt_num(cfg.R));
            kv("samples", std::to_string(cfg.samples));
            break;
        case Command::convergence:
            kv("bc", bc_name(cfg.bc));
            kv("p", fmt_num(cfg.p));
            kv("resolutions", fmt_list(cfg.resolutions));
            kv("tol", fmt_num(cfg.tol));
            break;
        case Command::plot:
            kv("kind", cfg.plot_kind);
            kv("input", cfg.input);
            break;
    }
    kv("seed", std::to_string(cfg.seed));
    kv("out", cfg.out);
    for (auto& d : cfg.domains) {
        s += "[domain]\n";
        kv("shape", shape_kind_name(d.spec.kind));
        switch (d.spec.kind) {
            case ShapeKind::interval:
                kv("R", fmt_num(d.spec.p1));
                kv("M", std::to_string(d.spec.M));
                break;
            case ShapeKind::disk:
                kv("R", fmt_num(d.spec.p1));
                kv("h", fmt_num(d.spec.h));
                break;
            case ShapeKind::rectangle:
            case ShapeKind::ellipse:
            case ShapeKind::stadium:
                kv("a", fmt_num(d.spec.p1));
                kv("b", fmt_num(d.spec.p2));
                kv("h", fmt_num(d.spec.h));
                break;
            case ShapeKind::lshape:
                kv("side", fmt_num(d.spec.p1));
                kv("h", fmt_num(d.spec.h));
                break;
        }
        if (!d.label.empty()) kv("label", d.label);
    }
    return s;
}

}  // namespace bilap
