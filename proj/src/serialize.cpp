#include "serialize.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace bilap {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string field_to_text(const ScalarField& u) {
    const GridDomain& d = *u.dom;
    std::string s;
    s.reserve(static_cast<size_t>(d.nx) * d.ny * 12);
    if (d.dim == 1)
        s += "1 " + std::to_string(d.nx) + " " + fmt17(d.h) + "\n";
    else
        s += "2 " + std::to_string(d.nx) + " " + std::to_string(d.ny) + " " + fmt17(d.h) +
             "\n";
    for (int i = 0; i < d.nx; ++i) {
        for (int j = 0; j < d.ny; ++j) {
            if (j) s += " ";
            int k = d.node_of[static_cast<size_t>(i) * d.ny + j];
            s += k >= 0 ? fmt17(u.v[k]) : "nan";
        }
        s += "\n";
    }
    return s;
}

FieldData parse_field_text(const std::string& text) {
    std::istringstream in(text);
    FieldData f;
    if (!(in >> f.dim)) throw BilapError(4, "field dump: missing header");
    if (f.dim == 1) {
        if (!(in >> f.nx >> f.h)) throw BilapError(4, "field dump: bad 1D header");
        f.ny = 1;
    } else if (f.dim == 2) {
        if (!(in >> f.nx >> f.ny >> f.h)) throw BilapError(4, "field dump: bad 2D header");
    } else {
        throw BilapError(4, "field dump: dim must be 1 or 2");
    }
    if (f.nx <= 0 || f.ny <= 0 || f.h <= 0) throw BilapError(4, "field dump: bad header");
    size_t count = static_cast<size_t>(f.nx) * f.ny;
    f.values.resize(count);
    for (size_t k = 0; k < count; ++k) {
        std::string tok;
        if (!(in >> tok)) throw BilapError(4, "field dump: truncated values");
        char* end = nullptr;
        f.values[k] = std::strtod(tok.c_str(), &end);
        if (end == tok.c_str() || *end)
            throw BilapError(4, "field dump: bad value '" + tok + "'");
    }
    std::string extra;
    if (in >> extra) throw BilapError(4, "field dump: trailing data");
    return f;
}

std::string csv_line(const std::vector<std::string>& cells) {
    std::string s;
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i) s += ",";
        s += cells[i];
    }
    s += "\n";
    return s;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string cell;
    for (char c : text) {
        if (c == '\r') continue;
        if (c == ',') {
            row.push_back(cell);
            cell.clear();
        } else if (c == '\n') {
            row.push_back(cell);
            cell.clear();
            if (row.size() > 1 || !row[0].empty()) rows.push_back(row);
            row.clear();
        } else {
            cell += c;
        }
    }
    if (!cell.empty() || !row.empty()) {
        row.push_back(cell);
        rows.push_back(row);
    }
    return rows;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw BilapError(4, "cannot open for writing: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw BilapError(4, "write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw BilapError(4, "cannot open: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw BilapError(4, "read failed: " + path);
    return ss.str();
}

}  // namespace bilap
