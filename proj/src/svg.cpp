#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace bilap {

namespace {

std::string fmt6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// compressed viridis ramp, t in [0,1]
std::string ramp_color(double t) {
    static const int stops[5][3] = {
        {68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}};
    t = std::clamp(t, 0.0, 1.0) * 4.0;
    int i = std::min(3, static_cast<int>(t));
    double s = t - i;
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x",
                  static_cast<int>(std::lround(stops[i][0] + s * (stops[i + 1][0] - stops[i][0]))),
                  static_cast<int>(std::lround(stops[i][1] + s * (stops[i + 1][1] - stops[i][1]))),
                  static_cast<int>(std::lround(stops[i][2] + s * (stops[i + 1][2] - stops[i][2]))));
    return buf;
}

std::string header(int w, int h) {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(w) +
           "\" height=\"" + std::to_string(h) + "\" viewBox=\"0 0 " + std::to_string(w) +
           " " + std::to_string(h) + "\">\n<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
}

std::string text_at(double x, double y, const std::string& s, const char* anchor) {
    return "<text x=\"" + fmt6(x) + "\" y=\"" + fmt6(y) +
           "\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"" + anchor + "\">" +
           s + "</text>\n";
}

std::string line_at(double x1, double y1, double x2, double y2, const char* style) {
    return "<line x1=\"" + fmt6(x1) + "\" y1=\"" + fmt6(y1) + "\" x2=\"" + fmt6(x2) +
           "\" y2=\"" + fmt6(y2) + "\" " + style + "/>\n";
}

struct Axis {
    double x0, y0, x1, y1;  // pixel frame: (x0,y1) bottom-left, (x1,y0) top-right
    double vx0, vx1, vy0, vy1;
    double px(double v) const { return x0 + (v - vx0) / (vx1 - vx0) * (x1 - x0); }
    double py(double v) const { return y1 - (v - vy0) / (vy1 - vy0) * (y1 - y0); }
};

std::string draw_axes(const Axis& ax, const std::string& xlabel,
                      const std::string& ylabel) {
    std::string s;
    const char* st = "stroke=\"#000000\" stroke-width=\"1\"";
    s += line_at(ax.x0, ax.y1, ax.x1, ax.y1, st);
    s += line_at(ax.x0, ax.y0, ax.x0, ax.y1, st);
    for (int i = 0; i < 5; ++i) {
        double tx = ax.vx0 + i * (ax.vx1 - ax.vx0) / 4;
        double ty = ax.vy0 + i * (ax.vy1 - ax.vy0) / 4;
        double px = ax.px(tx), py = ax.py(ty);
        s += line_at(px, ax.y1, px, ax.y1 + 5, st);
        s += text_at(px, ax.y1 + 18, fmt6(tx), "middle");
        s += line_at(ax.x0 - 5, py, ax.x0, py, st);
        s += text_at(ax.x0 - 8, py + 4, fmt6(ty), "end");
    }
    s += text_at((ax.x0 + ax.x1) / 2, ax.y1 + 34, xlabel, "middle");
    s += "<text x=\"14\" y=\"" + fmt6((ax.y0 + ax.y1) / 2) +
         "\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 14 " +
         fmt6((ax.y0 + ax.y1) / 2) + ")\">" + ylabel + "</text>\n";
    return s;
}

std::string polyline(const Axis& ax, const std::vector<double>& xs,
                     const std::vector<double>& ys, const char* style) {
    std::string s = "<polyline fill=\"none\" ";
    s += style;
    s += " points=\"";
    for (size_t i = 0; i < xs.size(); ++i) {
        if (i) s += " ";
        s += fmt6(ax.px(xs[i])) + "," + fmt6(ax.py(ys[i]));
    }
    s += "\"/>\n";
    return s;
}

void span_of(const std::vector<double>& v, double& lo, double& hi) {
    lo = v[0];
    hi = v[0];
    for (double x : v) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    if (lo == hi) {
        lo -= 0.5;
        hi += 0.5;
    }
}

}  // namespace

std::string svg_heatmap(const FieldData& f) {
    double vmin = 0, vmax = 0;
    bool seen = false;
    for (double v : f.values) {
        if (std::isnan(v)) continue;
        if (!seen) {
            vmin = vmax = v;
            seen = true;
        }
        vmin = std::min(vmin, v);
        vmax = std::max(vmax, v);
    }
    if (!seen) throw BilapError(4, "heatmap: no values inside the mask");
    double span = vmax > vmin ? vmax - vmin : 1.0;

    int cell = std::max(2, 700 / std::max(f.nx, f.ny));
    if (cell > 24) cell = 24;
    int mx = 20, my = 20;
    int gw = f.nx * cell, gh = f.ny * cell;
    int bar_x = mx + gw + 30;
    int w = bar_x + 90, h = my + std::max(gh, 280) + 40;

    std::string s = header(w, h);
    for (int i = 0; i < f.nx; ++i)
        for (int j = 0; j < f.ny; ++j) {
            double v = f.values[static_cast<size_t>(i) * f.ny + j];
            if (std::isnan(v)) continue;
            // j up = y up
            s += "<rect x=\"" + std::to_string(mx + i * cell) + "\" y=\"" +
                 std::to_string(my + (f.ny - 1 - j) * cell) + "\" width=\"" +
                 std::to_string(cell) + "\" height=\"" + std::to_string(cell) +
                 "\" fill=\"" + ramp_color((v - vmin) / span) + "\"/>\n";
        }
    int bh = 256, bw = 18;
    for (int k = 0; k < 64; ++k) {
        double t = (63 - k + 0.5) / 64.0;
        s += "<rect x=\"" + std::to_string(bar_x) + "\" y=\"" +
             std::to_string(my + k * (bh / 64)) + "\" width=\"" + std::to_string(bw) +
             "\" height=\"" + std::to_string(bh / 64) + "\" fill=\"" + ramp_color(t) +
             "\"/>\n";
    }
    s += "<rect x=\"" + std::to_string(bar_x) + "\" y=\"" + std::to_string(my) +
         "\" width=\"" + std::to_string(bw) + "\" height=\"" + std::to_string(bh) +
         "\" fill=\"none\" stroke=\"#000000\"/>\n";
    s += text_at(bar_x + bw + 6, my + 10, fmt6(vmax), "start");
    s += text_at(bar_x + bw + 6, my + bh, fmt6(vmin), "start");
    s += "</svg>\n";
    return s;
}

std::string svg_curve(const std::vector<double>& xs, const std::vector<double>& ys,
                      const std::string& xlabel, const std::string& ylabel) {
    if (xs.size() < 2 || xs.size() != ys.size())
        throw BilapError(4, "curve plot needs at least 2 points");
    Axis ax{70, 20, 620, 440, 0, 0, 0, 0};
    span_of(xs, ax.vx0, ax.vx1);
    span_of(ys, ax.vy0, ax.vy1);
    std::string s = header(640, 480);
    s += draw_axes(ax, xlabel, ylabel);
    s += polyline(ax, xs, ys, "stroke=\"#1f77b4\" stroke-width=\"1.5\"");
    s += "</svg>\n";
    return s;
}

std::string svg_trace(const std::vector<double>& ps, const std::vector<double>& lams,
                      double fit_a, double fit_b) {
    if (ps.size() < 2 || ps.size() != lams.size())
        throw BilapError(4, "trace plot needs at least 2 levels");
    std::vector<double> xs(ps.size());
    for (size_t i = 0; i < ps.size(); ++i) xs[i] = 1.0 / ps[i];
    Axis ax{70, 20, 620, 440, 0, 0, 0, 0};
    double xlo, xhi;
    span_of(xs, xlo, xhi);
    ax.vx0 = 0;  // extrapolation target 1/p = 0 stays visible
    ax.vx1 = xhi;
    span_of(lams, ax.vy0, ax.vy1);
    ax.vy0 = std::min(ax.vy0, fit_a);
    ax.vy1 = std::max(ax.vy1, fit_a);
    double pad = 0.05 * (ax.vy1 - ax.vy0);
    ax.vy0 -= pad;
    ax.vy1 += pad;

    std::string s = header(640, 480);
    s += draw_axes(ax, "1/p", "lambda_p");
    std::vector<double> fx{0.0, xhi}, fy{fit_a, fit_a + fit_b * xhi};
    s += polyline(ax, fx, fy,
                  "stroke=\"#d62728\" stroke-width=\"1.5\" stroke-dasharray=\"5 4\"");
    s += polyline(ax, xs, lams, "stroke=\"#1f77b4\" stroke-width=\"1.5\"");
    for (size_t i = 0; i < xs.size(); ++i)
        s += "<circle cx=\"" + fmt6(ax.px(xs[i])) + "\" cy=\"" + fmt6(ax.py(lams[i])) +
             "\" r=\"3\" fill=\"#1f77b4\"/>\n";
    s += "<circle cx=\"" + fmt6(ax.px(0.0)) + "\" cy=\"" + fmt6(ax.py(fit_a)) +
         "\" r=\"3\" fill=\"none\" stroke=\"#d62728\"/>\n";
    s += "</svg>\n";
    return s;
}

}  // namespace bilap
