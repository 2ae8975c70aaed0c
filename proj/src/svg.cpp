#include "filippov/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "filippov/errors.hpp"

namespace filippov {

namespace {

constexpr double kWidth = 800;
constexpr double kHeight = 500;
constexpr double kMargin = 60;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", std::abs(v) < 1e-12 ? 0.0 : v);
    return buf;
}

std::string escape_xml(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Point {
    double x;
    double y;
};

class Canvas {
public:
    Canvas(Window x, Window y, std::string title, std::string xlabel, std::string ylabel)
        : x_(x), y_(y) {
        if (!(x.hi > x.lo) || !(y.hi > y.lo)) throw ArgumentError("plot window must be non-degenerate");
        body_ << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
        body_ << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
              << escape_xml(title) << "</text>\n";
        axes(xlabel, ylabel);
        body_ << "<clipPath id=\"plot-area\"><rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\""
              << kWidth - 2 * kMargin << "\" height=\"" << kHeight - 2 * kMargin << "\"/></clipPath>\n";
    }

    double px(double x) const { return kMargin + (x - x_.lo) / (x_.hi - x_.lo) * (kWidth - 2 * kMargin); }
    double py(double y) const { return kHeight - kMargin - (y - y_.lo) / (y_.hi - y_.lo) * (kHeight - 2 * kMargin); }
    bool inside(Point p) const {
        return std::isfinite(p.x) && std::isfinite(p.y) && p.x >= x_.lo && p.x <= x_.hi && p.y >= y_.lo &&
               p.y <= y_.hi;
    }

    /// Polyline broken wherever the curve leaves the window.
    void polyline(const std::vector<Point>& pts, const std::string& color, const std::string& extra = {}) {
        std::vector<Point> run;
        auto flush = [&] {
            if (run.size() >= 2) {
                body_ << "<polyline clip-path=\"url(#plot-area)\" fill=\"none\" stroke=\"" << color
                      << "\" stroke-width=\"1.6\" " << extra << " points=\"";
                for (const auto& p : run) body_ << num(px(p.x)) << ',' << num(py(p.y)) << ' ';
                body_ << "\"/>\n";
            }
            run.clear();
        };
        for (const auto& p : pts) {
            if (inside(p)) {
                run.push_back(p);
            } else {
                flush();
            }
        }
        flush();
    }

    /// Arrowhead at p pointing along (dx, dy) in data coordinates; two stacked heads when doubled.
    void arrow(Point p, double dx, double dy, const std::string& color, bool doubled) {
        if (!inside(p)) return;
        const double sx = px(p.x + dx) - px(p.x);
        const double sy = py(p.y + dy) - py(p.y);
        const double len = std::hypot(sx, sy);
        if (!(len > 0)) return;
        const double ux = sx / len;
        const double uy = sy / len;
        auto head = [&](double offset) {
            const double tx = px(p.x) + ux * offset;
            const double ty = py(p.y) + uy * offset;
            const double bx = tx - ux * 9;
            const double by = ty - uy * 9;
            body_ << "<polygon fill=\"" << color << "\" points=\"" << num(tx) << ',' << num(ty) << ' '
                  << num(bx - uy * 4) << ',' << num(by + ux * 4) << ' ' << num(bx + uy * 4) << ','
                  << num(by - ux * 4) << "\"/>\n";
        };
        head(0);
        if (doubled) head(-7);
    }

    void marker(Point p, const std::string& color, bool filled) {
        if (!inside(p)) return;
        body_ << "<circle cx=\"" << num(px(p.x)) << "\" cy=\"" << num(py(p.y)) << "\" r=\"4.5\" stroke=\"" << color
              << "\" stroke-width=\"1.5\" fill=\"" << (filled ? color : "white") << "\"/>\n";
    }

    void vline(double x, const std::string& color, bool dashed) {
        if (x < x_.lo || x > x_.hi) return;
        body_ << "<line x1=\"" << num(px(x)) << "\" y1=\"" << kMargin << "\" x2=\"" << num(px(x)) << "\" y2=\""
              << kHeight - kMargin << "\" stroke=\"" << color << "\" stroke-width=\"1.4\""
              << (dashed ? " stroke-dasharray=\"6,4\"" : "") << "/>\n";
    }

    void legend(const std::vector<std::pair<std::string, std::string>>& entries) {
        double y = kMargin + 14;
        for (const auto& [label, color] : entries) {
            body_ << "<line x1=\"" << kWidth - kMargin - 150 << "\" y1=\"" << y - 4 << "\" x2=\""
                  << kWidth - kMargin - 130 << "\" y2=\"" << y - 4 << "\" stroke=\"" << color
                  << "\" stroke-width=\"2\"/>\n";
            body_ << "<text x=\"" << kWidth - kMargin - 125 << "\" y=\"" << y << "\" font-size=\"11\">"
                  << escape_xml(label) << "</text>\n";
            y += 16;
        }
    }

    std::string str() const {
        std::ostringstream out;
        out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
            << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
            << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\">\n"
            << body_.str() << "</svg>\n";
        return out.str();
    }

private:
    void axes(const std::string& xlabel, const std::string& ylabel) {
        const double x0 = kMargin;
        const double x1 = kWidth - kMargin;
        const double y0 = kHeight - kMargin;
        const double y1 = kMargin;
        body_ << "<rect x=\"" << x0 << "\" y=\"" << y1 << "\" width=\"" << x1 - x0 << "\" height=\"" << y0 - y1
              << "\" fill=\"none\" stroke=\"black\"/>\n";
        for (int k = 0; k <= 5; ++k) {
            const double vx = x_.lo + (x_.hi - x_.lo) * k / 5;
            const double vy = y_.lo + (y_.hi - y_.lo) * k / 5;
            body_ << "<line x1=\"" << num(px(vx)) << "\" y1=\"" << y0 << "\" x2=\"" << num(px(vx)) << "\" y2=\""
                  << y0 + 5 << "\" stroke=\"black\"/>\n";
            body_ << "<text x=\"" << num(px(vx)) << "\" y=\"" << y0 + 18 << "\" text-anchor=\"middle\" font-size=\"11\">"
                  << tick_label(vx) << "</text>\n";
            body_ << "<line x1=\"" << x0 - 5 << "\" y1=\"" << num(py(vy)) << "\" x2=\"" << x0 << "\" y2=\""
                  << num(py(vy)) << "\" stroke=\"black\"/>\n";
            body_ << "<text x=\"" << x0 - 8 << "\" y=\"" << num(py(vy) + 4) << "\" text-anchor=\"end\" font-size=\"11\">"
                  << tick_label(vy) << "</text>\n";
        }
        body_ << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 18 << "\" text-anchor=\"middle\" font-size=\"13\">"
              << escape_xml(xlabel) << "</text>\n";
        body_ << "<text x=\"16\" y=\"" << kHeight / 2 << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 "
              << kHeight / 2 << ")\">" << escape_xml(ylabel) << "</text>\n";
    }

    Window x_;
    Window y_;
    std::ostringstream body_;
};

Window data_window(const std::vector<double>& values, double clamp) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (double v : values) {
        if (!std::isfinite(v)) continue;
        lo = std::min(lo, std::max(v, -clamp));
        hi = std::max(hi, std::min(v, clamp));
    }
    if (!std::isfinite(lo)) return {-1, 1};
    if (hi - lo < 1e-12) return {lo - 1, hi + 1};
    const double pad = 0.05 * (hi - lo);
    return {lo - pad, hi + pad};
}

std::string render_slow_manifold(const PlotSpec& spec, const std::vector<CsvTable>& tables) {
    struct Branch {
        std::vector<Point> pts;
        std::vector<double> ydot;
    };
    std::map<std::string, Branch> branches;
    std::vector<std::pair<Point, std::string>> criticals;
    std::vector<std::pair<double, bool>> verticals;
    std::vector<double> xs{0.0, 3.14159265358979};
    std::vector<double> ys;
    for (const auto& t : tables) {
        const auto c_id = t.column("branch_id");
        const auto c_rho = t.column("rho");
        const auto c_y = t.column("y");
        const auto c_ydot = t.column("ydot");
        const auto c_label = t.column("label");
        for (std::size_t r = 0; r < t.rows.size(); ++r) {
            const std::string& label = t.rows[r][c_label];
            const double rho = t.number(r, c_rho);
            const double y = t.number(r, c_y);
            if (label.rfind("vertical", 0) == 0) {
                verticals.emplace_back(rho, label.find("critical-line") != std::string::npos);
            } else if (label.rfind("critical:", 0) == 0) {
                criticals.push_back({{rho, y}, label.substr(9)});
            } else {
                auto& b = branches[t.rows[r][c_id]];
                b.pts.push_back({rho, y});
                b.ydot.push_back(t.number(r, c_ydot));
                ys.push_back(y);
            }
        }
    }
    const Window xw = spec.x.value_or(Window{0.0, 3.14159265358979});
    const Window yw = spec.y.value_or(data_window(ys, 10.0));
    Canvas cv(xw, yw, "slow manifold", "rho", "y");
    std::size_t k = 0;
    for (const auto& [id, b] : branches) {
        const std::string color = kPalette[k++ % std::size(kPalette)];
        cv.polyline(b.pts, color);
        std::vector<std::size_t> visible;
        for (std::size_t i = 0; i + 1 < b.pts.size(); ++i) {
            if (cv.inside(b.pts[i]) && cv.inside(b.pts[i + 1])) visible.push_back(i);
        }
        for (int q = 1; q <= 3 && !visible.empty(); ++q) {
            const std::size_t i = visible[visible.size() * static_cast<std::size_t>(q) / 4];
            const double dx = b.pts[i + 1].x - b.pts[i].x;
            const double dy = b.pts[i + 1].y - b.pts[i].y;
            if (std::abs(dy) < 1e-14 || b.ydot[i] == 0.0) continue;
            const double s = (dy > 0) == (b.ydot[i] > 0) ? 1.0 : -1.0;
            cv.arrow(b.pts[i], s * dx, s * dy, color, false);
        }
    }
    for (const auto& [rho, line] : verticals) cv.vline(rho, line ? "#d62728" : "#555555", line);
    for (const auto& [p, stab] : criticals) cv.marker(p, "black", stab == "Attractor");
    return cv.str();
}

std::string render_phase_portrait(const PlotSpec& spec, const std::vector<CsvTable>& tables) {
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto& t : tables) {
        const auto cx = t.column("x");
        const auto cy = t.column("y");
        t.column("mode");
        for (std::size_t r = 0; r < t.rows.size(); ++r) {
            xs.push_back(t.number(r, cx));
            ys.push_back(t.number(r, cy));
        }
    }
    xs.push_back(0.0);
    Canvas cv(spec.x.value_or(data_window(xs, 1e6)), spec.y.value_or(data_window(ys, 1e6)), "phase portrait", "x",
              "y");
    cv.vline(0.0, "#888888", true);
    std::size_t k = 0;
    for (const auto& t : tables) {
        const std::string color = kPalette[k++ % std::size(kPalette)];
        const auto cx = t.column("x");
        const auto cy = t.column("y");
        const auto cm = t.column("mode");
        std::size_t r = 0;
        while (r < t.rows.size()) {
            const std::string mode = t.rows[r][cm];
            std::vector<Point> pts;
            while (r < t.rows.size() && t.rows[r][cm] == mode) {
                pts.push_back({t.number(r, cx), t.number(r, cy)});
                ++r;
            }
            const bool sliding = mode == "Sliding";
            cv.polyline(pts, color, sliding ? "stroke-width=\"3\"" : "");
            if (pts.size() >= 2) {
                const std::size_t i = pts.size() / 2 - (pts.size() % 2 == 0 ? 1 : 0);
                cv.arrow(pts[i], pts[i + 1].x - pts[i].x, pts[i + 1].y - pts[i].y, color, !sliding);
            }
        }
    }
    return cv.str();
}

std::string render_bifurcation(const PlotSpec& spec, const std::vector<CsvTable>& tables) {
    const std::vector<std::string> series{"branch_count", "attractors", "repellers", "critical_lines"};
    std::vector<double> xs;
    std::vector<double> ys{0.0};
    for (const auto& t : tables) {
        const auto cl = t.column("lambda");
        for (const auto& s : series) {
            const auto c = t.column(s);
            for (std::size_t r = 0; r < t.rows.size(); ++r) ys.push_back(t.number(r, c));
        }
        for (std::size_t r = 0; r < t.rows.size(); ++r) xs.push_back(t.number(r, cl));
    }
    Canvas cv(spec.x.value_or(data_window(xs, 1e6)), spec.y.value_or(data_window(ys, 1e6)), "bifurcation diagram",
              "lambda", "count");
    std::vector<std::pair<std::string, std::string>> legend;
    for (std::size_t s = 0; s < series.size(); ++s) {
        const std::string color = kPalette[s % std::size(kPalette)];
        legend.emplace_back(series[s], color);
        for (const auto& t : tables) {
            const auto cl = t.column("lambda");
            const auto c = t.column(series[s]);
            std::vector<Point> pts;
            for (std::size_t r = 0; r < t.rows.size(); ++r) pts.push_back({t.number(r, cl), t.number(r, c)});
            cv.polyline(pts, color);
            for (const auto& p : pts) cv.marker(p, color, true);
        }
    }
    cv.legend(legend);
    return cv.str();
}

}  // namespace

std::size_t CsvTable::column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    throw ArgumentError("CSV column '" + std::string(name) + "' not found");
}

bool CsvTable::has_column(std::string_view name) const {
    return std::find(header.begin(), header.end(), name) != header.end();
}

double CsvTable::number(std::size_t row, std::size_t col) const {
    if (row >= rows.size() || col >= rows[row].size()) return std::numeric_limits<double>::quiet_NaN();
    const std::string& cell = rows[row][col];
    if (cell.empty()) return std::numeric_limits<double>::quiet_NaN();
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    return end == cell.c_str() ? std::numeric_limits<double>::quiet_NaN() : v;
}

CsvTable parse_csv(std::string_view text) {
    CsvTable t;
    std::size_t pos = 0;
    bool first = true;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        pos = eol + 1;
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = line.find(',', start);
            cells.emplace_back(line.substr(start, comma == std::string_view::npos ? line.size() - start : comma - start));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        if (first) {
            t.header = std::move(cells);
            first = false;
        } else {
            t.rows.push_back(std::move(cells));
        }
    }
    if (t.header.empty()) throw ArgumentError("CSV input has no header row");
    return t;
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ArgumentError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_csv(ss.str());
}

std::string_view to_string(PlotKind kind) {
    switch (kind) {
        case PlotKind::SlowManifold: return "slow-manifold";
        case PlotKind::PhasePortrait: return "phase-portrait";
        case PlotKind::Bifurcation: return "bifurcation";
    }
    return "?";
}

PlotKind parse_plot_kind(std::string_view name) {
    for (auto k : {PlotKind::SlowManifold, PlotKind::PhasePortrait, PlotKind::Bifurcation}) {
        if (to_string(k) == name) return k;
    }
    throw ArgumentError("unknown plot kind '" + std::string(name) + "'");
}

std::string render_svg(const PlotSpec& spec, const std::vector<CsvTable>& tables) {
    if (tables.empty()) throw ArgumentError("plot needs at least one input table");
    switch (spec.kind) {
        case PlotKind::SlowManifold: return render_slow_manifold(spec, tables);
        case PlotKind::PhasePortrait: return render_phase_portrait(spec, tables);
        case PlotKind::Bifurcation: return render_bifurcation(spec, tables);
    }
    throw ArgumentError("unknown plot kind");
}

void plot(const PlotSpec& spec) {
    std::vector<CsvTable> tables;
    for (const auto& path : spec.inputs) tables.push_back(read_csv(path));
    const std::string svg = render_svg(spec, tables);
    std::ofstream out(spec.output, std::ios::binary);
    if (!out) throw ArgumentError("cannot write '" + spec.output + "'");
    out << svg;
}

}  // namespace filippov
