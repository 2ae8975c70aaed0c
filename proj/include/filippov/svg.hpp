#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace filippov {

/// Comma-separated table with a mandatory header row.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Column index; throws ArgumentError if absent.
    std::size_t column(std::string_view name) const;
    bool has_column(std::string_view name) const;
    /// Numeric value or NaN for an empty / unparsable cell.
    double number(std::size_t row, std::size_t col) const;
};

CsvTable read_csv(const std::string& path);
CsvTable parse_csv(std::string_view text);

enum class PlotKind { SlowManifold, PhasePortrait, Bifurcation };

std::string_view to_string(PlotKind kind);
PlotKind parse_plot_kind(std::string_view name);

struct Window {
    double lo = 0.0;
    double hi = 1.0;
};

struct PlotSpec {
    PlotKind kind = PlotKind::SlowManifold;
    std::vector<std::string> inputs;
    std::optional<Window> x;
    std::optional<Window> y;
    std::string output;
};

/// Self-contained SVG document. Slow manifolds are drawn over rho with single
/// arrowheads giving the slow direction; trajectories get double arrowheads
/// on fast (off-Sigma) segments and single ones while sliding.
std::string render_svg(const PlotSpec& spec, const std::vector<CsvTable>& tables);

/// Reads spec.inputs, renders, writes spec.output.
void plot(const PlotSpec& spec);

}  // namespace filippov
