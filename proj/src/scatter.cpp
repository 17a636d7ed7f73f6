#include "radrobust/scatter.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "radrobust/error.hpp"
#include "radrobust/format.hpp"

namespace radrobust {

namespace {

void write_text(const std::filesystem::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorKind::IoError, "cannot write '" + path.string() + "'");
    }
    out << text;
}

std::string xml_escape(const std::string &s) {
    std::string out;
    for (const char c : s) {
        switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

std::string fixed(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

} // namespace

ScatterTable emit_scatter(const std::string &feature, const std::string &binning, Comparison comparison,
                          const FeatureTable &table) {
    const auto features = table.features();
    if (std::find(features.begin(), features.end(), feature) == features.end()) {
        throw Error(ErrorKind::UnknownFeature, "feature '" + feature + "' is not in the feature table");
    }
    const auto binnings = table.binnings();
    if (std::find(binnings.begin(), binnings.end(), binning) == binnings.end()) {
        throw Error(ErrorKind::InvalidConfig, "binning '" + binning + "' is not in the feature table");
    }
    const auto [vx, vy] = variants_of(comparison);
    std::map<std::string, std::pair<std::optional<double>, std::optional<double>>> by_id;
    for (const auto &r : table.rows()) {
        if (r.feature != feature || r.binning != binning) {
            continue;
        }
        if (r.variant == vx) {
            by_id[r.image_id].first = r.value;
        }
        if (r.variant == vy) {
            by_id[r.image_id].second = r.value;
        }
    }
    ScatterTable out{feature, binning, comparison, {}};
    for (const auto &id : table.image_ids()) {
        const auto it = by_id.find(id);
        if (it != by_id.end() && it->second.first && it->second.second) {
            out.points.push_back({id, *it->second.first, *it->second.second});
        }
    }
    return out;
}

std::string ScatterTable::to_csv() const {
    std::string out = "image_id,value_original,value_perturbed,binning,feature,comparison\n";
    for (const auto &p : points) {
        out += p.image_id + "," + format_real(p.value_original) + "," + format_real(p.value_perturbed) + "," + binning +
               "," + feature + "," + std::string(to_string(comparison)) + "\n";
    }
    return out;
}

std::string ScatterTable::to_svg() const {
    constexpr double size = 480.0;
    constexpr double margin = 60.0;
    constexpr double plot = size - 2.0 * margin;

    double lo = 0.0;
    double hi = 1.0;
    if (!points.empty()) {
        lo = hi = points.front().value_original;
        for (const auto &p : points) {
            lo = std::min({lo, p.value_original, p.value_perturbed});
            hi = std::max({hi, p.value_original, p.value_perturbed});
        }
    }
    if (!(hi > lo)) {
        lo -= 0.5;
        hi += 0.5;
    }
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;
    auto sx = [&](double v) { return margin + (v - lo) / (hi - lo) * plot; };
    auto sy = [&](double v) { return size - margin - (v - lo) / (hi - lo) * plot; };

    const auto [vx, vy] = variants_of(comparison);
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\" viewBox=\"0 0 "
        << size << ' ' << size << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << size / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
        << xml_escape(feature) << " (" << xml_escape(binning) << ")</text>\n";
    svg << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << plot << "\" height=\"" << plot
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << fixed(sx(lo)) << "\" y1=\"" << fixed(sy(lo)) << "\" x2=\"" << fixed(sx(hi)) << "\" y2=\""
        << fixed(sy(hi)) << "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
    for (const auto &p : points) {
        svg << "<circle cx=\"" << fixed(sx(p.value_original)) << "\" cy=\"" << fixed(sy(p.value_perturbed))
            << "\" r=\"2.5\" fill=\"steelblue\" fill-opacity=\"0.7\"><title>" << xml_escape(p.image_id)
            << "</title></circle>\n";
    }
    svg << "<text x=\"" << size / 2 << "\" y=\"" << size - 20 << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        << "font-size=\"12\">" << to_string(vx) << "</text>\n";
    svg << "<text x=\"18\" y=\"" << size / 2 << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
        << "transform=\"rotate(-90 18 " << size / 2 << ")\">" << to_string(vy) << "</text>\n";
    svg << "<text x=\"" << margin << "\" y=\"" << size - margin + 16 << "\" font-family=\"sans-serif\" font-size=\"10\">"
        << xml_escape(format_real(lo)) << "</text>\n";
    svg << "<text x=\"" << size - margin << "\" y=\"" << size - margin + 16
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" << xml_escape(format_real(hi))
        << "</text>\n";
    svg << "</svg>\n";
    return svg.str();
}

std::string scatter_basename(const ScatterTable &scatter) {
    std::string binning = scatter.binning;
    for (auto &c : binning) {
        if (c == ':' || c == ',') {
            c = '-';
        }
    }
    std::string name = "scatter_" + scatter.feature + "_" + binning;
    if (scatter.comparison != Comparison::OrigVsEroded) {
        name += "_" + std::string(to_string(scatter.comparison));
    }
    return name;
}

std::filesystem::path write_scatter(const ScatterTable &scatter, const std::filesystem::path &out_dir, bool with_svg) {
    std::filesystem::create_directories(out_dir);
    const auto base = scatter_basename(scatter);
    const auto csv = out_dir / (base + ".csv");
    write_text(csv, scatter.to_csv());
    if (with_svg) {
        write_text(out_dir / (base + ".svg"), scatter.to_svg());
    }
    return csv;
}

} // namespace radrobust
