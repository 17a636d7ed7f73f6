#include "radrobust/feature_table.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "radrobust/error.hpp"
#include "radrobust/format.hpp"
#include "radrobust/manifest.hpp"

namespace radrobust {

namespace {

template <class Get> std::vector<std::string> distinct(const std::vector<FeatureRow> &rows, Get get) {
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (const auto &r : rows) {
        const std::string &v = get(r);
        if (seen.insert(v).second) {
            out.push_back(v);
        }
    }
    return out;
}

std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

} // namespace

std::string_view to_string(MaskVariant v) {
    switch (v) {
    case MaskVariant::Original: return "original";
    case MaskVariant::Eroded: return "eroded";
    case MaskVariant::Dilated: return "dilated";
    }
    return "original";
}

MaskVariant parse_mask_variant(std::string_view text) {
    if (text == "original") {
        return MaskVariant::Original;
    }
    if (text == "eroded") {
        return MaskVariant::Eroded;
    }
    if (text == "dilated") {
        return MaskVariant::Dilated;
    }
    throw Error(ErrorKind::ParseError, "unknown mask variant '" + std::string(text) + "'");
}

std::vector<std::string> FeatureTable::image_ids() const {
    return distinct(rows_, [](const FeatureRow &r) -> const std::string & { return r.image_id; });
}

std::vector<std::string> FeatureTable::binnings() const {
    return distinct(rows_, [](const FeatureRow &r) -> const std::string & { return r.binning; });
}

std::vector<std::string> FeatureTable::features() const {
    return distinct(rows_, [](const FeatureRow &r) -> const std::string & { return r.feature; });
}

std::string FeatureTable::to_csv() const {
    std::string out = kFeatureTableHeader;
    out += '\n';
    for (const auto &r : rows_) {
        out += csv_field(r.image_id);
        out += ',';
        out += to_string(r.variant);
        out += ',';
        out += csv_field(r.binning);
        out += ',';
        out += csv_field(r.feature);
        out += ',';
        out += format_real(r.value);
        out += '\n';
    }
    return out;
}

FeatureTable FeatureTable::from_csv(const std::string &text) {
    std::istringstream in(text);
    std::string line;
    size_t line_no = 0;
    FeatureTable table;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        if (!have_header) {
            if (line != kFeatureTableHeader) {
                throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ", column 1: expected header '" +
                                                       kFeatureTableHeader + "'");
            }
            have_header = true;
            continue;
        }
        const auto f = split_csv_record(line, line_no);
        if (f.size() != 5) {
            throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": expected 5 fields, found " +
                                                   std::to_string(f.size()));
        }
        FeatureRow row;
        row.image_id = f[0];
        try {
            row.variant = parse_mask_variant(f[1]);
        } catch (const Error &e) {
            throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ", column 2: " + e.what());
        }
        row.binning = f[2];
        row.feature = f[3];
        const char *end = f[4].data() + f[4].size();
        const auto [ptr, ec] = std::from_chars(f[4].data(), end, row.value);
        if (f[4].empty() || ec != std::errc{} || ptr != end) {
            throw Error(ErrorKind::ParseError,
                        "line " + std::to_string(line_no) + ", column 5: value is not a number: '" + f[4] + "'");
        }
        table.add(std::move(row));
    }
    if (!have_header) {
        throw Error(ErrorKind::ParseError, "line 1, column 1: feature table is empty");
    }
    return table;
}

void FeatureTable::write(const std::filesystem::path &path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorKind::IoError, "cannot write '" + path.string() + "'");
    }
    out << to_csv();
}

FeatureTable FeatureTable::read(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::MissingFile, "cannot open feature table '" + path.string() + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_csv(ss.str());
}

} // namespace radrobust
