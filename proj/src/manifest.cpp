#include "radrobust/manifest.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "radrobust/error.hpp"
#include "radrobust/format.hpp"

namespace radrobust {

namespace {

[[noreturn]] void parse_fail(size_t line, size_t column, const std::string &msg) {
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg);
}

template <class T> T field_number(const std::string &text, size_t line, size_t column, const char *name) {
    T value{};
    const char *end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (text.empty() || ec != std::errc{} || ptr != end) {
        parse_fail(line, column, std::string(name) + " is not a number: '" + text + "'");
    }
    return value;
}

std::string quote_if_needed(const std::string &s) {
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

std::vector<std::string> split_csv_record(const std::string &line, size_t line_no) {
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                fields.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                fields.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back();
        } else {
            fields.back() += c;
        }
    }
    if (quoted) {
        parse_fail(line_no, fields.size(), "unterminated quoted field");
    }
    return fields;
}

std::vector<ManifestEntry> parse_manifest(const std::string &text) {
    std::istringstream in(text);
    std::string line;
    size_t line_no = 0;
    std::vector<ManifestEntry> entries;
    std::set<std::string> seen;
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
            if (line != kManifestHeader) {
                parse_fail(line_no, 1, std::string("expected header '") + kManifestHeader + "'");
            }
            have_header = true;
            continue;
        }
        const auto f = split_csv_record(line, line_no);
        if (f.size() != 9) {
            parse_fail(line_no, std::min<size_t>(f.size(), 9) + (f.size() < 9 ? 1 : 0),
                       "expected 9 fields, found " + std::to_string(f.size()));
        }
        ManifestEntry e;
        e.image_id = f[0];
        if (e.image_id.empty()) {
            parse_fail(line_no, 1, "image_id is empty");
        }
        e.image_path = f[1];
        if (e.image_path.empty()) {
            parse_fail(line_no, 2, "image_path is empty");
        }
        e.spacing.x = field_number<double>(f[2], line_no, 3, "spacing_x");
        e.spacing.y = field_number<double>(f[3], line_no, 4, "spacing_y");
        if (!(e.spacing.x > 0.0) || !std::isfinite(e.spacing.x)) {
            parse_fail(line_no, 3, "spacing_x must be positive");
        }
        if (!(e.spacing.y > 0.0) || !std::isfinite(e.spacing.y)) {
            parse_fail(line_no, 4, "spacing_y must be positive");
        }
        e.bbox.x0 = field_number<int64_t>(f[4], line_no, 5, "x0");
        e.bbox.y0 = field_number<int64_t>(f[5], line_no, 6, "y0");
        e.bbox.bw = field_number<int64_t>(f[6], line_no, 7, "bw");
        e.bbox.bh = field_number<int64_t>(f[7], line_no, 8, "bh");
        if (e.bbox.bw < 1) {
            parse_fail(line_no, 7, "bw must be at least 1");
        }
        if (e.bbox.bh < 1) {
            parse_fail(line_no, 8, "bh must be at least 1");
        }
        if (!f[8].empty()) {
            e.label = f[8];
        }
        if (!seen.insert(e.image_id).second) {
            throw Error(ErrorKind::DuplicateId, "image_id '" + e.image_id + "' appears more than once (line " +
                                                    std::to_string(line_no) + ")");
        }
        entries.push_back(std::move(e));
    }
    if (!have_header) {
        parse_fail(1, 1, "manifest is empty");
    }
    return entries;
}

std::vector<ManifestEntry> read_manifest(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::MissingFile, "cannot open manifest '" + path.string() + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_manifest(ss.str());
}

void write_manifest(const std::filesystem::path &path, const std::vector<ManifestEntry> &entries) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorKind::IoError, "cannot write '" + path.string() + "'");
    }
    out << kManifestHeader << '\n';
    for (const auto &e : entries) {
        out << quote_if_needed(e.image_id) << ',' << quote_if_needed(e.image_path) << ',' << format_real(e.spacing.x)
            << ',' << format_real(e.spacing.y) << ',' << e.bbox.x0 << ',' << e.bbox.y0 << ',' << e.bbox.bw << ','
            << e.bbox.bh << ',' << quote_if_needed(e.label.value_or("")) << '\n';
    }
}

std::filesystem::path resolve_image_path(const std::filesystem::path &manifest_path, const ManifestEntry &entry) {
    const std::filesystem::path p(entry.image_path);
    if (p.is_absolute()) {
        return p;
    }
    return manifest_path.parent_path() / p;
}

} // namespace radrobust
