#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "radrobust/image.hpp"

namespace radrobust {

inline constexpr const char *kManifestHeader = "image_id,image_path,spacing_x,spacing_y,x0,y0,bw,bh,label";

struct ManifestEntry {
    std::string image_id;
    // As written in the manifest; relative paths resolve against the manifest's directory.
    std::string image_path;
    Spacing spacing;
    BBox bbox;
    std::optional<std::string> label;
};

// Splits one CSV record. Fields may be double-quoted ("" escapes a quote). Throws ParseError with
// the 1-based line number on an unterminated quote.
std::vector<std::string> split_csv_record(const std::string &line, size_t line_no);

// Parses and validates a manifest. ParseError messages carry "line L, column C"; DuplicateId names
// the repeated id. File existence is checked later, when images are loaded.
std::vector<ManifestEntry> read_manifest(const std::filesystem::path &path);
std::vector<ManifestEntry> parse_manifest(const std::string &text);

void write_manifest(const std::filesystem::path &path, const std::vector<ManifestEntry> &entries);

std::filesystem::path resolve_image_path(const std::filesystem::path &manifest_path, const ManifestEntry &entry);

} // namespace radrobust
