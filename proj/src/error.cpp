#include "radrobust/error.hpp"

namespace radrobust {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::EmptyRegion: return "EmptyRegion";
    case ErrorKind::DegenerateTarget: return "DegenerateTarget";
    case ErrorKind::EmptyCorpus: return "EmptyCorpus";
    case ErrorKind::EmptyRoi: return "EmptyRoi";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::EmptyMatrix: return "EmptyMatrix";
    case ErrorKind::VanishedMask: return "VanishedMask";
    case ErrorKind::SaturatedMask: return "SaturatedMask";
    case ErrorKind::ZeroVariance: return "ZeroVariance";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::DuplicateId: return "DuplicateId";
    case ErrorKind::MissingFile: return "MissingFile";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::AllImagesExcluded: return "AllImagesExcluded";
    case ErrorKind::UnknownFeature: return "UnknownFeature";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string &message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

bool is_config_error(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::InvalidSpec:
    case ErrorKind::InvalidConfig:
    case ErrorKind::UnknownFeature:
    case ErrorKind::DegenerateTarget:
        return true;
    default:
        return false;
    }
}

} // namespace radrobust
