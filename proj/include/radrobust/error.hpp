#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace radrobust {

enum class ErrorKind {
    InvalidArgument,
    EmptyRegion,
    DegenerateTarget,
    EmptyCorpus,
    EmptyRoi,
    InvalidSpec,
    EmptyMatrix,
    VanishedMask,
    SaturatedMask,
    ZeroVariance,
    EmptyInput,
    InvalidConfig,
    ParseError,
    DuplicateId,
    MissingFile,
    IoError,
    AllImagesExcluded,
    UnknownFeature,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries a kind so callers (the CLI in particular) can
// map it onto an exit code without parsing messages.
class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string &message);

    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

// True for kinds caused by user-supplied configuration rather than by the data being processed.
bool is_config_error(ErrorKind kind);

} // namespace radrobust
