#pragma once

#include <stdexcept>
#include <string>

namespace dynembed {

// Error categories, mirrored one-to-one by the dynembed_status codes of the
// C API (see include/dynembed.h).
enum class ErrorCode {
    Io = 1,
    Parse = 2,
    InvalidArgument = 3,
    NoOpTriple = 4,
    InsufficientSpan = 5,
    DuplicateNode = 6,
    EmptyCorpus = 7,
    MissingNode = 8,
    EmptyGroundTruth = 9,
    NoQueries = 10,
    InsufficientPairs = 11,
    DegenerateLabels = 12,
    Runtime = 13,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

#define DYNEMBED_DEFINE_ERROR(Name)                                                  \
    class Name##Error : public Error {                                               \
      public:                                                                         \
        explicit Name##Error(const std::string& what) : Error(ErrorCode::Name, what) {} \
    }

DYNEMBED_DEFINE_ERROR(Io);
DYNEMBED_DEFINE_ERROR(Parse);
DYNEMBED_DEFINE_ERROR(InvalidArgument);
DYNEMBED_DEFINE_ERROR(NoOpTriple);
DYNEMBED_DEFINE_ERROR(InsufficientSpan);
DYNEMBED_DEFINE_ERROR(DuplicateNode);
DYNEMBED_DEFINE_ERROR(EmptyCorpus);
DYNEMBED_DEFINE_ERROR(MissingNode);
DYNEMBED_DEFINE_ERROR(EmptyGroundTruth);
DYNEMBED_DEFINE_ERROR(NoQueries);
DYNEMBED_DEFINE_ERROR(InsufficientPairs);
DYNEMBED_DEFINE_ERROR(DegenerateLabels);

#undef DYNEMBED_DEFINE_ERROR

}  // namespace dynembed
