#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace risbeam {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Mismatched vector/matrix sizes between modules.
struct DimensionError : Error {
    using Error::Error;
};

// Malformed config or channel files.
struct ConfigError : Error {
    using Error::Error;
};

// File system failures; message carries the path.
struct IoError : Error {
    using Error::Error;
};

// A caller violated a documented precondition (guards, empty grids, N=0).
struct PreconditionError : Error {
    using Error::Error;
};

// MRT is undefined on an identically zero effective channel.
struct ZeroChannelError : Error {
    using Error::Error;
};

// Carries the machine-readable invariant codes produced by validate().
class ValidationError : public Error {
  public:
    explicit ValidationError(std::vector<std::string> codes)
        : Error("validation failed: " + join(codes)), codes_(std::move(codes)) {}

    const std::vector<std::string>& codes() const { return codes_; }

  private:
    static std::string join(const std::vector<std::string>& codes) {
        std::string out;
        for (const auto& c : codes) {
            if (!out.empty()) out += ", ";
            out += c;
        }
        return out;
    }

    std::vector<std::string> codes_;
};

} // namespace risbeam
