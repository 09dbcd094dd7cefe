#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace obstructk {

/// Malformed or inconsistent user input. CLI exit code 2.
class InputError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A mathematical invariant that must hold by construction was violated. CLI exit code 3.
class InternalError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

inline std::string format_simplex(const std::vector<int>& s) {
    std::string out = "[";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s[i]);
    }
    return out + "]";
}

/// A cochain expected to be closed has nonzero coboundary on `simplex`.
class NotCocycleError : public InputError {
  public:
    NotCocycleError(std::vector<int> simplex, const std::string& detail = {})
        : InputError("not a cocycle: coboundary nonzero on " + format_simplex(simplex) +
                     (detail.empty() ? "" : " (" + detail + ")")),
          simplex_(std::move(simplex)) {}
    const std::vector<int>& simplex() const { return simplex_; }

  private:
    std::vector<int> simplex_;
};

/// Nearest-lift decisions that are ties or that cross a discrete jump.
class AmbiguousLiftError : public InputError {
  public:
    using InputError::InputError;
};

class DiscontinuousDataError : public InputError {
  public:
    using InputError::InputError;
};

/// Sampled transition data whose defect is not constant on a triple overlap.
class CoverTooCoarseError : public InputError {
  public:
    CoverTooCoarseError(std::vector<int> triple, const std::string& detail)
        : InputError("cover too coarse: defect not constant on " + format_simplex(triple) + " (" + detail + ")"),
          triple_(std::move(triple)) {}
    const std::vector<int>& triple() const { return triple_; }

  private:
    std::vector<int> triple_;
};

}  // namespace obstructk
