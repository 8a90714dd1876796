#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace knfr {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Picard iteration failed to converge; carries the per-sweep distances.
class PicardError : public Error {
public:
    PicardError(const std::string& msg, std::vector<double> history)
        : Error(msg), distance_history(std::move(history)) {}
    std::vector<double> distance_history;
};

/// Time march produced a non-finite state.
class BlowUpError : public Error {
public:
    BlowUpError(const std::string& msg, long step_index)
        : Error(msg), step(step_index) {}
    long step;
};

}  // namespace knfr
