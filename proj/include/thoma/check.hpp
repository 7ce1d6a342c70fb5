#pragma once

#include <string>
#include <utility>

namespace thoma {

/// Outcome of an exact verification; `witness` describes the first violation.
struct Verdict {
    bool ok = true;
    std::string witness;

    explicit operator bool() const { return ok; }

    static Verdict pass() { return {}; }
    static Verdict fail(std::string w) { return {false, std::move(w)}; }
};

}  // namespace thoma
