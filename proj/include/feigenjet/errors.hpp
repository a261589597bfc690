#pragma once

#include <stdexcept>
#include <string>

namespace feigenjet {

// All recoverable failures are exceptions rooted here so the CLI can turn
// them into a diagnostic and a nonzero exit code.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DomainExceeded : Error {
  explicit DomainExceeded(const std::string& w) : Error("domain exceeded: " + w) {}
};

struct ContainmentFailure : Error {
  explicit ContainmentFailure(const std::string& w) : Error("containment failure: " + w) {}
};

struct DegenerateMap : Error {
  explicit DegenerateMap(const std::string& w) : Error("degenerate map: " + w) {}
};

struct NoConvergence : Error {
  explicit NoConvergence(const std::string& w) : Error("no convergence: " + w) {}
};

struct RootNotBracketed : Error {
  explicit RootNotBracketed(const std::string& w) : Error("root not bracketed: " + w) {}
};

struct TraceStalled : Error {
  explicit TraceStalled(const std::string& w) : Error("trace stalled: " + w) {}
};

struct SingularPoint : Error {
  explicit SingularPoint(const std::string& w) : Error("singular point: " + w) {}
};

struct DeltaNotFound : Error {
  explicit DeltaNotFound(const std::string& w) : Error("delta not found: " + w) {}
};

struct InconsistentAtlas : Error {
  explicit InconsistentAtlas(const std::string& w) : Error("inconsistent atlas: " + w) {}
};

struct PrecisionExhausted : Error {
  explicit PrecisionExhausted(const std::string& w) : Error("precision exhausted: " + w) {}
};

struct MissingCache : Error {
  explicit MissingCache(const std::string& w) : Error("missing cache: " + w) {}
};

struct InvalidWindow : Error {
  explicit InvalidWindow(const std::string& w) : Error("invalid window: " + w) {}
};

}  // namespace feigenjet
