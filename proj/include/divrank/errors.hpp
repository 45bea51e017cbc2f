#pragma once

#include <stdexcept>
#include <string>

namespace divrank {

enum class Errc {
  Disconnected,
  DanglingEdge,
  DuplicateVertex,
  NotABridge,
  HasLoops,
  BadBaseVertex,
  UnknownVertex,
  UnknownEdge,
  UnknownName,
  VertexNotInHost,
  HostMismatch,
  NotReducedInput,
  GenusTooSmall,
  WrongGenus,
  IsHyperelliptic,
  TooLarge,
  BudgetExceeded,
  ParseError,
  InvalidArgument,
  Overflow,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::Disconnected: return "Disconnected";
    case Errc::DanglingEdge: return "DanglingEdge";
    case Errc::DuplicateVertex: return "DuplicateVertex";
    case Errc::NotABridge: return "NotABridge";
    case Errc::HasLoops: return "HasLoops";
    case Errc::BadBaseVertex: return "BadBaseVertex";
    case Errc::UnknownVertex: return "UnknownVertex";
    case Errc::UnknownEdge: return "UnknownEdge";
    case Errc::UnknownName: return "UnknownName";
    case Errc::VertexNotInHost: return "VertexNotInHost";
    case Errc::HostMismatch: return "HostMismatch";
    case Errc::NotReducedInput: return "NotReducedInput";
    case Errc::GenusTooSmall: return "GenusTooSmall";
    case Errc::WrongGenus: return "WrongGenus";
    case Errc::IsHyperelliptic: return "IsHyperelliptic";
    case Errc::TooLarge: return "TooLarge";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::ParseError: return "ParseError";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::Overflow: return "Overflow";
  }
  return "Unknown";
}

/// Library error. `code()` identifies the violated contract.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace divrank
