#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace pdesk {

enum class ErrorCode {
  // database
  UnknownMaster,
  UnknownPin,
  DuplicateInstance,
  // parsing
  SyntaxError,
  MissingTable,
  UndeclaredWire,
  PositionalConnectionUnsupported,
  UnsupportedCommand,
  // floorplan
  UtilizationInfeasible,
  TooManyPorts,
  MacroOverflow,
  SpecInfeasible,
  // placement
  NoMovableCells,
  RowOverflow,
  NoFillerMasters,
  // cts
  NoSinks,
  BufferMasterMissing,
  NoLegalSite,
  CycleDetected,
  // sta
  CombinationalLoop,
  NoClock,
  // timing opt
  NoBufferMaster,
  UnfixableViolation,
  NoSizeVariants,
  // routing
  Unroutable,
  // flow
  ConfigError,
  PreconditionViolated,
  // generic
  IoError,
};

const char* error_code_name(ErrorCode code);

// All fatal conditions surface as Error; non-fatal findings are data
// (violation lists, warnings on a Log).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Warning sink shared by parsers and tools. Warnings are ordered and
// deterministic; `echo` additionally mirrors them to stderr.
class Log {
 public:
  void warn(const std::string& msg);
  void info(const std::string& msg);

  const std::vector<std::string>& warnings() const { return warnings_; }
  void clear() { warnings_.clear(); }

  bool echo = false;

 private:
  std::vector<std::string> warnings_;
};

}  // namespace pdesk
