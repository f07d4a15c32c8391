#include "pdesk/diag.hpp"

#include <cstdio>

namespace pdesk {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownMaster: return "UnknownMaster";
    case ErrorCode::UnknownPin: return "UnknownPin";
    case ErrorCode::DuplicateInstance: return "DuplicateInstance";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::MissingTable: return "MissingTable";
    case ErrorCode::UndeclaredWire: return "UndeclaredWire";
    case ErrorCode::PositionalConnectionUnsupported: return "PositionalConnectionUnsupported";
    case ErrorCode::UnsupportedCommand: return "UnsupportedCommand";
    case ErrorCode::UtilizationInfeasible: return "UtilizationInfeasible";
    case ErrorCode::TooManyPorts: return "TooManyPorts";
    case ErrorCode::MacroOverflow: return "MacroOverflow";
    case ErrorCode::SpecInfeasible: return "SpecInfeasible";
    case ErrorCode::NoMovableCells: return "NoMovableCells";
    case ErrorCode::RowOverflow: return "RowOverflow";
    case ErrorCode::NoFillerMasters: return "NoFillerMasters";
    case ErrorCode::NoSinks: return "NoSinks";
    case ErrorCode::BufferMasterMissing: return "BufferMasterMissing";
    case ErrorCode::NoLegalSite: return "NoLegalSite";
    case ErrorCode::CycleDetected: return "CycleDetected";
    case ErrorCode::CombinationalLoop: return "CombinationalLoop";
    case ErrorCode::NoClock: return "NoClock";
    case ErrorCode::NoBufferMaster: return "NoBufferMaster";
    case ErrorCode::UnfixableViolation: return "UnfixableViolation";
    case ErrorCode::NoSizeVariants: return "NoSizeVariants";
    case ErrorCode::Unroutable: return "Unroutable";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::IoError: return "IoError";
  }
  return "Error";
}

void Log::warn(const std::string& msg) {
  warnings_.push_back(msg);
  if (echo) std::fprintf(stderr, "warning: %s\n", msg.c_str());
}

void Log::info(const std::string& msg) {
  if (echo) std::fprintf(stderr, "%s\n", msg.c_str());
}

}  // namespace pdesk
