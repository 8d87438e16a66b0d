#pragma once

#include <stdexcept>
#include <string>

namespace dimerlab {

// One code per error condition in the public API.  The CLI maps these to
// process exit codes, so keep the enumeration order stable.
enum class ErrorCode {
    Ok = 0,
    MalformedInput = 2,   // bad file / bad PD text / bad JSON
    NotBipartite,
    Disconnected,
    MalformedRotation,
    EdgeNotOnFace,
    PatternMismatch,
    DegreeViolation,
    SearchExhausted,
    VarTableMismatch,
    NotDivisible,
    NonUnitInverse,
    FrozenVertex,
    NotHomogeneous,
    MalformedPD,
    InconsistentOrientation,
    SegmentNotExterior,
    EmptyAlpha,
    MismatchReport,
    TooLarge,
    NonUniqueMinimum,
    FlipNotApplicable,
    NotReducedAsserted,
    SpecializationMismatch,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::Ok: return "Ok";
        case ErrorCode::MalformedInput: return "MalformedInput";
        case ErrorCode::NotBipartite: return "NotBipartite";
        case ErrorCode::Disconnected: return "Disconnected";
        case ErrorCode::MalformedRotation: return "MalformedRotation";
        case ErrorCode::EdgeNotOnFace: return "EdgeNotOnFace";
        case ErrorCode::PatternMismatch: return "PatternMismatch";
        case ErrorCode::DegreeViolation: return "DegreeViolation";
        case ErrorCode::SearchExhausted: return "SearchExhausted";
        case ErrorCode::VarTableMismatch: return "VarTableMismatch";
        case ErrorCode::NotDivisible: return "NotDivisible";
        case ErrorCode::NonUnitInverse: return "NonUnitInverse";
        case ErrorCode::FrozenVertex: return "FrozenVertex";
        case ErrorCode::NotHomogeneous: return "NotHomogeneous";
        case ErrorCode::MalformedPD: return "MalformedPD";
        case ErrorCode::InconsistentOrientation: return "InconsistentOrientation";
        case ErrorCode::SegmentNotExterior: return "SegmentNotExterior";
        case ErrorCode::EmptyAlpha: return "EmptyAlpha";
        case ErrorCode::MismatchReport: return "MismatchReport";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::NonUniqueMinimum: return "NonUniqueMinimum";
        case ErrorCode::FlipNotApplicable: return "FlipNotApplicable";
        case ErrorCode::NotReducedAsserted: return "NotReducedAsserted";
        case ErrorCode::SpecializationMismatch: return "SpecializationMismatch";
    }
    return "Unknown";
}

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, std::string(error_code_name(code)) + ": " + what);
}

}  // namespace dimerlab
