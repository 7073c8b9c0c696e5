#pragma once

#include <stdexcept>
#include <string>

namespace lgm {

enum class ErrorCode {
    Parse,
    NonSquare,
    Degenerate,
    ChargeOutOfRange,
    NotASymmetry,
    NotAdmissible,
    NotSL,
    Unsupported,
    NonUniqueSolution,
    VerificationFailure,
    InternalInconsistency,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const { return code_; }

    // CLI exit-code convention: 1 input error, 2 unsupported, 3 verification failure.
    int exit_code() const {
        switch (code_) {
        case ErrorCode::Unsupported:
            return 2;
        case ErrorCode::VerificationFailure:
        case ErrorCode::NonUniqueSolution:
        case ErrorCode::InternalInconsistency:
            return 3;
        default:
            return 1;
        }
    }

    const char* code_name() const {
        switch (code_) {
        case ErrorCode::Parse: return "ParseError";
        case ErrorCode::NonSquare: return "NonSquare";
        case ErrorCode::Degenerate: return "Degenerate";
        case ErrorCode::ChargeOutOfRange: return "ChargeOutOfRange";
        case ErrorCode::NotASymmetry: return "NotASymmetry";
        case ErrorCode::NotAdmissible: return "NotAdmissible";
        case ErrorCode::NotSL: return "NotSL";
        case ErrorCode::Unsupported: return "Unsupported";
        case ErrorCode::NonUniqueSolution: return "NonUniqueSolution";
        case ErrorCode::VerificationFailure: return "VerificationFailure";
        case ErrorCode::InternalInconsistency: return "InternalInconsistency";
        }
        return "Error";
    }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

} // namespace lgm
