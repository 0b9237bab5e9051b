#pragma once

#include <stdexcept>
#include <string>

namespace darboux {

// Every failure the library can report. Kinds map onto CLI exit codes:
// usage/parse problems exit 2, math problems exit 3.
enum class ErrorKind {
    SyntaxError,      // bad expression text (carries a position)
    UsageError,       // bad command line / session file
    UnknownSymbol,    // name not registered in the context
    UnknownVariable,  // derivation by a name that is not a variable
    DivisionByZero,
    NonScalarDivisor, // '/' by an operator of positive order
    ZeroOperator,     // operation needs a nonzero operator
    SingularWronskian,
    ContextMismatch,
    ChainMismatch,    // pieces do not fit together (composition, chains)
    InvalidWitness,
    NotInKernel,
    ZeroInvariant,    // Laplace transform with h or k = 0
    NoVerifiedCandidate,
    WrongShape,
    ZeroLeading,
    SingularP,
    ZeroF,
    NonCommutingTail,
    NotScalarTail,
    NotDifferential,
    NonCommuting,
    NotFirstOrder,
    ZeroGauge,
    Internal,         // a postcondition identity failed; indicates a bug
};

struct Error : std::runtime_error {
    ErrorKind kind;
    std::size_t pos; // position for SyntaxError, npos otherwise

    Error(ErrorKind k, const std::string& msg, std::size_t p = std::string::npos)
        : std::runtime_error(msg), kind(k), pos(p) {}
};

// true for errors that are the caller's fault at the text/CLI level
inline bool is_usage_error(ErrorKind k) {
    return k == ErrorKind::SyntaxError || k == ErrorKind::UsageError ||
           k == ErrorKind::UnknownSymbol;
}

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg,
                              std::size_t pos = std::string::npos) {
    throw Error(k, msg, pos);
}

// runtime postcondition check for identities that must hold whenever the
// preconditions did; a failure means implementation or input inconsistency
inline void check_identity(bool ok, const char* what) {
    if (!ok) fail(ErrorKind::Internal, std::string("identity check failed: ") + what);
}

} // namespace darboux
