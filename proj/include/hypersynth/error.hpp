#pragma once

#include <stdexcept>
#include <string>

namespace hypersynth {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// plant-core
struct DeadlockState : Error {
    std::string state;
    explicit DeadlockState(std::string s) : Error("deadlock state: " + s), state(std::move(s)) {}
};
struct OverlappingEdge : Error {
    std::string from, to;
    OverlappingEdge(std::string f, std::string t)
        : Error("edge is both controllable and uncontrollable: " + f + " -> " + t), from(std::move(f)), to(std::move(t)) {}
};
struct DanglingReference : Error {
    explicit DanglingReference(const std::string& what) : Error("unknown reference: " + what) {}
};
struct NotAcyclic : Error {
    NotAcyclic() : Error("plant frame is not acyclic") {}
};
struct FormatError : Error {
    using Error::Error;
};

// hyperltl-lang
struct SyntaxError : Error {
    std::size_t position;
    SyntaxError(std::size_t pos, const std::string& msg)
        : Error("syntax error at " + std::to_string(pos) + ": " + msg), position(pos) {}
};
struct UnboundVariable : Error {
    std::string name;
    explicit UnboundVariable(std::string n) : Error("unbound trace variable: " + n), name(std::move(n)) {}
};
struct DuplicateQuantifier : Error {
    std::string name;
    explicit DuplicateQuantifier(std::string n) : Error("variable quantified twice: " + n), name(std::move(n)) {}
};

// trace-semantics
struct HorizonExceeded : Error {
    HorizonExceeded(std::size_t need, std::size_t limit)
        : Error("joint lasso horizon " + std::to_string(need) + " exceeds limit " + std::to_string(limit)) {}
};

// synthesis-engine
struct DeadlockIntroduced : Error {
    std::string state;
    explicit DeadlockIntroduced(std::string s) : Error("pruning deadlocks state " + s), state(std::move(s)) {}
};
struct FragmentMismatch : Error {
    using Error::Error;
};
struct FrameMismatch : Error {
    using Error::Error;
};
struct CandidateSpaceTooLarge : Error {
    std::size_t edges, limit;
    CandidateSpaceTooLarge(std::size_t e, std::size_t l)
        : Error(std::to_string(e) + " removable controllable edges exceed the limit of " + std::to_string(l)),
          edges(e), limit(l) {}
};

// reductions
struct NotHorn : Error {
    std::size_t clause;
    explicit NotHorn(std::size_t c) : Error("clause " + std::to_string(c) + " has more than one positive literal"), clause(c) {}
};
struct NotNormalized : Error {
    using Error::Error;
};
struct ArityMismatch : Error {
    using Error::Error;
};
struct DecoderMismatch : Error {
    using Error::Error;
};
struct PrefixNotExistsLeading : Error {
    PrefixNotExistsLeading() : Error("QBF prefix must start with an existential block") {}
};

// nrp-casestudy
struct ConfigInvalid : Error {
    using Error::Error;
};
struct PartialStrategy : Error {
    std::string state;
    explicit PartialStrategy(std::string s) : Error("strategy undefined at state " + s), state(std::move(s)) {}
};

}  // namespace hypersynth
