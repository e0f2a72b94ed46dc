#pragma once

#include <stdexcept>
#include <string>

namespace jetweil {

// All library errors derive from Error so callers can catch the whole family.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DivisionByNonUnit : Error {
    explicit DivisionByNonUnit(const std::string& w = "division by a non-unit scalar") : Error(w) {}
};

struct NegativeRadicand : Error {
    explicit NegativeRadicand(const std::string& w = "square root of a non-positive rational") : Error(w) {}
};

// Raised when a square root falls outside the fixed principal/Fresnel
// branches.  Callers must keep probes inside the safe region; the library
// never guesses a branch.
struct BranchUndetermined : Error {
    explicit BranchUndetermined(const std::string& w = "square-root branch undetermined") : Error(w) {}
};

struct BaseMismatch : Error {
    explicit BaseMismatch(const std::string& w = "jet base point or order mismatch") : Error(w) {}
};

struct NonUnitLeadingCoefficient : Error {
    explicit NonUnitLeadingCoefficient(const std::string& w = "jet has non-unit leading coefficient") : Error(w) {}
};

struct ArityMismatch : Error {
    explicit ArityMismatch(const std::string& w = "operator variable counts differ") : Error(w) {}
};

struct NotInSp : Error {
    explicit NotInSp(const std::string& w = "matrix is not in the symplectic block form") : Error(w) {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& w = "ambient dimension mismatch") : Error(w) {}
};

struct SingularSubstitution : Error {
    explicit SingularSubstitution(const std::string& w = "linear substitution matrix is singular") : Error(w) {}
};

struct NonIntegrablePhase : Error {
    explicit NonIntegrablePhase(const std::string& w = "phase is not integrable in the requested variable") : Error(w) {}
};

struct ConstantPhaseNotExpandable : Error {
    explicit ConstantPhaseNotExpandable(const std::string& w = "constant phase exponent is not expandable") : Error(w) {}
};

struct NotAGenerator : Error {
    explicit NotAGenerator(const std::string& w = "element is not one of the supported generators") : Error(w) {}
};

struct NonSquareBase : Error {
    explicit NonSquareBase(const std::string& w = "base point is not a perfect rational square") : Error(w) {}
};

struct NotImplementedFactorization : Error {
    explicit NotImplementedFactorization(const std::string& w = "factorization implemented for n = 1 only") : Error(w) {}
};

struct SignInconsistent : Error {
    explicit SignInconsistent(const std::string& w = "projective sign differs between probes") : Error(w) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& w = "malformed input") : Error(w) {}
};

}  // namespace jetweil
