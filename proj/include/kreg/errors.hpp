#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace kreg {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidMatrix : Error {
    using Error::Error;
};

struct InvalidArgument : Error {
    using Error::Error;
};

struct NotHermitian : Error {
    using Error::Error;
};

struct NotPSD : Error {
    using Error::Error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

// Factor i (1-based, 0 = unattributed) failed the norm bound; `angle` is the
// boundary angle for analytic checks, NaN otherwise.
struct NotContraction : Error {
    int index;
    double norm;
    double angle;

    NotContraction(int index_, double norm_, double angle_ = std::nan(""))
        : Error(message(index_, norm_, angle_)), index(index_), norm(norm_), angle(angle_) {}

    static std::string message(int index, double norm, double angle) {
        std::string msg = "factor";
        if (index > 0) msg += " " + std::to_string(index);
        msg += " is not a contraction (norm " + std::to_string(norm) + ")";
        if (!std::isnan(angle)) msg += " at boundary angle t=" + std::to_string(angle);
        return msg;
    }
};

struct NotCommuting : Error {
    int i;
    int j;
    double norm;

    NotCommuting(int i_, int j_, double norm_)
        : Error("operators " + std::to_string(i_) + " and " + std::to_string(j_) +
                " do not commute (commutator norm " + std::to_string(norm_) + ")"),
          i(i_), j(j_), norm(norm_) {}
};

struct NumericalBreakdown : Error {
    using Error::Error;
};

struct InvalidPartition : Error {
    using Error::Error;
};

struct InvalidPermutation : Error {
    using Error::Error;
};

struct PermutationExplosion : Error {
    using Error::Error;
};

struct OutsideClosedDisk : Error {
    using Error::Error;
};

struct SingularResolvent : Error {
    using Error::Error;
};

struct NotUnitary : Error {
    using Error::Error;
};

struct NotProperContraction : Error {
    using Error::Error;
};

struct ParseError : Error {
    std::string path;

    ParseError(const std::string& path_, const std::string& what_)
        : Error(path_.empty() ? what_ : path_ + ": " + what_), path(path_) {}
};

}  // namespace kreg
