// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace envtk {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An evaluation point lies outside the admissible domain (e.g. integration
/// endpoint outside [0,1], or a shifted index falling off the grid).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A shift or step is not an integer multiple of the grid spacing.
class AlignmentError : public Error {
public:
    using Error::Error;
};

/// A caller-supplied argument is malformed (empty step list, mismatched
/// dimensions, unordered outcome pair, missing comparator, ...).
class ArgumentError : public Error {
public:
    using Error::Error;
};

/// A user callback failed or produced a non-finite value.
class EvaluationError : public Error {
public:
    using Error::Error;
};

/// Payment inversion could not bracket the target value; the payoff is not
/// onto the required range.
class NotOntoError : public Error {
public:
    using Error::Error;
};

/// A sampled quantity contradicts a declared model property (payoff not
/// strictly decreasing in the payment, type derivative above its bound,
/// value function not convex, ...).
class ModelViolationError : public Error {
public:
    using Error::Error;
};

/// A rule asserted to be optimal was beaten by a candidate action.
class NotOptimalError : public Error {
public:
    using Error::Error;
};

/// An operation's stated precondition does not hold (allocation not
/// increasing, prior on the simplex boundary, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Internal numeric failure (iteration cap hit, bisection stalled).
class NumericError : public Error {
public:
    using Error::Error;
};

} // namespace envtk
