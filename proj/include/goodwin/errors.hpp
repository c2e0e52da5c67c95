#pragma once

#include <stdexcept>
#include <string>

namespace goodwin {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// --- series construction / transformation ---

class NonFiniteValue : public Error {
public:
    using Error::Error;
};

class NonPositiveValue : public Error {
public:
    using Error::Error;
};

class SeriesTooShort : public Error {
public:
    using Error::Error;
};

class NoOverlap : public Error {
public:
    using Error::Error;
};

// --- CSV ingestion ---

class MissingColumn : public Error {
public:
    using Error::Error;
};

class MalformedRow : public Error {
public:
    using Error::Error;
};

class GapInYears : public Error {
public:
    using Error::Error;
};

class EmptyWindow : public Error {
public:
    using Error::Error;
};

// --- derived-variable construction ---

class NonPositiveProfit : public Error {
public:
    using Error::Error;
};

class DivisionDomain : public Error {
public:
    using Error::Error;
};

// --- regression / testing ---

class RankDeficient : public Error {
public:
    using Error::Error;
};

class TooFewObservations : public Error {
public:
    using Error::Error;
};

class WrongModelShape : public Error {
public:
    using Error::Error;
};

// --- dynamical system ---

class ZeroRho : public Error {
public:
    using Error::Error;
};

class ComplexPeriod : public Error {
public:
    using Error::Error;
};

class DriftToleranceUnmet : public Error {
public:
    using Error::Error;
};

class NonPositiveState : public Error {
public:
    using Error::Error;
};

// --- evaluation ---

class ZeroMse : public Error {
public:
    using Error::Error;
};

class LengthMismatch : public Error {
public:
    using Error::Error;
};

// --- pipeline / IO ---

class IoFailure : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace goodwin
