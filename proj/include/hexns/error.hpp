#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hexns {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Precondition violated by the caller (bad time, bad grid, nonzero mean...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Evaluation requested at a kernel singularity.
class SingularityError : public DomainError {
public:
    using DomainError::DomainError;
};

class AccuracyError : public Error {
public:
    AccuracyError(const std::string& what, double achieved, double requested)
        : Error(what), achieved_(achieved), requested_(requested) {}
    double achieved() const { return achieved_; }
    double requested() const { return requested_; }

private:
    double achieved_;
    double requested_;
};

class BlowUpError : public Error {
public:
    BlowUpError(const std::string& what, long step)
        : Error(what), step_(step) {}
    long step() const { return step_; }

private:
    long step_;
};

class ConfigError : public Error {
public:
    ConfigError(const std::string& key, const std::string& what)
        : Error(key + " " + what), key_(key) {}
    const std::string& key() const { return key_; }

private:
    std::string key_;
};

class CheckpointError : public Error {
public:
    enum class Kind { Magic, Version, Truncated, Trailing, Io };
    CheckpointError(Kind kind, const std::string& what)
        : Error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace hexns
