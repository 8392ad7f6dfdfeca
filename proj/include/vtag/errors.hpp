#pragma once

#include <stdexcept>
#include <string>

namespace vtag {

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid configuration or argument values (delta ratio out of range,
/// version id below 1, empty query, ...).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Malformed or incomplete corpus / index data on disk.
class CorpusError : public Error {
public:
    using Error::Error;
};

/// A query matched no indexed document.
class NotFoundError : public Error {
public:
    using Error::Error;
};

}  // namespace vtag
