// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The satd-toolkit Authors

#pragma once

#include <stdexcept>
#include <string>

namespace satd {

/// Base of every error raised by the toolkit. The subclass decides the CLI
/// exit code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual int exit_code() const noexcept { return 3; }
};

/// Bad configuration or arguments (exit code 1).
class ConfigError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 1; }
};

/// Bad or inconsistent input data (exit code 2).
class DataError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 2; }
};

/// Failure while running an experiment (exit code 3).
class RunError : public Error {
public:
    using Error::Error;
};

}  // namespace satd
