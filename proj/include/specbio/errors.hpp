#pragma once

#include <stdexcept>
#include <string>

namespace specbio {

// Exit-code categories used by the CLI: input/validation -> 2,
// numerical failure -> 3, certificate violation (a bug signal) -> 4.
struct InputError : std::runtime_error {
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

struct CertificateError : std::runtime_error {
    explicit CertificateError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace specbio
