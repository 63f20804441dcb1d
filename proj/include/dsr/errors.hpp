// Copyright (c) 2026 The dsr authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace dsr {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// sigma*E - A could not be factorized; sigma is (numerically) a generalized
// eigenvalue of (E, A).
class SingularShift : public Error {
public:
    explicit SingularShift(std::complex<double> sigma, const std::string& what = "")
        : Error("singular shift (" + std::to_string(sigma.real()) + (sigma.imag() < 0 ? "-" : "+") +
                std::to_string(std::abs(sigma.imag())) + "i)" + (what.empty() ? "" : ": " + what)),
          shift(sigma) {}
    std::complex<double> shift;
};

class SingularPencil : public Error {
public:
    using Error::Error;
};

class DenseLimitExceeded : public Error {
public:
    using Error::Error;
};

// Bi-normalization pivot |y* E z| too small: (near-)defective reduced pencil.
class DefectivePencil : public Error {
public:
    using Error::Error;
};

class SingularReducedE : public Error {
public:
    using Error::Error;
};

class SingularReducedPencil : public Error {
public:
    using Error::Error;
};

class EmptyBasis : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class SingularA22 : public Error {
public:
    using Error::Error;
};

class SingularSchurComplement : public Error {
public:
    using Error::Error;
};

class SingularE11 : public Error {
public:
    using Error::Error;
};

class SingularProjectedGram : public Error {
public:
    using Error::Error;
};

class SingularSaddle : public Error {
public:
    explicit SingularSaddle(std::complex<double> sigma)
        : Error("singular saddle matrix at sigma = (" + std::to_string(sigma.real()) + ", " +
                std::to_string(sigma.imag()) + ")"),
          shift(sigma) {}
    std::complex<double> shift;
};

class UnstableSystem : public Error {
public:
    using Error::Error;
};

class InvalidParams : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& file, long line, const std::string& what)
        : Error(file + ":" + std::to_string(line) + ": " + what) {}
    explicit ParseError(const std::string& what) : Error(what) {}
};

class ValidationFailed : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace dsr
