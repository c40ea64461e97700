/*******************************************************************************
 * Copyright 2026 The cdfdamage Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *******************************************************************************/
#ifndef CDFDAMAGE_ERRORS_HPP
#define CDFDAMAGE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cdfdamage {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid parameters or configuration values.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

class NoClosedForm : public Error {
public:
    using Error::Error;
};

class NoSmoothExpansion : public Error {
public:
    using Error::Error;
};

class DivergenceError : public Error {
public:
    using Error::Error;
};

class UnsupportedDomain : public Error {
public:
    using Error::Error;
};

// Iterative solver failed after all retries.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

} // namespace cdfdamage

#endif
