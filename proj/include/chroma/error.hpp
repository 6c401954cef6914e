/*
 * Copyright 2026 The chroma authors
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
 */

#pragma once

#include <stdexcept>
#include <string>

namespace chroma {

enum class ErrorKind {
    DeadEndNode,
    DanglingEdge,
    UnknownColor,
    NotAPath,
    BadLetter,
    NotOnePlayer,
    NonNumericAlphabet,
    OracleFailure,
    Format,
};

inline const char* to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::DeadEndNode: return "DeadEndNode";
    case ErrorKind::DanglingEdge: return "DanglingEdge";
    case ErrorKind::UnknownColor: return "UnknownColor";
    case ErrorKind::NotAPath: return "NotAPath";
    case ErrorKind::BadLetter: return "BadLetter";
    case ErrorKind::NotOnePlayer: return "NotOnePlayer";
    case ErrorKind::NonNumericAlphabet: return "NonNumericAlphabet";
    case ErrorKind::OracleFailure: return "OracleFailure";
    case ErrorKind::Format: return "Format";
    }
    return "Unknown";
}

/**
 * Every recoverable failure in the library is reported through this type.
 * The kind is machine-readable; the message carries the offending ids.
 */
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), detail_(what)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorKind kind_;
    std::string detail_;
};

} // namespace chroma
