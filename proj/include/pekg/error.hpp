// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The pekg Authors

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pekg {

// Base class for every error raised by the library. The CLI maps these to
// exit code 2 (data error).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoFailure : public Error {
public:
    explicit IoFailure(const std::string& path)
        : Error("cannot access file: " + path), path_(path) {}
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

class MalformedLine : public Error {
public:
    MalformedLine(std::size_t line_no, const std::string& why)
        : Error("line " + std::to_string(line_no) + ": " + why), line_no_(line_no) {}
    std::size_t line_no() const noexcept { return line_no_; }

private:
    std::size_t line_no_;
};

class DuplicateSurface : public Error {
public:
    explicit DuplicateSurface(const std::string& surface)
        : Error("duplicate dictionary surface: " + surface), surface_(surface) {}
    const std::string& surface() const noexcept { return surface_; }

private:
    std::string surface_;
};

class DanglingReference : public Error {
public:
    explicit DanglingReference(const std::string& label)
        : Error("reference to undeclared label: " + label), label_(label) {}
    const std::string& label() const noexcept { return label_; }

private:
    std::string label_;
};

class CategoryConflict : public Error {
public:
    CategoryConflict(const std::string& label, const std::string& a, const std::string& b)
        : Error("category conflict for '" + label + "': " + a + " vs " + b), label_(label) {}
    const std::string& label() const noexcept { return label_; }

private:
    std::string label_;
};

class InvalidParams : public Error {
public:
    using Error::Error;
};

class SpanOutOfBounds : public Error {
public:
    using Error::Error;
};

class EmptyCorpus : public Error {
public:
    EmptyCorpus() : Error("tagged corpus is empty") {}
};

class InvalidLabel : public Error {
public:
    using Error::Error;
};

class UnknownEntity : public Error {
public:
    explicit UnknownEntity(std::size_t id)
        : Error("unknown entity id " + std::to_string(id)) {}
};

class TargetNotRevealed : public Error {
public:
    explicit TargetNotRevealed(std::size_t id)
        : Error("drill target " + std::to_string(id) + " has not been revealed") {}
};

class NonTerminatingRuleSet : public Error {
public:
    using Error::Error;
};

}  // namespace pekg
