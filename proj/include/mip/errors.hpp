#pragma once

#include <stdexcept>
#include <string>

namespace mip {

class field_error : public std::runtime_error {
public:
    explicit field_error(const std::string& w) : std::runtime_error(w) {}
};

class spec_error : public std::runtime_error {
public:
    explicit spec_error(const std::string& w) : std::runtime_error(w) {}
};

class bound_error : public std::runtime_error {
public:
    explicit bound_error(const std::string& w) : std::runtime_error(w) {}
};

class algebra_error : public std::runtime_error {
public:
    explicit algebra_error(const std::string& w) : std::runtime_error(w) {}
};

class quadform_error : public std::runtime_error {
public:
    explicit quadform_error(const std::string& w) : std::runtime_error(w) {}
};

} // namespace mip
