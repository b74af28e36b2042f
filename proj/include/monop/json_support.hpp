#pragma once

// Complex numbers in JSON are written as [re, im]; a bare number is read as a
// real value.

#include "monop/errors.hpp"
#include "monop/scalar.hpp"

#include <json.hpp>

namespace monop {

using Json = nlohmann::json;

inline Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const Json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw DomainError("expected a complex number [re, im], got " + j.dump());
}

inline const Json& require_field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw DomainError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

}  // namespace monop
