#pragma once

// Minimal JSON-schema checker covering the subset the shipped schemas use:
// type (incl. lists), required, properties, additionalProperties, enum, items.
#include <json.hpp>

#include <fstream>
#include <string>

namespace schemacheck {

using nlohmann::json;

inline bool type_matches(const json& value, const std::string& t) {
    if (t == "object") return value.is_object();
    if (t == "array") return value.is_array();
    if (t == "string") return value.is_string();
    if (t == "integer") return value.is_number_integer() || value.is_number_unsigned();
    if (t == "number") return value.is_number();
    if (t == "boolean") return value.is_boolean();
    if (t == "null") return value.is_null();
    return false;
}

inline bool validate(const json& value, const json& schema, std::string& err) {
    if (schema.contains("type")) {
        const auto& t = schema["type"];
        bool ok = false;
        if (t.is_string()) {
            ok = type_matches(value, t.get<std::string>());
        } else {
            for (const auto& alt : t)
                if (type_matches(value, alt.get<std::string>())) ok = true;
        }
        if (!ok) {
            err = "type mismatch at " + value.dump().substr(0, 60);
            return false;
        }
    }
    if (schema.contains("enum")) {
        bool ok = false;
        for (const auto& alt : schema["enum"])
            if (alt == value) ok = true;
        if (!ok) {
            err = "enum mismatch: " + value.dump();
            return false;
        }
    }
    if (value.is_object()) {
        if (schema.contains("required")) {
            for (const auto& key : schema["required"])
                if (!value.contains(key.get<std::string>())) {
                    err = "missing required key " + key.get<std::string>();
                    return false;
                }
        }
        const json props = schema.value("properties", json::object());
        for (const auto& [key, sub] : value.items()) {
            auto it = props.find(key);
            if (it != props.end()) {
                if (!validate(sub, *it, err)) return false;
            } else if (schema.value("additionalProperties", json(true)) == json(false)) {
                err = "unexpected key " + key;
                return false;
            }
        }
    }
    if (value.is_array() && schema.contains("items")) {
        for (const auto& sub : value)
            if (!validate(sub, schema["items"], err)) return false;
    }
    return true;
}

inline json load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open schema " + path);
    json j;
    in >> j;
    return j;
}

}  // namespace schemacheck
