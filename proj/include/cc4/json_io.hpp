#pragma once

#include <string>
#include <vector>

#include "cc4/configuration.hpp"

namespace cc4 {

/// Doubles formatted with 17 significant digits ("%.17g"): round-trip exact
/// and byte-stable across runs. Non-finite values map to "null".
std::string format_double(double v);

/// Minimal streaming JSON emitter with insertion-ordered keys and
/// format_double numbers, so identical inputs give byte-identical documents.
class JsonWriter {
public:
    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array();
    JsonWriter& end_array();
    JsonWriter& key(const std::string& k);
    JsonWriter& value(double v);
    JsonWriter& value(int v);
    JsonWriter& value(bool v);
    JsonWriter& value(const std::string& v);
    JsonWriter& null();
    /// Emits an already-serialized JSON fragment as the next value.
    JsonWriter& raw(const std::string& json);
    const std::string& str() const { return out_; }

private:
    void pre_value();
    std::string out_;
    std::vector<bool> first_in_scope_;
    bool pending_key_ = false;
};

/// Schema: {"masses": [m1, ...], "positions": [[x, y], ...]}.
Configuration config_from_json(const std::string& text);
Configuration load_config(const std::string& path);
std::string config_to_json(const Configuration& config);

}  // namespace cc4
