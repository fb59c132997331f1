#include "cc4/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cc4/errors.hpp"

namespace cc4 {

std::string format_double(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void JsonWriter::pre_value() {
    if (pending_key_) {
        pending_key_ = false;
        return;
    }
    if (!first_in_scope_.empty()) {
        if (!first_in_scope_.back()) out_ += ',';
        first_in_scope_.back() = false;
    }
}

JsonWriter& JsonWriter::begin_object() {
    pre_value();
    out_ += '{';
    first_in_scope_.push_back(true);
    return *this;
}

JsonWriter& JsonWriter::end_object() {
    out_ += '}';
    first_in_scope_.pop_back();
    return *this;
}

JsonWriter& JsonWriter::begin_array() {
    pre_value();
    out_ += '[';
    first_in_scope_.push_back(true);
    return *this;
}

JsonWriter& JsonWriter::end_array() {
    out_ += ']';
    first_in_scope_.pop_back();
    return *this;
}

JsonWriter& JsonWriter::key(const std::string& k) {
    if (!first_in_scope_.empty()) {
        if (!first_in_scope_.back()) out_ += ',';
        first_in_scope_.back() = false;
    }
    out_ += '"';
    out_ += k;  // keys are plain identifiers in all emitted documents
    out_ += "\":";
    pending_key_ = true;
    return *this;
}

JsonWriter& JsonWriter::value(double v) {
    pre_value();
    out_ += format_double(v);
    return *this;
}

JsonWriter& JsonWriter::value(int v) {
    pre_value();
    out_ += std::to_string(v);
    return *this;
}

JsonWriter& JsonWriter::value(bool v) {
    pre_value();
    out_ += v ? "true" : "false";
    return *this;
}

JsonWriter& JsonWriter::value(const std::string& v) {
    pre_value();
    out_ += '"';
    for (char c : v) {
        switch (c) {
            case '"': out_ += "\\\""; break;
            case '\\': out_ += "\\\\"; break;
            case '\n': out_ += "\\n"; break;
            case '\t': out_ += "\\t"; break;
            default: out_ += c;
        }
    }
    out_ += '"';
    return *this;
}

JsonWriter& JsonWriter::null() {
    pre_value();
    out_ += "null";
    return *this;
}

JsonWriter& JsonWriter::raw(const std::string& json) {
    pre_value();
    out_ += json;
    return *this;
}

Configuration config_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("configuration: invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("masses") || !doc.contains("positions"))
        throw ParseError("configuration: expected object with masses and positions");
    const auto& jm = doc["masses"];
    const auto& jp = doc["positions"];
    if (!jm.is_array() || !jp.is_array())
        throw ParseError("configuration: masses and positions must be arrays");
    std::vector<double> masses;
    std::vector<Vec2> positions;
    for (const auto& m : jm) {
        if (!m.is_number()) throw ParseError("configuration: non-numeric mass");
        masses.push_back(m.get<double>());
    }
    for (const auto& p : jp) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
            throw ParseError("configuration: each position must be [x, y]");
        positions.push_back({p[0].get<double>(), p[1].get<double>()});
    }
    try {
        return Configuration(std::move(masses), std::move(positions));
    } catch (const InvalidMassError& e) {
        throw ParseError(e.what());
    }
}

Configuration load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return config_from_json(ss.str());
}

std::string config_to_json(const Configuration& config) {
    JsonWriter w;
    w.begin_object();
    w.key("masses").begin_array();
    for (std::size_t i = 0; i < config.size(); ++i) w.value(config.mass(i));
    w.end_array();
    w.key("positions").begin_array();
    for (std::size_t i = 0; i < config.size(); ++i) {
        w.begin_array().value(config.position(i).x).value(config.position(i).y);
        w.end_array();
    }
    w.end_array();
    w.end_object();
    return w.str();
}

}  // namespace cc4
