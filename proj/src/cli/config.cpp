#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "autocorr/cli.hpp"

namespace autocorr::cli {

namespace {

using nlohmann::json;

int line_of_offset(const std::string& text, std::size_t offset) {
    offset = std::min(offset, text.size());
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

// Line of the first occurrence of "key": in the raw text.
int line_of_key(const std::string& text, const std::string& key) {
    const std::string quoted = '"' + key + '"';
    for (std::size_t pos = text.find(quoted); pos != std::string::npos; pos = text.find(quoted, pos + 1)) {
        std::size_t q = pos + quoted.size();
        while (q < text.size() && std::isspace(static_cast<unsigned char>(text[q]))) ++q;
        if (q < text.size() && text[q] == ':') return line_of_offset(text, pos);
    }
    return 0;
}

struct Reader {
    const std::string& path;
    const std::string& text;

    [[noreturn]] void fail(const std::string& key, const std::string& what) const {
        const int line = line_of_key(text, key);
        std::ostringstream os;
        os << path << ':' << line << ": key '" << key << "': " << what;
        throw ConfigError(os.str(), key, line);
    }

    double number(const std::string& key, const json& v) const {
        if (!v.is_number()) fail(key, "expected a number");
        return v.get<double>();
    }

    std::uint64_t count(const std::string& key, const json& v) const {
        if (!v.is_number_unsigned()) fail(key, "expected a non-negative integer");
        return v.get<std::uint64_t>();
    }

    std::string string(const std::string& key, const json& v) const {
        if (!v.is_string()) fail(key, "expected a string");
        return v.get<std::string>();
    }
};

}  // namespace

RunConfig load_config(const std::string& path, RunConfig base) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path + ":0: cannot open config file", "", 0);
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();

    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        const int line = line_of_offset(text, e.byte == 0 ? 0 : e.byte - 1);
        throw ConfigError(path + ':' + std::to_string(line) + ": malformed JSON: " + e.what(), "", line);
    }
    if (!doc.is_object()) throw ConfigError(path + ":1: config must be a JSON object", "", 1);

    const Reader r{path, text};
    RunConfig c = std::move(base);
    for (const auto& [key, v] : doc.items()) {
        if (key == "command") c.command = r.string(key, v);
        else if (key == "weight") c.weight = r.string(key, v);
        else if (key == "a") c.a = r.number(key, v);
        else if (key == "p_min") c.p_min = r.number(key, v);
        else if (key == "p_max") c.p_max = r.number(key, v);
        else if (key == "family") c.family = r.string(key, v);
        else if (key == "functional") c.functional = r.string(key, v);
        else if (key == "cells") c.cells = r.count(key, v);
        else if (key == "support") {
            if (v.is_number()) {
                std::ostringstream os;
                os.precision(17);
                os << v.get<double>();
                c.support = os.str();
            } else {
                c.support = r.string(key, v);
            }
        }
        else if (key == "b") c.b = r.number(key, v);
        else if (key == "half_width") c.half_width = r.number(key, v);
        else if (key == "values") {
            if (!v.is_array()) r.fail(key, "expected an array of numbers");
            c.values.clear();
            for (const auto& x : v) c.values.push_back(r.number(key, x));
        }
        else if (key == "bump") c.bump = r.string(key, v);
        else if (key == "scale") c.scale = r.number(key, v);
        else if (key == "budget") c.budget = r.count(key, v);
        else if (key == "seed") c.seed = r.count(key, v);
        else if (key == "tol") c.tol = r.number(key, v);
        else if (key == "criteria") {
            if (!v.is_array()) r.fail(key, "expected an array of criterion numbers");
            c.criteria.clear();
            for (const auto& x : v) c.criteria.push_back(static_cast<int>(r.count(key, x)));
        }
        else if (key == "out") c.out = r.string(key, v);
        else if (key == "json") c.json = r.string(key, v);
        else r.fail(key, "unknown key");
    }
    return c;
}

RunConfig resolve(RunConfig c) {
    if (c.command == "evaluate") {
        if (c.family.empty()) c.family = "gaussian";
        if (c.functional.empty()) c.functional = "mean";
    } else if (c.command == "search") {
        if (c.family.empty()) c.family = "piecewise";
        if (c.functional.empty()) c.functional = "min01";
        if (!c.budget) c.budget = c.family == "piecewise" ? 20000 : 500;
        if (c.support.empty() && c.family == "piecewise")
            c.support = c.functional == "min01" ? "free" : "0.5";
    }
    return c;
}

void write_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw ConfigError("cannot write " + tmp.string(), "out", 0);
        os << content;
        os.flush();
        if (!os) throw ConfigError("write failed for " + tmp.string(), "out", 0);
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw ConfigError("cannot rename " + tmp.string() + " to " + path + ": " + ec.message(), "out", 0);
    }
}

}  // namespace autocorr::cli
