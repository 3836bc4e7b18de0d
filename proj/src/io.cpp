#include "orbitdesign/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace orbitdesign::io {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Entries are numbers or rational strings "p/q" (also plain numeric strings).
double parse_entry(const json& value, const std::string& origin) {
    if (value.is_number()) {
        return value.get<double>();
    }
    if (value.is_string()) {
        const std::string s = value.get<std::string>();
        const size_t slash = s.find('/');
        try {
            size_t used = 0;
            if (slash == std::string::npos) {
                const double x = std::stod(s, &used);
                if (used != s.size()) throw std::invalid_argument(s);
                return x;
            }
            const std::string num = s.substr(0, slash);
            const std::string den = s.substr(slash + 1);
            const double p = std::stod(num, &used);
            if (used != num.size()) throw std::invalid_argument(num);
            const double q = std::stod(den, &used);
            if (used != den.size()) throw std::invalid_argument(den);
            if (q == 0.0) {
                throw ParseError(origin + ": zero denominator in \"" + s + "\"");
            }
            return p / q;
        } catch (const std::invalid_argument&) {
            throw ParseError(origin + ": cannot parse entry \"" + s + "\"");
        }
    }
    throw ParseError(origin + ": matrix entries must be numbers or \"p/q\" strings");
}

Eigen::VectorXd vector_from_json(const json& arr, const std::string& origin) {
    if (!arr.is_array() || arr.empty()) {
        throw ParseError(origin + ": expected a non-empty JSON array of numbers");
    }
    Eigen::VectorXd v(arr.size());
    for (size_t t = 0; t < arr.size(); ++t) {
        v[static_cast<Eigen::Index>(t)] = parse_entry(arr[t], origin);
    }
    return v;
}

}  // namespace

group::GeneratorSet parse_group_json(const std::string& text, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& err) {
        throw ParseError(origin + ": " + err.what());
    }
    if (!doc.is_object() || !doc.contains("dim") || !doc.contains("generators")) {
        throw ParseError(origin + ": group file needs \"dim\" and \"generators\"");
    }
    group::GeneratorSet gens;
    if (!doc["dim"].is_number_integer() || doc["dim"].get<int>() <= 0) {
        throw ParseError(origin + ": \"dim\" must be a positive integer");
    }
    gens.dim = doc["dim"].get<int>();
    if (doc.contains("tol")) {
        if (!doc["tol"].is_number() || doc["tol"].get<double>() <= 0.0) {
            throw ParseError(origin + ": \"tol\" must be a positive number");
        }
        gens.tol = doc["tol"].get<double>();
    }
    const json& mats = doc["generators"];
    if (!mats.is_array() || mats.empty()) {
        throw ParseError(origin + ": \"generators\" must be a non-empty array");
    }
    for (const json& mat : mats) {
        if (!mat.is_array() || static_cast<int>(mat.size()) != gens.dim) {
            throw ParseError(origin + ": each generator must have dim rows");
        }
        Eigen::MatrixXd m(gens.dim, gens.dim);
        for (int r = 0; r < gens.dim; ++r) {
            const json& row = mat[static_cast<size_t>(r)];
            if (!row.is_array() || static_cast<int>(row.size()) != gens.dim) {
                throw ParseError(origin + ": each generator row must have dim entries");
            }
            for (int c = 0; c < gens.dim; ++c) {
                m(r, c) = parse_entry(row[static_cast<size_t>(c)], origin);
            }
        }
        gens.generators.push_back(std::move(m));
    }
    return gens;
}

group::GeneratorSet load_group_file(const std::string& path) {
    return parse_group_json(read_file(path), path);
}

Eigen::VectorXd parse_vector_inline(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& err) {
        throw ParseError(std::string("vector: ") + err.what());
    }
    return vector_from_json(doc, "vector");
}

Eigen::VectorXd load_vector_file(const std::string& path) {
    json doc;
    try {
        doc = json::parse(read_file(path));
    } catch (const json::parse_error& err) {
        throw ParseError(path + ": " + err.what());
    }
    return vector_from_json(doc, path);
}

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string points_to_csv(const std::vector<Eigen::VectorXd>& points) {
    std::ostringstream out;
    if (points.empty()) return out.str();
    const Eigen::Index n = points.front().size();
    for (Eigen::Index c = 0; c < n; ++c) {
        out << (c ? "," : "") << "x" << (c + 1);
    }
    out << "\n";
    for (const Eigen::VectorXd& p : points) {
        for (Eigen::Index c = 0; c < n; ++c) {
            out << (c ? "," : "") << format_double(p[c]);
        }
        out << "\n";
    }
    return out.str();
}

LogLevel log_level() {
    static const LogLevel level = [] {
        const char* env = std::getenv("ORBIT_DESIGNS_LOG");
        if (env == nullptr) return LogLevel::Warn;
        const std::string s(env);
        if (s == "error") return LogLevel::Error;
        if (s == "warn") return LogLevel::Warn;
        if (s == "info") return LogLevel::Info;
        if (s == "debug") return LogLevel::Debug;
        return LogLevel::Warn;
    }();
    return level;
}

void log(LogLevel level, const std::string& message) {
    if (static_cast<int>(level) > static_cast<int>(log_level())) return;
    static const char* names[] = {"error", "warn", "info", "debug"};
    std::cerr << "[" << names[static_cast<int>(level)] << "] " << message << "\n";
}

}  // namespace orbitdesign::io
