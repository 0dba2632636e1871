#include "signaleq/kvfile.hpp"

#include "signaleq/errors.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace sigeq {

namespace {
std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}
} // namespace

KvFile KvFile::parse_text(const std::string& text) {
    KvFile kv;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw parse_error("line " + std::to_string(lineno) +
                                  ": unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (!kv.data_.count(section)) {
                kv.data_[section] = {};
                kv.ordered_.push_back({section, {}});
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw parse_error("line " + std::to_string(lineno) +
                              ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw parse_error("line " + std::to_string(lineno) + ": empty key");
        kv.data_[section][key] = value;
        for (auto& sec : kv.ordered_)
            if (sec.first == section) sec.second.push_back({key, value});
    }
    return kv;
}

KvFile KvFile::parse_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw parse_error("cannot open '" + path + "'");
    std::ostringstream os;
    os << f.rdbuf();
    return parse_text(os.str());
}

bool KvFile::has(const std::string& section, const std::string& key) const {
    const auto it = data_.find(section);
    return it != data_.end() && it->second.count(key) > 0;
}

const std::string& KvFile::get(const std::string& section,
                               const std::string& key) const {
    const auto it = data_.find(section);
    if (it == data_.end() || !it->second.count(key))
        throw parse_error("missing [" + section + "] " + key);
    return it->second.at(key);
}

std::string KvFile::get_or(const std::string& section, const std::string& key,
                           const std::string& fallback) const {
    return has(section, key) ? get(section, key) : fallback;
}

double KvFile::get_double(const std::string& section,
                          const std::string& key) const {
    const std::string& v = get(section, key);
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0')
        throw parse_error("[" + section + "] " + key + ": bad number '" + v +
                          "'");
    return x;
}

double KvFile::get_double_or(const std::string& section, const std::string& key,
                             double fallback) const {
    return has(section, key) ? get_double(section, key) : fallback;
}

long KvFile::get_long_or(const std::string& section, const std::string& key,
                         long fallback) const {
    if (!has(section, key)) return fallback;
    const std::string& v = get(section, key);
    char* end = nullptr;
    const long x = std::strtol(v.c_str(), &end, 10);
    if (end == v.c_str() || *end != '\0')
        throw parse_error("[" + section + "] " + key + ": bad integer '" + v +
                          "'");
    return x;
}

std::vector<std::string> KvFile::list(const std::string& section,
                                      const std::string& key) const {
    std::istringstream in(get(section, key));
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

bool KvFile::has_section(const std::string& section) const {
    return data_.count(section) > 0;
}

} // namespace sigeq
