#pragma once

#include <map>
#include <string>
#include <vector>

namespace sigeq {

// Plain-text config format: [section] headers, key = value lines, '#'
// comments. Values keep interior whitespace so lists like "1 2 3" parse as
// one field.
class KvFile {
public:
    static KvFile parse_text(const std::string& text);
    static KvFile parse_file(const std::string& path);

    bool has(const std::string& section, const std::string& key) const;
    // throws parse_error when missing
    const std::string& get(const std::string& section,
                           const std::string& key) const;
    std::string get_or(const std::string& section, const std::string& key,
                       const std::string& fallback) const;
    double get_double(const std::string& section, const std::string& key) const;
    double get_double_or(const std::string& section, const std::string& key,
                         double fallback) const;
    long get_long_or(const std::string& section, const std::string& key,
                     long fallback) const;

    std::vector<std::string> list(const std::string& section,
                                  const std::string& key) const;

    bool has_section(const std::string& section) const;
    // sections in file order, with keys in file order (for faithful echo)
    const std::vector<std::pair<std::string,
                                std::vector<std::pair<std::string, std::string>>>>&
    ordered() const {
        return ordered_;
    }

private:
    std::map<std::string, std::map<std::string, std::string>> data_;
    std::vector<std::pair<std::string,
                          std::vector<std::pair<std::string, std::string>>>>
        ordered_;
};

} // namespace sigeq
