#pragma once

// Structured results for the verification suites.  Arithmetic is exact
// everywhere, so a case is pass/fail with no tolerances; hashes identify the
// compared values without dumping them unless the case failed.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace jetweil {

inline std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    static const char* digits = "0123456789abcdef";
    for (int j = 15; j >= 0; --j) {
        buf[15 - j] = digits[(h >> (4 * j)) & 0xF];
    }
    buf[16] = '\0';
    return std::string(buf);
}

struct CheckCase {
    std::string name;
    std::string status;  // "pass" | "fail" | "error"
    std::optional<int> sign;
    std::string note;
    std::string lhs_hash, rhs_hash;
    std::string witness;  // serialized values, only on failure

    static CheckCase pass(std::string name, const std::string& lhs, const std::string& rhs,
                          std::optional<int> sign = std::nullopt, std::string note = {}) {
        return {std::move(name), "pass", sign, std::move(note), fnv1a_hex(lhs), fnv1a_hex(rhs), {}};
    }
    static CheckCase fail(std::string name, const std::string& lhs, const std::string& rhs, std::string note = {}) {
        return {std::move(name), "fail", std::nullopt, std::move(note), fnv1a_hex(lhs), fnv1a_hex(rhs),
                "lhs: " + lhs + "\nrhs: " + rhs};
    }
    static CheckCase error(std::string name, std::string note) {
        return {std::move(name), "error", std::nullopt, std::move(note), "", "", {}};
    }
    static CheckCase info(std::string name, std::string note) {
        return {std::move(name), "pass", std::nullopt, std::move(note), "", "", {}};
    }

    bool ok() const { return status == "pass"; }
};

struct Report {
    std::string suite;
    std::vector<CheckCase> cases;

    void add(CheckCase c) { cases.push_back(std::move(c)); }
    bool all_pass() const {
        for (const auto& c : cases)
            if (!c.ok()) return false;
        return true;
    }
};

}  // namespace jetweil
