#pragma once

#include <string>
#include <vector>

namespace gradecat {

// Catalog references exercised by the verification suites (|T| <= 32).
inline const std::vector<std::string>& fixture_catalog_refs() {
    static const std::vector<std::string> refs{
        "1-a:1",     "1-a:Z2^2",    "1-a:Z2^4",  "1-b:Z2^2",  "1-b:Z2^4",  "1-c:Z2",        "1-c:Z2^3",
        "1-d:Z2xZ4", "1-d:Z2^3xZ4", "2-a:Z2",    "2-a:Z2^3",  "2-b:Z2",    "2-b:Z2^3",      "2-c:Z2^2",
        "2-d:Z2^2xZ4", "2-e:Z4",    "2-e:Z2^2xZ4", "2-f:1",   "2-f:Z2^2",  "2-f:Z3^2",      "2-f:Z4^2",
        "2-f:Z2^4",  "3-a:1",       "3-a:Z2^2",  "3-b:Z2^2",  "3-c:Z2",    "3-c:Z2^3",      "3-d:Z2xZ4"};
    return refs;
}

}  // namespace gradecat
