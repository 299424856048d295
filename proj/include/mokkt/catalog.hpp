#pragma once

#include <string>
#include <vector>

#include "mokkt/pareto.hpp"
#include "mokkt/problem.hpp"

namespace mokkt {

// A statement about a catalog problem that the test suite re-derives with the
// corresponding operation. `source` records how the statement was obtained:
// "worked-example" (reproduced from the literature example this library
// ships), "analytic" (hand derivation), or "grid" (grid-oracle confirmation).
struct KnownFact {
    std::string kind;
    std::string statement;
    std::string source;
};

// Candidate point with its expected oracle classification and certification
// outcomes at default tolerances.
struct CatalogPoint {
    std::vector<double> x;
    ParetoClass expected_class;
    bool expect_fj_certified;
    bool expect_kt_certified;
};

struct CatalogEntry {
    std::string id;
    Problem problem;
    std::vector<KnownFact> facts;
    std::vector<CatalogPoint> points;
};

const std::vector<std::string>& catalog_ids();

// Unknown ids throw FormatError.
CatalogEntry load_catalog_entry(const std::string& id);

} // namespace mokkt
