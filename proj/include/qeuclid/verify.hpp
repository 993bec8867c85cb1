#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qeuclid/geom.hpp"

namespace qeuclid {

struct Failure {
    std::string id;
    std::string residual;  // lhs - rhs
};

struct SuiteReport {
    std::string name;
    int checks = 0;
    std::vector<Failure> failures;
    std::vector<std::pair<std::string, std::string>> notes;
    double seconds = 0;

    bool passed() const { return failures.empty(); }
};

struct Report {
    std::vector<SuiteReport> suites;  // sorted by name

    bool passed() const;
    const SuiteReport* find(const std::string& name) const;
};

struct VerifyOptions {
    std::optional<SChoice> sigma;       // both when unset
    std::optional<Calculus> calculus;   // all three when unset
    std::optional<Scalar> alpha;        // symbolic when unset
    bool radius_reduction = true;
    std::size_t random_triples = 10000;
    int max_word_length = 6;
    std::uint64_t seed = 20240917;
};

// The suites run by a plain `verify`, in report order.
const std::vector<std::string>& default_suites();
// Also accepted by name: mixed, the flip condition on the mixed blocks of the enlarged calculus.
bool is_suite(const std::string& name);

// Runs the named suites concurrently (all default suites if names is empty);
// throws std::invalid_argument for an unknown name.
Report run_suites(const std::vector<std::string>& names, const VerifyOptions& opts = {});

class Verifier {
public:
    explicit Verifier(const VerifyOptions& opts);

    const Algebra& algebra() const { return alg_; }
    const Geometry& geometry() const { return geo_; }
    const VerifyOptions& options() const { return opts_; }
    std::vector<Connection> configurations() const;

    SuiteReport run(const std::string& name) const;

private:
    VerifyOptions opts_;
    Algebra alg_;
    Geometry geo_;
};

}  // namespace qeuclid
