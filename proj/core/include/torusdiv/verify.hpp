#pragma once

#include <torusdiv/rule.hpp>

#include <map>
#include <string>
#include <vector>

namespace torusdiv::verify {

enum class Status { pass, fail, skip };

struct CheckReport {
    std::string name;
    std::map<std::string, long long> params;  // n, k, p as applicable
    Status status = Status::fail;
    std::string witness;  // populated exactly when status == fail
    double seconds = 0.0;
    std::vector<int> mapping;  // isomorphism checks: engine cell -> oracle cell

    bool passed() const { return status == Status::pass; }
};

// Certifies one subdivision template: child counts and types, exact volume
// additivity to 1/(p-1)!, vertexwise containment in the parent, whole-facet
// coverage of the fiber-cube facets with agreement across opposite facets,
// deferred apex-facet coverage, the wall lemma (each refined parent facet
// carries exactly the standalone subdivision of the wall tile), and internal
// facet closure among the children.
CheckReport check_template(int n, int p);

// Same certification applied to an arbitrary template value; used by
// mutation tests to prove the checks can fail.
CheckReport check_template_data(const rule::Template& tpl);

// Engine counts after k subdivision steps == oracle tiling counts ==
// transition-matrix power applied to the initial counts.
CheckReport check_counts(int n, int k);

// Labeled tile-adjacency isomorphism between the k-fold subdivided initial
// sphere and the refined lattice sphere.  Budget exhaustion reports skip,
// never pass.
CheckReport check_isomorphism(int n, int k, double budget_seconds = 60.0);

// Euler characteristic 1 + (-1)^(n-1) for both constructions, plus the
// closed-complex property (every codimension-1 face in exactly 2 tiles).
CheckReport check_euler(int n, int k);

struct SuiteOptions {
    bool templates = true;
    bool counts = true;
    bool euler = true;
    bool iso = true;
    double budget_seconds = 60.0;
};

// All selected checks over the grid n <= max_n, k <= max_k, in deterministic
// order.  Aggregate success means no failures; skips are allowed.
std::vector<CheckReport> run_suite(int max_n, int max_k, const SuiteOptions& options = {});

bool all_passed(const std::vector<CheckReport>& reports);

std::string format_report(const CheckReport& r);

}  // namespace torusdiv::verify
