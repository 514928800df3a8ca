#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "plumbing/contraction.hpp"
#include "plumbing/graph.hpp"
#include "plumbing/templates.hpp"

namespace plumbing {

struct FamilyInstance {
    int id = 0;
    FamilyParams params;
    WeightedDualGraph graph;
};

struct Bounds {
    std::int64_t max_t = 1;
    std::int64_t max_tp = 1;
    std::int64_t max_m = 3;
    // n (or n') ranges over minimum .. minimum + n_extra.
    std::int64_t n_extra = 1;
    std::vector<Twig> pool;
    bool strict = false;
};

struct MatchCandidate {
    int id = 0;
    FamilyParams params;
};

struct MatchResult {
    std::optional<MatchCandidate> best;
    // Every (family, parameters) pair whose instance is isomorphic to the input.
    std::vector<MatchCandidate> all;
    // Why nothing matched, when best is empty.
    std::string reason;
};

struct InstanceCheck {
    FamilyInstance instance;
    MncShape reached;
    // Empty when every check passed.
    std::string failure;
};

struct FamilyVerdict {
    int id = 0;
    std::size_t instances = 0;
    std::size_t failed = 0;
    std::string first_failure;
    bool pass() const { return instances > 0 && failed == 0; }
};

class Catalog {
public:
    explicit Catalog(std::vector<FamilyTemplate> families);
    static const Catalog& builtin();
    static Catalog from_text(std::string_view text);
    static Catalog from_file(const std::string& path);

    const std::vector<FamilyTemplate>& families() const { return families_; }
    const FamilyTemplate& family(int id) const;
    bool has(int id) const;

    // Graph with the canonical orbit partition. Throws BadParams.
    FamilyInstance instantiate(int id, const FamilyParams& p, bool strict = false) const;
    MncShape mnc_target(int id, const FamilyParams& p) const;
    std::vector<FamilyInstance> enumerate(int id, const Bounds& b) const;
    MatchResult match(const WeightedDualGraph& g) const;

private:
    std::vector<FamilyTemplate> families_;
};

// Forest, orbit audit, one bullet block, negative definite exceptional part,
// normalization to the target shape, and the final mnc shape audit.
InstanceCheck check_instance(const Catalog& cat, const FamilyInstance& inst);

std::vector<FamilyVerdict> verify(const Catalog& cat, const Bounds& b, Exec exec = Exec::Serial);

// Twig pool: PLUMBING_TWIG_POOL names a file of twigs (one per line) when set,
// otherwise all admissible twigs with det <= max_det.
std::vector<Twig> twig_pool(std::int64_t max_det);
std::vector<Twig> read_twig_pool(const std::string& path);

struct Situation {
    enum class Kind { S1, S2, S3, S4 };
    Kind kind = Kind::S4;
    std::int64_t n1 = 0;
    std::int64_t n2 = 0;
    // Second listing of the same family, e.g. "S3(n1=2,n2=2)"; empty if none.
    std::string also;
    std::string str() const;
};

// Field-of-definition data for the builtin families. Throws BadParams.
Situation field_condition(int id, const FamilyParams& p);

} // namespace plumbing
