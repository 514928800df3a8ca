#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "plumbing/catalog.hpp"
#include "plumbing/contraction.hpp"
#include "plumbing/graph.hpp"

namespace plumbing {

enum class SingularityType { CyclicChain, DuVal, NonCyclicQuotient, LcNotQuotient, Unknown };
std::string type_name(SingularityType t);

struct SingularityComponent {
    std::vector<std::string> vertices;
    SingularityType type = SingularityType::Unknown;
    // ADE label for Du Val points ("A2", "D4", "E6"), otherwise a short description.
    std::string label;
    Twig twig;
    std::size_t orbit_size = 1;
};

struct SingularityReport {
    std::vector<SingularityComponent> components;
    // Singular points over the algebraic closure and over the base field.
    std::size_t count_closure = 0;
    std::size_t count_base = 0;
    std::size_t boundary_curves = 0;

    bool all_du_val() const;
    // Du Val type such as "A2+2A1"; empty unless every component is Du Val.
    std::string du_val_type() const;
    bool base_count_ok() const { return count_base == 1 || count_base == 2; }
    bool closure_count_ok() const { return count_closure == 1 || count_closure == boundary_curves + 1; }
};

// Treats the (-1)-vertices as boundary curves; each remaining connected
// component is one singular point. Throws BoundaryModelViolated.
SingularityReport analyze_singularities(const WeightedDualGraph& g);

// 10 minus the vertex count; throws NotDuVal.
std::int64_t du_val_degree(const WeightedDualGraph& g);

enum class DuValVerdict { Contains, NotContains, NeedsSmoothRationalPoint };
std::string verdict_name(DuValVerdict v);

// Accepts "A2+2A1", "A2,A1,A1" and mixtures; throws BadType naming the token.
std::vector<std::string> parse_du_val_types(const std::string& text);
std::string format_du_val_types(std::vector<std::string> labels);

// Throws BadDegree, BadType, or ImpossiblePair for pairs that cannot occur when d >= 5.
DuValVerdict contains_affine_plane_duval(std::int64_t d, const std::vector<std::string>& types);
bool fibration_criterion(std::int64_t d, const std::vector<std::string>& types, bool has_smooth_rational_point);

struct DuValRow {
    std::int64_t degree;
    std::string type;
    DuValVerdict verdict;
};
// Every (degree, type) pair the table knows, in display order.
std::vector<DuValRow> du_val_table();

struct BoundaryVerdict {
    enum class Kind { ContainsA2, NotMatched, Rejected };
    Kind kind = Kind::Rejected;
    std::string reason;
    std::vector<std::string> evidence;
    std::optional<MatchCandidate> match;
    std::vector<MatchCandidate> all_matches;
    std::optional<MncShape> reached;
    std::optional<MncShape> target;
    std::vector<ContractionStep> steps;
    std::optional<SingularityReport> singularities;
};
std::string kind_name(BoundaryVerdict::Kind k);

BoundaryVerdict classify_boundary(const WeightedDualGraph& g, const Catalog& cat = Catalog::builtin());

struct AuditEntry {
    enum class Status { Pass, NotApplicable, Fail };
    std::string check;
    Status status = Status::NotApplicable;
    std::string detail;
};
std::string status_name(AuditEntry::Status s);

struct AuditReport {
    std::vector<AuditEntry> entries;
    bool pass() const;
    std::size_t count(AuditEntry::Status s) const;
};

// Every check gates itself on its own hypotheses and reports not-applicable otherwise.
AuditReport structural_lemma_audit(const WeightedDualGraph& g);

} // namespace plumbing
