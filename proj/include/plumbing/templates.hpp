#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "plumbing/graph.hpp"
#include "plumbing/twig.hpp"

namespace plumbing {

// Family parameters. For families declared with `np` the n field holds n'.
struct FamilyParams {
    std::int64_t t = 0;
    std::int64_t tp = 0;
    std::int64_t n = 0;
    std::int64_t m = 0;
    std::optional<Twig> a;

    bool operator==(const FamilyParams&) const = default;
};

using Env = std::map<std::string, std::int64_t>;

struct Expr {
    enum class Op { Num, Var, Add, Sub, Mul, Neg };
    Op op = Op::Num;
    std::int64_t value = 0;
    std::string var;
    std::vector<Expr> kids;

    std::int64_t eval(const Env& env) const;
};

struct TwigItem {
    enum class Kind { List, U, L, R, A, Rev, Adj, Under, Over };
    Kind kind = Kind::List;
    std::vector<Expr> args;
    std::vector<TwigItem> inner;

    Twig eval(const Env& env, const std::optional<Twig>& a) const;
};

struct PathElement {
    std::optional<std::string> name;
    std::optional<TwigItem> twig;
};

struct Statement {
    enum class Kind { Vertex, Path, Repeat };
    Kind kind = Kind::Vertex;
    int line = 0;
    std::string name;
    Expr expr;
    std::vector<PathElement> path;
    std::vector<Statement> body;
};

struct Requirement {
    std::string var;
    std::int64_t min = 0;
};

struct FamilyTemplate {
    int id = 0;
    std::string group;
    // Declared parameters among t, tp, n, np, m, A.
    std::vector<std::string> params;
    std::vector<Requirement> required;
    std::vector<Requirement> strict_required;
    // Target: "P2" or "F" with the expression giving m.
    std::string target_kind;
    Expr target_m;
    std::vector<Statement> body;
    int line = 0;

    bool uses(std::string_view p) const;
    // Smallest admissible value of a scalar parameter.
    std::int64_t minimum(std::string_view p, bool strict) const;
    // Parameter display like "t=0 n'=2 A=[2]".
    std::string describe(const FamilyParams& p) const;
    // Zero every parameter the family does not declare.
    FamilyParams normalized(const FamilyParams& p) const;
    // Throws BadParams naming the violated constraint.
    void validate(const FamilyParams& p, bool strict) const;
    Env environment(const FamilyParams& p) const;
    // Raw graph; orbit labels are left trivial.
    WeightedDualGraph build(const FamilyParams& p) const;
};

inline constexpr std::string_view kTemplateHeader = "plumbing-templates 1";

// Throws TemplateError with the offending line number.
std::vector<FamilyTemplate> parse_templates(std::string_view text);

// Builtin description of the 52 families.
std::string_view builtin_templates();

} // namespace plumbing
