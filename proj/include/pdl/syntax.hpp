#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pdl/errors.hpp"

namespace pdl {

// Formulas of propositional dependence logic with atomic negation:
//   T | F | x | !x | dep(P;Q) | !dep(P;Q) | f & f | f | f
// Trees are immutable; every node reached by a fresh traversal step counts as
// its own occurrence, so structurally identical subtrees evaluate
// independently (dep(x;y) | dep(x;y) is not dep(x;y)).

enum class Kind : uint8_t { Top, Bot, Var, NegVar, Dep, NegDep, And, Or };

class FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

class FormulaNode {
public:
    Kind kind;
    std::string name;                    // Var, NegVar
    std::vector<std::string> premise;    // Dep, NegDep (may be empty: constancy atom)
    std::vector<std::string> conclusion; // Dep, NegDep (never empty)
    Formula left, right;                 // And, Or

    bool is_leaf() const { return kind != Kind::And && kind != Kind::Or; }
};

Formula top();
Formula bot();
Formula var(const std::string& name);
Formula negvar(const std::string& name);
Formula dep(std::vector<std::string> premise, std::vector<std::string> conclusion);
Formula negdep(std::vector<std::string> premise, std::vector<std::string> conclusion);
Formula conj(Formula l, Formula r);
Formula disj(Formula l, Formula r);

bool structurally_equal(const Formula& a, const Formula& b);

/// Grammar (whitespace insignificant, `|` lowest precedence, `&` tighter):
///   formula := disj ; disj := conj ("|" conj)* ; conj := unit ("&" unit)* ;
///   unit := "T" | "F" | ident | "!" ident | depatom | "!" depatom | "(" formula ")" ;
///   depatom := "dep(" identlist? ";" identlist ")" ; identlist := ident ("," ident)*
/// Chains fold left-associatively into binary nodes.
Formula parse(const std::string& text);

/// Inverse of parse up to structural identity: parse(render(f)) == f.
std::string render(const Formula& f);

bool is_identifier(const std::string& s);

// Sizes count the occurrence tree in which a dep atom's premise/conclusion
// variables are child occurrences of the atom (so every variable occurrence
// is counted and #variables <= formula_size); negation stays atomic.
struct ParameterReport {
    long long formula_size = 0;  // occurrence count, dep-atom variables included
    long long formula_depth = 0; // longest root-leaf edge count, leaf-only formula = 0
    long long splits = 0;        // number of Or nodes
    long long arity = 0;         // max dep premise length, 0 if none or all empty
    long long variable_count = 0;
    std::optional<long long> team_size;
};

class Team;
ParameterReport parameters(const Formula& f);
ParameterReport parameters(const Formula& f, const Team& t);

/// Variable names occurring in f, sorted and deduplicated.
std::vector<std::string> variables_of(const Formula& f);

/// All subformula occurrences in pre-order, the variables inside dep atoms
/// included as occurrences of their own (they are vertices of the formula's
/// graph representation). Length equals formula_size.
std::vector<Formula> subformulas(const Formula& f);

// Flattened pre-order view of the evaluation tree: binary junctions with
// whole atoms as leaves. This is the occurrence indexing the evaluators and
// label tables use. Aliased subtrees (the same node object reachable twice)
// still yield distinct occurrences.
struct OccurrenceList {
    std::vector<const FormulaNode*> node;
    std::vector<int> left;   // occurrence id of left child, -1 for leaves
    std::vector<int> right;
    std::vector<int> parent; // -1 for root
    int size() const { return static_cast<int>(node.size()); }
};
OccurrenceList flatten(const Formula& f);

// Hash-consed syntax circuit, the graph representation used for treewidth.
// Variables are shared vertices: a dep atom links to the vertices of its
// premise/conclusion variables, !x becomes a negation vertex over the shared
// vertex of x, and structurally identical subtrees collapse to one vertex.
struct Circuit {
    enum class NodeKind : uint8_t { Top, Bot, Var, Not, Dep, And, Or };
    struct Node {
        NodeKind kind;
        std::string label;
        std::vector<int> children; // kept with multiplicity; edges deduplicate
        int premise_count = 0;     // Dep only: children split premise/conclusion
    };
    std::vector<Node> nodes;
    int root = -1;
    int size() const { return static_cast<int>(nodes.size()); }
};
Circuit hash_cons(const Formula& f);

/// Node count of the occurrence tree the circuit is condensed from (variables
/// under atoms and the Var below a !x expanded out). hash_cons(f).size() is
/// bounded by this, with equality iff no two expanded subtrees coincide.
long long circuit_occurrence_count(const Formula& f);

} // namespace pdl
