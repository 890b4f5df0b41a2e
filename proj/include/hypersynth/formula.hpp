#pragma once

#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace hypersynth {

enum class Op { True, Atom, Not, Or, And, Implies, Iff, Next, Until, Release, Eventually, Globally };

struct Node;
using Body = std::shared_ptr<const Node>;

struct Node {
    Op op = Op::True;
    std::string prop;  // Atom only
    std::string var;   // Atom only
    Body lhs, rhs;     // unary operators use lhs
};

Body tt();
Body ff();
Body atom(std::string prop, std::string var);
Body lnot(Body a);
Body lor(Body a, Body b);
Body land(Body a, Body b);
Body implies(Body a, Body b);
Body iff(Body a, Body b);
Body next(Body a);
Body until(Body a, Body b);
Body release(Body a, Body b);
Body eventually(Body a);
Body globally(Body a);

// Left-folded conjunction/disjunction; empty lists give true/false.
Body conj(const std::vector<Body>& parts);
Body disj(const std::vector<Body>& parts);

enum class Quant { Forall, Exists };

struct Formula {
    std::vector<std::pair<Quant, std::string>> prefix;
    Body body;
};

bool equal(const Body& a, const Body& b);
bool equal(const Formula& a, const Formula& b);

// Rewrites to True, Atom, Not, Or, Until, Next.
Body desugar(const Body& b);
// Negation normal form of !b; And, Or, Release appear, Not only above atoms and true.
Body negate_nnf(const Body& b);

std::string print(const Body& b);
std::string print(const Formula& f);

std::set<std::string> free_vars(const Body& b);
std::set<std::string> props(const Body& b);
std::size_t node_count(const Body& b);

// Throws DuplicateQuantifier / UnboundVariable.
void check_closed(const Formula& f);

struct Fragment {
    enum Kind { EStar, AStar, EStarA, AEStar, EA, AE };
    Kind kind = EStar;
    std::size_t alternations = 0;
    std::string name() const;
};

std::size_t alternation_count(const Formula& f);
Fragment classify_fragment(const Formula& f);

// Prenex conjunction: prefixes concatenated, variables of b renamed apart when needed.
Formula conjoin(const Formula& a, const Formula& b);

}  // namespace hypersynth
