#ifndef MLN_AST_HPP
#define MLN_AST_HPP

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mln/error.hpp"

namespace mln {

using Symbol = std::string;

struct DomainDecl {
  Symbol name;
  std::vector<Symbol> constants;  // declaration order is the collation order
};

enum class PredKind { evidence, query, derived };

struct PredicateDecl {
  Symbol name;
  std::vector<Symbol> arg_domains;
  PredKind kind = PredKind::query;
  // Optional explicit grounding restriction: when set, the predicate is
  // grounded only over these argument tuples and atoms outside the set
  // evaluate as false. Never produced by the parser; print_program lowers it
  // to ground exclusion rules.
  std::optional<std::vector<std::vector<Symbol>>> ground_tuples;
};

struct Term {
  enum class Kind { constant, variable };
  Kind kind;
  Symbol text;

  static Term constant(Symbol s) { return {Kind::constant, std::move(s)}; }
  static Term variable(Symbol s) { return {Kind::variable, std::move(s)}; }
  bool is_constant() const { return kind == Kind::constant; }
  bool operator==(const Term&) const = default;
};

// Immutable formula tree; copies share nodes. Free variables are implicitly
// universally quantified at the outermost level.
class Formula {
 public:
  enum class Op {
    atom,
    not_op,
    and_op,
    or_op,
    implies,
    iff,
    term_eq,
    term_neq,
    constant,  // truth literal produced by simplification
  };

  static Formula atom(Symbol predicate, std::vector<Term> terms);
  static Formula negation(Formula f);
  static Formula conjunction(Formula a, Formula b);
  static Formula disjunction(Formula a, Formula b);
  static Formula implication(Formula a, Formula b);
  static Formula biconditional(Formula a, Formula b);
  static Formula term_equal(Term a, Term b);
  static Formula term_not_equal(Term a, Term b);
  static Formula truth(bool value);

  Op op() const { return node_->op; }
  bool is_atom() const { return node_->op == Op::atom; }
  bool is_constant() const { return node_->op == Op::constant; }
  bool constant_value() const { return node_->truth; }

  const Symbol& predicate() const { return node_->predicate; }
  const std::vector<Term>& terms() const { return node_->terms; }
  const Formula& lhs() const { return node_->children[0]; }
  const Formula& rhs() const { return node_->children[1]; }
  const Term& term_lhs() const { return node_->terms[0]; }
  const Term& term_rhs() const { return node_->terms[1]; }

  bool structurally_equal(const Formula& other) const;

 private:
  struct Node {
    Op op;
    bool truth = false;
    Symbol predicate;          // atom
    std::vector<Term> terms;   // atom args, or the two terms of (in)equality
    std::vector<Formula> children;
  };
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct Weight {
  bool hard = false;
  double value = 0.0;  // meaningful iff !hard; may be negative

  static Weight finite(double w) { return {false, w}; }
  static Weight infinite() { return {true, 0.0}; }
};

struct WeightedFormula {
  Formula formula;
  Weight weight;
};

struct MlnProgram {
  std::vector<DomainDecl> domains;
  std::vector<PredicateDecl> predicates;
  std::vector<WeightedFormula> formulas;
};

// Index structures computed by validation. Constants are globally unique
// across domains, so a constant resolves to exactly one (domain, position).
struct ProgramIndex {
  std::map<Symbol, int> domain_by_name;
  std::map<Symbol, int> predicate_by_name;
  std::map<Symbol, std::pair<int, int>> constant_home;  // -> (domain, position)
  // per formula: free variables in first-occurrence order with their domains
  std::vector<std::vector<std::pair<Symbol, int>>> formula_vars;
};

struct ValidatedProgram {
  MlnProgram program;
  ProgramIndex index;

  const DomainDecl& domain(int i) const { return program.domains[i]; }
  const PredicateDecl& predicate(int i) const { return program.predicates[i]; }
};

// Checks all program invariants and resolves names. Throws mln::Error with
// UndeclaredDomain / UndeclaredPredicate / ArityMismatch / DomainMismatch /
// DuplicateName. Idempotent: validating the program of a ValidatedProgram
// reproduces it.
ValidatedProgram validate_program(MlnProgram program);

std::set<Symbol> free_variables(const Formula& formula);

// Evaluates a variable-free formula; `atom_value(pred, args)` supplies ground
// atom truth.
template <typename AtomFn>
bool eval_ground_formula(const Formula& f, const AtomFn& atom_value) {
  using Op = Formula::Op;
  switch (f.op()) {
    case Op::constant: return f.constant_value();
    case Op::atom: return atom_value(f.predicate(), f.terms());
    case Op::not_op: return !eval_ground_formula(f.lhs(), atom_value);
    case Op::and_op:
      return eval_ground_formula(f.lhs(), atom_value) &&
             eval_ground_formula(f.rhs(), atom_value);
    case Op::or_op:
      return eval_ground_formula(f.lhs(), atom_value) ||
             eval_ground_formula(f.rhs(), atom_value);
    case Op::implies:
      return !eval_ground_formula(f.lhs(), atom_value) ||
             eval_ground_formula(f.rhs(), atom_value);
    case Op::iff:
      return eval_ground_formula(f.lhs(), atom_value) ==
             eval_ground_formula(f.rhs(), atom_value);
    case Op::term_eq: return f.term_lhs().text == f.term_rhs().text;
    case Op::term_neq: return f.term_lhs().text != f.term_rhs().text;
  }
  return false;
}

}  // namespace mln

#endif
