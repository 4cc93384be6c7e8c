#include "mln/ast.hpp"

#include <sstream>

namespace mln {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::UndeclaredDomain: return "UndeclaredDomain";
    case ErrorCode::UndeclaredPredicate: return "UndeclaredPredicate";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::DuplicateName: return "DuplicateName";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::NotEvidencePredicate: return "NotEvidencePredicate";
    case ErrorCode::NotGround: return "NotGround";
    case ErrorCode::Unsatisfiable: return "Unsatisfiable";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::ConditionImpossible: return "ConditionImpossible";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
    case ErrorCode::MissingMarginal: return "MissingMarginal";
    case ErrorCode::IdMismatch: return "IdMismatch";
    case ErrorCode::BadInput: return "BadInput";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

namespace {
std::string with_code(ErrorCode code, const std::string& message,
                      const std::optional<SourceSpan>& span) {
  std::ostringstream os;
  os << error_code_name(code) << ": " << message;
  if (span) os << " (line " << span->line << ", column " << span->column << ")";
  return os.str();
}
}  // namespace

Error::Error(ErrorCode code, std::string message,
             std::optional<SourceSpan> span)
    : std::runtime_error(with_code(code, message, span)),
      code_(code),
      span_(span) {}

// ---------------------------------------------------------------------------
// Formula constructors

Formula Formula::atom(Symbol predicate, std::vector<Term> terms) {
  auto n = std::make_shared<Node>();
  n->op = Op::atom;
  n->predicate = std::move(predicate);
  n->terms = std::move(terms);
  return Formula(std::move(n));
}

Formula Formula::negation(Formula f) {
  auto n = std::make_shared<Node>();
  n->op = Op::not_op;
  n->children = {std::move(f)};
  return Formula(std::move(n));
}

Formula Formula::conjunction(Formula a, Formula b) {
  auto n = std::make_shared<Node>();
  n->op = Op::and_op;
  n->children = {std::move(a), std::move(b)};
  return Formula(std::move(n));
}

Formula Formula::disjunction(Formula a, Formula b) {
  auto n = std::make_shared<Node>();
  n->op = Op::or_op;
  n->children = {std::move(a), std::move(b)};
  return Formula(std::move(n));
}

Formula Formula::implication(Formula a, Formula b) {
  auto n = std::make_shared<Node>();
  n->op = Op::implies;
  n->children = {std::move(a), std::move(b)};
  return Formula(std::move(n));
}

Formula Formula::biconditional(Formula a, Formula b) {
  auto n = std::make_shared<Node>();
  n->op = Op::iff;
  n->children = {std::move(a), std::move(b)};
  return Formula(std::move(n));
}

Formula Formula::term_equal(Term a, Term b) {
  auto n = std::make_shared<Node>();
  n->op = Op::term_eq;
  n->terms = {std::move(a), std::move(b)};
  return Formula(std::move(n));
}

Formula Formula::term_not_equal(Term a, Term b) {
  auto n = std::make_shared<Node>();
  n->op = Op::term_neq;
  n->terms = {std::move(a), std::move(b)};
  return Formula(std::move(n));
}

Formula Formula::truth(bool value) {
  auto n = std::make_shared<Node>();
  n->op = Op::constant;
  n->truth = value;
  return Formula(std::move(n));
}

bool Formula::structurally_equal(const Formula& other) const {
  if (node_ == other.node_) return true;
  if (node_->op != other.node_->op) return false;
  if (node_->truth != other.node_->truth) return false;
  if (node_->predicate != other.node_->predicate) return false;
  if (node_->terms != other.node_->terms) return false;
  if (node_->children.size() != other.node_->children.size()) return false;
  for (std::size_t i = 0; i < node_->children.size(); ++i)
    if (!node_->children[i].structurally_equal(other.node_->children[i]))
      return false;
  return true;
}

// ---------------------------------------------------------------------------
// free_variables

namespace {
void collect_vars(const Formula& f, std::set<Symbol>& out) {
  using Op = Formula::Op;
  switch (f.op()) {
    case Op::atom:
    case Op::term_eq:
    case Op::term_neq:
      for (const Term& t : f.terms())
        if (!t.is_constant()) out.insert(t.text);
      return;
    case Op::not_op:
      collect_vars(f.lhs(), out);
      return;
    case Op::and_op:
    case Op::or_op:
    case Op::implies:
    case Op::iff:
      collect_vars(f.lhs(), out);
      collect_vars(f.rhs(), out);
      return;
    case Op::constant:
      return;
  }
}
}  // namespace

std::set<Symbol> free_variables(const Formula& formula) {
  std::set<Symbol> out;
  collect_vars(formula, out);
  return out;
}

// ---------------------------------------------------------------------------
// validate_program

namespace {

struct Validator {
  const MlnProgram& p;
  ProgramIndex idx;

  void declarations() {
    for (std::size_t i = 0; i < p.domains.size(); ++i) {
      const DomainDecl& d = p.domains[i];
      if (d.constants.empty())
        throw Error(ErrorCode::BadInput,
                    "domain '" + d.name + "' has no constants");
      if (!idx.domain_by_name.emplace(d.name, int(i)).second)
        throw Error(ErrorCode::DuplicateName,
                    "domain '" + d.name + "' declared twice");
      for (std::size_t k = 0; k < d.constants.size(); ++k) {
        const Symbol& c = d.constants[k];
        if (!idx.constant_home.emplace(c, std::make_pair(int(i), int(k)))
                 .second)
          throw Error(ErrorCode::DuplicateName,
                      "constant '" + c + "' declared more than once");
      }
    }
    for (std::size_t i = 0; i < p.predicates.size(); ++i) {
      const PredicateDecl& d = p.predicates[i];
      if (!idx.predicate_by_name.emplace(d.name, int(i)).second)
        throw Error(ErrorCode::DuplicateName,
                    "predicate '" + d.name + "' declared twice");
      if (idx.domain_by_name.count(d.name))
        throw Error(ErrorCode::DuplicateName,
                    "'" + d.name + "' names both a domain and a predicate");
      for (const Symbol& dom : d.arg_domains)
        if (!idx.domain_by_name.count(dom))
          throw Error(ErrorCode::UndeclaredDomain,
                      "predicate '" + d.name + "' uses undeclared domain '" +
                          dom + "'");
      if (d.ground_tuples) {
        for (const auto& tuple : *d.ground_tuples) {
          if (tuple.size() != d.arg_domains.size())
            throw Error(ErrorCode::ArityMismatch,
                        "grounding tuple arity for '" + d.name + "'");
          for (std::size_t a = 0; a < tuple.size(); ++a)
            check_constant(tuple[a], d.arg_domains[a], d.name);
        }
      }
    }
  }

  void check_constant(const Symbol& c, const Symbol& domain,
                      const Symbol& where) {
    auto it = idx.constant_home.find(c);
    if (it == idx.constant_home.end())
      throw Error(ErrorCode::UndeclaredDomain,
                  "constant '" + c + "' in '" + where +
                      "' is not declared in any domain");
    int want = idx.domain_by_name.at(domain);
    if (it->second.first != want)
      throw Error(ErrorCode::DomainMismatch,
                  "constant '" + c + "' belongs to domain '" +
                      p.domains[it->second.first].name + "', expected '" +
                      domain + "' in '" + where + "'");
  }

  // Walks one formula: checks atoms, infers variable domains.
  void walk(const Formula& f, std::map<Symbol, int>& var_domain,
            std::vector<Symbol>& var_order) {
    using Op = Formula::Op;
    switch (f.op()) {
      case Op::atom: {
        auto it = idx.predicate_by_name.find(f.predicate());
        if (it == idx.predicate_by_name.end())
          throw Error(ErrorCode::UndeclaredPredicate,
                      "atom uses undeclared predicate '" + f.predicate() + "'");
        const PredicateDecl& decl = p.predicates[it->second];
        if (decl.arg_domains.size() != f.terms().size())
          throw Error(ErrorCode::ArityMismatch,
                      "predicate '" + decl.name + "' expects " +
                          std::to_string(decl.arg_domains.size()) +
                          " arguments, got " +
                          std::to_string(f.terms().size()));
        for (std::size_t a = 0; a < f.terms().size(); ++a) {
          const Term& t = f.terms()[a];
          int dom = idx.domain_by_name.at(decl.arg_domains[a]);
          if (t.is_constant()) {
            check_constant(t.text, decl.arg_domains[a], decl.name);
          } else {
            auto [it2, fresh] = var_domain.emplace(t.text, dom);
            if (fresh)
              var_order.push_back(t.text);
            else if (it2->second != dom)
              throw Error(ErrorCode::DomainMismatch,
                          "variable '" + t.text +
                              "' used at positions of domains '" +
                              p.domains[it2->second].name + "' and '" +
                              decl.arg_domains[a] + "'");
          }
        }
        return;
      }
      case Op::term_eq:
      case Op::term_neq:
        for (const Term& t : f.terms()) {
          if (t.is_constant() && !idx.constant_home.count(t.text))
            throw Error(ErrorCode::UndeclaredDomain,
                        "constant '" + t.text +
                            "' in term comparison is not declared");
        }
        return;
      case Op::not_op:
        walk(f.lhs(), var_domain, var_order);
        return;
      case Op::and_op:
      case Op::or_op:
      case Op::implies:
      case Op::iff:
        walk(f.lhs(), var_domain, var_order);
        walk(f.rhs(), var_domain, var_order);
        return;
      case Op::constant:
        return;
    }
  }

  void formulas() {
    for (const WeightedFormula& wf : p.formulas) {
      std::map<Symbol, int> var_domain;
      std::vector<Symbol> var_order;
      walk(wf.formula, var_domain, var_order);
      // variables appearing only in term comparisons have no domain to draw
      // constants from
      for (const Symbol& v : free_variables(wf.formula))
        if (!var_domain.count(v))
          throw Error(ErrorCode::UndeclaredDomain,
                      "cannot infer a domain for variable '" + v +
                          "' (it appears only in term comparisons)");
      std::vector<std::pair<Symbol, int>> vars;
      vars.reserve(var_order.size());
      for (const Symbol& v : var_order) vars.emplace_back(v, var_domain.at(v));
      idx.formula_vars.push_back(std::move(vars));
    }
  }
};

}  // namespace

ValidatedProgram validate_program(MlnProgram program) {
  Validator v{program, {}};
  v.declarations();
  v.formulas();
  return ValidatedProgram{std::move(program), std::move(v.idx)};
}

}  // namespace mln
